// Copyright 2026 The qmask Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <cmath>

#include "oracles.h"
#include "qmask/errors.h"
#include "qmask/io.h"
#include "qmask/masker.h"
#include "qmask/nogo.h"
#include "qmask/verifier.h"

using namespace qmask;

namespace {

// Central difference of D along the real and imaginary direction of entry (r, c).
Complex fd_partial(const ComplexMatrix &s, const MaskProblem &problem, Index r, Index c, double h) {
    const auto at = [&](Complex delta) {
        ComplexMatrix t = s;
        t(r, c) += delta;
        return defect_with_gradient(t, problem).value;
    };
    const double re = (at(h) - at(-h)) / (2.0 * h);
    const double im = (at(Complex(0.0, h)) - at(Complex(0.0, -h))) / (2.0 * h);
    return {re, im};
}

}  // namespace

TEST(problem, validation) {
    EXPECT_THROW((MaskProblem{0, Dims{2, 2}}.validate()), DimensionMismatch);
    EXPECT_THROW((MaskProblem{5, Dims{2, 2}}.validate()), DimensionMismatch);
    EXPECT_NO_THROW((MaskProblem{4, Dims{2, 2}}.validate()));
}

TEST(defect, zero_on_masker) {
    const Masker s = latin_masker(3);
    EXPECT_LE(masking_defect(s.matrix(), {3, s.dims()}), 1e-20);
}

TEST(defect, product_encoder_matches_brute_force) {
    const std::vector<int> dims{2, 2, 2};
    const ComplexMatrix s = oracle::product_encoder(2, dims);
    const double brute = oracle::masking_defect(s, dims);
    EXPECT_NEAR(brute, 3.0, 1e-15);
    EXPECT_NEAR(masking_defect(s, {2, Dims(dims)}), brute, 1e-15);
}

TEST(defect, random_isometries_match_brute_force) {
    const std::vector<std::pair<int, std::vector<int>>> cases{{2, {2, 2, 2}}, {3, {3, 2, 2}}, {2, {4, 4}}, {3, {3, 3}}};
    std::uint64_t seed = 0;
    for (const auto &[k, dims] : cases) {
        const ComplexMatrix s = random_isometry(Dims(dims).total(), k, ++seed);
        EXPECT_NEAR(masking_defect(s, {k, Dims(dims)}), oracle::masking_defect(s, dims), 1e-12);
    }
}

TEST(defect, zero_iff_universal_check_passes) {
    const Masker tilde = tilde_masker(2);
    EXPECT_LE(masking_defect(tilde.matrix(), {2, tilde.dims()}), 1e-20);
    const Masker random(Dims{3, 3, 3}, random_isometry(27, 3, 8));
    EXPECT_GT(masking_defect(random.matrix(), {3, random.dims()}), 1e-4);
    EXPECT_FALSE(universal_masking_check(random).verdict);
}

TEST(defect, local_unitary_invariance) {
    const Dims dims{2, 3, 2};
    const ComplexMatrix s = random_isometry(12, 2, 4);
    const ComplexMatrix local = kron(kron(random_unitary(2, 1), random_unitary(3, 2)), random_unitary(2, 3));
    EXPECT_NEAR(masking_defect(local * s, {2, dims}), masking_defect(s, {2, dims}), 1e-12);
}

TEST(defect, input_unitary_invariance) {
    const Dims dims{3, 3, 3};
    const ComplexMatrix s = random_isometry(27, 3, 6);
    EXPECT_NEAR(masking_defect(s * random_unitary(3, 9), {3, dims}), masking_defect(s, {3, dims}), 1e-12);
}

TEST(defect, errors) {
    EXPECT_THROW(masking_defect(ComplexMatrix::Ones(8, 2), {2, Dims{2, 2, 2}}), NotIsometric);
    EXPECT_THROW(masking_defect(random_isometry(9, 2, 1), {2, Dims{2, 2, 2}}), DimensionMismatch);
}

TEST(gradient, matches_central_differences) {
    const std::vector<std::pair<int, std::vector<int>>> cases{{2, {2, 2, 2}}, {3, {3, 3, 3}}, {2, {4, 4}}, {2, {2, 3, 2}}};
    constexpr double kStep = 1e-6;
    constexpr double kRelTol = 1e-5;
    int points = 0;
    for (const auto &[k, dims] : cases) {
        const MaskProblem problem{k, Dims(dims)};
        for (std::uint64_t rep = 0; rep < 5; ++rep, ++points) {
            // Off-manifold points as well: the gradient formula is for all N x K matrices.
            ComplexMatrix s = random_isometry(problem.dims.total(), k, 1000 + static_cast<std::uint64_t>(points));
            if (rep % 2 == 1) {
                s *= 1.3;
            }
            const ComplexMatrix g = defect_with_gradient(s, problem).gradient;
            ComplexMatrix fd(g.rows(), g.cols());
            for (Index r = 0; r < g.rows(); ++r) {
                for (Index c = 0; c < g.cols(); ++c) {
                    fd(r, c) = fd_partial(s, problem, r, c, kStep);
                }
            }
            EXPECT_LE((g - fd).norm() / std::max(fd.norm(), 1e-12), kRelTol) << "point " << points;
        }
    }
    EXPECT_EQ(points, 20);
}

TEST(search, finds_masker_when_one_exists) {
    const SearchResult r = optimize_defect({3, Dims{3, 3, 3}}, 5, 2000, 20261016);
    EXPECT_LE(r.best_defect, 1e-8);
    EXPECT_EQ(r.restarts.size(), 5u);
    EXPECT_LE(isometry_defect(r.best_isometry), 1e-10);
    const Masker found(Dims{3, 3, 3}, r.best_isometry);
    const EquivalenceReport eq = equivalence_report(found);
    EXPECT_TRUE(eq.masking_verdict && eq.kl_verdict);
}

TEST(search, qubit_problem_stays_away_from_zero) {
    const SearchResult r = optimize_defect({2, Dims{2, 2, 2}}, 4, 500, 11);
    EXPECT_GE(r.best_defect, 0.5);
    EXPECT_TRUE(std::isfinite(r.best_defect));
    for (const auto &rs : r.restarts) {
        EXPECT_LE(rs.final_defect, rs.initial_defect);
        EXPECT_GE(rs.final_defect, r.best_defect);
    }
}

TEST(search, deterministic_for_fixed_seed) {
    const SearchResult a = optimize_defect({2, Dims{2, 3}}, 3, 200, 5);
    const SearchResult b = optimize_defect({2, Dims{2, 3}}, 3, 200, 5);
    EXPECT_EQ(a.best_defect, b.best_defect);
    EXPECT_EQ(a.best_isometry, b.best_isometry);
    ASSERT_EQ(a.restarts.size(), b.restarts.size());
    for (size_t r = 0; r < a.restarts.size(); ++r) {
        EXPECT_EQ(a.restarts[r].seed, b.restarts[r].seed);
        EXPECT_EQ(a.restarts[r].iterations, b.restarts[r].iterations);
    }
}

TEST(search, rejects_bad_arguments) {
    EXPECT_THROW(optimize_defect({2, Dims{2, 2}}, 0, 10, 1), std::invalid_argument);
    EXPECT_THROW(optimize_defect({9, Dims{2, 2}}, 1, 10, 1), DimensionMismatch);
}

TEST(golden, floors_are_positive_and_below_observed) {
    const io::Json floors = io::read_file(std::string(QMASK_GOLDEN_DIR) + "/nogo_floors.json");
    ASSERT_EQ(floors["cases"].size(), 2u);
    for (const auto &c : floors["cases"]) {
        EXPECT_GT(c["floor"].get<double>(), 0.0);
        EXPECT_LE(c["floor"].get<double>(), c["observed_best"].get<double>());
    }
}

TEST(probe, short_run_records_landscape) {
    const ProbeResult r = probe_open_question(1, 5, 3);
    EXPECT_EQ(r.search.problem.input_dim, 6);
    EXPECT_EQ(r.search.problem.dims, (Dims{6, 6, 6}));
    EXPECT_TRUE(std::isfinite(r.search.best_defect));
    EXPECT_GE(r.search.best_defect, 0.0);
    EXPECT_FALSE(r.cross_check_passed.has_value());
}
