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

#include "oracles.h"
#include "qmask/erasure.h"
#include "qmask/errors.h"
#include "qmask/masker.h"

using namespace qmask;

namespace {

ComplexMatrix proj(const StateVector &v) {
    return v * v.adjoint();
}

CodeSubspace ghz_code() {
    const std::vector<int> d{2, 2, 2};
    ComplexMatrix basis(8, 2);
    basis.col(0) = oracle::ket({0, 0, 0}, d);
    basis.col(1) = oracle::ket({1, 1, 1}, d);
    return CodeSubspace(Dims(d), basis);
}

StateVector random_code_state(const CodeSubspace &code, std::uint64_t seed) {
    return code.basis() * random_pure_state(code.dim(), seed);
}

}  // namespace

TEST(channel, validation) {
    const Dims dims{2, 2};
    EXPECT_THROW(KrausChannel(dims, {}), std::invalid_argument);
    EXPECT_THROW(KrausChannel(dims, {ComplexMatrix::Identity(3, 3)}), DimensionMismatch);
    EXPECT_THROW(KrausChannel(dims, {ComplexMatrix::Identity(4, 4) * 2.0}), std::invalid_argument);
    const KrausChannel id = KrausChannel::identity(dims);
    const ComplexMatrix rho = random_density(4, 1);
    EXPECT_LE((id.apply(rho) - rho).norm(), 1e-15);
    EXPECT_THROW(id.apply(ComplexMatrix::Identity(3, 3)), DimensionMismatch);
}

TEST(reset, product_state) {
    const Dims dims{2, 3, 2};
    const StateVector a = random_pure_state(2, 1), b = random_pure_state(3, 2), c = random_pure_state(2, 3);
    const KrausChannel ch = reset_channel(dims, 1);
    const ComplexMatrix out = ch.apply(proj(kron(kron(a, b), c)));
    const ComplexMatrix expected = kron(kron(proj(a), proj(StateVector::Unit(3, 0))), proj(c));
    EXPECT_LE((out - expected).norm(), 1e-12);
    EXPECT_EQ(ch.erasure_index(), 1);
    EXPECT_LE(ch.completeness_defect(), 1e-15);
}

TEST(reset, marginal_is_ground_state) {
    const Dims dims{3, 3, 3};
    for (int j = 0; j < 3; ++j) {
        const ComplexMatrix out = reset_channel(dims, j).apply(random_density(27, 10 + static_cast<std::uint64_t>(j)));
        EXPECT_LE((partial_trace(out, dims, j) - proj(StateVector::Unit(3, 0))).norm(), 1e-12);
    }
}

TEST(depolarize, marginal_is_maximally_mixed) {
    const Dims dims{2, 3, 2};
    for (int j = 0; j < 3; ++j) {
        const KrausChannel ch = depolarize_channel(dims, j);
        EXPECT_LE(ch.completeness_defect(), 1e-12);
        const ComplexMatrix out = ch.apply(random_density(12, 20 + static_cast<std::uint64_t>(j)));
        const Index d = dims[j];
        EXPECT_LE((partial_trace(out, dims, j) - ComplexMatrix::Identity(d, d) / static_cast<double>(d)).norm(),
                  1e-12);
        EXPECT_NEAR(out.trace().real(), 1.0, 1e-12);
    }
}

TEST(channels, disjoint_erasures_commute) {
    const Dims dims{2, 3, 2};
    const KrausChannel r = reset_channel(dims, 0), p = depolarize_channel(dims, 2);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const ComplexMatrix rho = random_density(12, seed);
        EXPECT_LE((r.apply(p.apply(rho)) - p.apply(r.apply(rho))).norm(), 1e-12);
    }
}

TEST(is_one_erasure, factor_test) {
    const Dims dims{2, 3, 2};
    EXPECT_TRUE(is_one_erasure(reset_channel(dims, 1), 1));
    EXPECT_FALSE(is_one_erasure(reset_channel(dims, 1), 0));
    EXPECT_FALSE(is_one_erasure(reset_channel(dims, 1), 2));
    EXPECT_TRUE(is_one_erasure(depolarize_channel(dims, 2), 2));
    for (int j = 0; j < 3; ++j) {
        EXPECT_TRUE(is_one_erasure(KrausChannel::identity(dims), j));
    }
    const KrausChannel global(dims, {random_unitary(12, 3)});
    EXPECT_FALSE(is_one_erasure(global, 0));
}

TEST(recovery, masker_code_reset) {
    const CodeSubspace code = CodeSubspace::range_of(latin_masker(3));
    const KrausChannel ch = reset_channel(Dims{3, 3, 3}, 0);
    const RecoveryMap rec = kl_recovery(code, ch);
    EXPECT_LE(rec.completeness_defect(), 1e-10);
    for (std::uint64_t t = 0; t < 100; ++t) {
        const StateVector v = random_code_state(code, t);
        EXPECT_LE((rec.apply(ch.apply(proj(v))) - proj(v)).norm(), 1e-9);
    }
    const FidelityStats stats = roundtrip_fidelity(code, ch, rec, 100, 3);
    EXPECT_EQ(stats.samples, 100u);
    EXPECT_GE(stats.worst, 1.0 - 1e-9);
}

TEST(recovery, every_subsystem_both_channels) {
    for (int d : {3, 4}) {
        const CodeSubspace code = CodeSubspace::range_of(latin_masker(d));
        for (int j = 0; j < 3; ++j) {
            for (const KrausChannel &ch : {reset_channel(code.dims(), j), depolarize_channel(code.dims(), j)}) {
                const RecoveryMap rec = kl_recovery(code, ch);
                EXPECT_GE(roundtrip_fidelity(code, ch, rec, 20, 5).worst, 1.0 - 1e-9);
            }
        }
    }
}

TEST(recovery, embedded_code) {
    const CodeSubspace code = CodeSubspace::range_of(tilde_masker(5));
    const KrausChannel ch = depolarize_channel(code.dims(), 2);
    EXPECT_GE(roundtrip_fidelity(code, ch, kl_recovery(code, ch), 20, 6).worst, 1.0 - 1e-9);
}

TEST(recovery, identity_channel) {
    const CodeSubspace code = CodeSubspace::range_of(latin_masker(3));
    const KrausChannel id = KrausChannel::identity(code.dims());
    const RecoveryMap rec = kl_recovery(code, id);
    for (std::uint64_t t = 0; t < 10; ++t) {
        const StateVector v = random_code_state(code, t);
        EXPECT_LE((rec.apply(proj(v)) - proj(v)).norm(), 1e-10);
    }
    const FidelityStats stats = roundtrip_fidelity(code, id, RecoveryMap::identity(27), 10, 1);
    EXPECT_NEAR(stats.worst, 1.0, 1e-14);
    EXPECT_NEAR(stats.mean, 1.0, 1e-14);
}

TEST(recovery, ghz_code_is_not_correctable) {
    EXPECT_THROW(kl_recovery(ghz_code(), reset_channel(Dims{2, 2, 2}, 0)), KLViolated);
    EXPECT_THROW(kl_recovery(ghz_code(), depolarize_channel(Dims{2, 2, 2}, 2)), KLViolated);
}

TEST(recovery, non_erasure_channel_with_bad_overlaps) {
    const CodeSubspace code = CodeSubspace::range_of(latin_masker(3));
    const ComplexMatrix full = ComplexMatrix::Identity(27, 27);
    const ComplexMatrix p = code.projector();
    // Kraus pair {P, I - P}: the second operator kills the code, the first keeps it,
    // so B^dagger E_1^dagger E_1 B = I and B^dagger E_2^dagger E_2 B = 0 are both scalar.
    const KrausChannel split(code.dims(), {p, full - p});
    EXPECT_NO_THROW(kl_recovery(code, split));
    // A measurement in a basis that splits the code is not correctable.
    const StateVector v = code.basis().col(0);
    const KrausChannel measure(code.dims(), {proj(v), full - proj(v)});
    EXPECT_THROW(kl_recovery(code, measure), KLViolated);
}

TEST(recovery, no_recovery_loses_information) {
    const CodeSubspace code = CodeSubspace::range_of(latin_masker(3));
    const KrausChannel ch = reset_channel(code.dims(), 0);
    const FidelityStats stats = roundtrip_fidelity(code, ch, RecoveryMap::identity(27), 50, 2);
    EXPECT_LT(stats.mean, 1.0 - 1e-3);
}

TEST(recovery, fidelity_is_seeded) {
    const CodeSubspace code = CodeSubspace::range_of(latin_masker(3));
    const KrausChannel ch = reset_channel(code.dims(), 0);
    const RecoveryMap none = RecoveryMap::identity(27);
    EXPECT_EQ(roundtrip_fidelity(code, ch, none, 10, 4).mean, roundtrip_fidelity(code, ch, none, 10, 4).mean);
}
