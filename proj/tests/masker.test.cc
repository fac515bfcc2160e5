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
#include "qmask/errors.h"
#include "qmask/io.h"
#include "qmask/masker.h"

using namespace qmask;

namespace {

MolsPair reference_pair() {
    return io::decode_pair(io::read_file(std::string(QMASK_DATA_DIR) + "/order3_pair.json"));
}

// (1/sqrt3) sum of the listed 0-based basis triples in (C^3)^3.
StateVector triple_sum(const std::vector<std::vector<int>> &triples) {
    StateVector v = StateVector::Zero(27);
    for (const auto &t : triples) {
        v += oracle::ket(t, {3, 3, 3});
    }
    return v / std::sqrt(3.0);
}

ComplexMatrix padded_identity(int k, int m) {
    ComplexMatrix out = ComplexMatrix::Zero(m, m);
    out.topLeftCorner(k, k).setIdentity();
    return out / static_cast<double>(k);
}

void expect_marginals(const Masker &s, const std::vector<ComplexMatrix> &expected, int samples, double tol) {
    for (int t = 0; t < samples; ++t) {
        const StateVector psi = random_pure_state(s.input_dim(), 500 + static_cast<std::uint64_t>(t));
        const MarginalSet m = image_marginals(s, psi);
        ASSERT_EQ(m.marginals.size(), expected.size());
        for (size_t j = 0; j < expected.size(); ++j) {
            EXPECT_LE((m.marginals[j] - expected[j]).norm(), tol) << "subsystem " << j;
        }
    }
}

}  // namespace

TEST(masker, rejects_non_isometry) {
    EXPECT_THROW(Masker(Dims{2, 2}, ComplexMatrix::Ones(4, 2)), NotIsometric);
    EXPECT_THROW(Masker(Dims{2, 2}, random_isometry(6, 2, 1)), DimensionMismatch);
    EXPECT_THROW(Masker(Dims{2, 2}, oracle::product_encoder(2, {2, 2})).apply(StateVector::Ones(3)),
                 DimensionMismatch);
}

TEST(provenance, names_round_trip) {
    for (auto p : {Provenance::latin, Provenance::embedded, Provenance::extended, Provenance::dilation_restricted,
                   Provenance::user}) {
        EXPECT_EQ(provenance_from_string(to_string(p)), p);
    }
    EXPECT_EQ(to_string(Provenance::dilation_restricted), "dilation-restricted");
    EXPECT_THROW(provenance_from_string("bogus"), std::invalid_argument);
}

TEST(latin_masker, reference_images) {
    const Masker s = latin_masker(3, reference_pair());
    EXPECT_EQ(s.provenance(), Provenance::latin);
    EXPECT_LE((s.image(0) - triple_sum({{0, 0, 0}, {1, 1, 1}, {2, 2, 2}})).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((s.image(1) - triple_sum({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}})).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((s.image(2) - triple_sum({{0, 2, 1}, {1, 0, 2}, {2, 1, 0}})).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(latin_masker, isometry_and_uniform_marginals) {
    for (int d : {3, 4, 5, 7}) {
        const Masker s = latin_masker(d);
        EXPECT_LE(isometry_defect(s.matrix()), 1e-12);
        const ComplexMatrix flat = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
        expect_marginals(s, {flat, flat, flat}, 10, 1e-10);
    }
}

TEST(latin_masker, rejects_bad_pairs) {
    const MolsPair p = reference_pair();
    EXPECT_THROW(latin_masker(3, MolsPair{p.first, p.first}), InvalidMols);
    EXPECT_THROW(latin_masker(4, p), InvalidMols);
    EXPECT_THROW(latin_masker(6), NoMolsExists);
    EXPECT_THROW(latin_masker(10), UnsupportedOrder);
}

TEST(embed_iso, definition) {
    EXPECT_EQ(embed_iso(3, 3), ComplexMatrix::Identity(3, 3));
    StateVector ab(2);
    ab << Complex(1.0, 2.0), Complex(-3.0, 0.5);
    StateVector expected(3);
    expected << ab(0), ab(1), 0.0;
    EXPECT_EQ(embed_iso(2, 3) * ab, expected);
    const ComplexMatrix j = embed_iso(5, 6);
    EXPECT_EQ(j.adjoint() * j, ComplexMatrix::Identity(5, 5));
    EXPECT_THROW(embed_iso(4, 3), DimensionMismatch);
}

TEST(tilde_masker, d2_masks_into_qutrits) {
    const Masker s = tilde_masker(2);
    EXPECT_EQ(s.dims(), (Dims{3, 3, 3}));
    EXPECT_EQ(s.provenance(), Provenance::embedded);
    const ComplexMatrix flat = ComplexMatrix::Identity(3, 3) / 3.0;
    expect_marginals(s, {flat, flat, flat}, 20, 1e-10);
}

TEST(tilde_masker, d5_embeds_into_six) {
    const Masker s = tilde_masker(5);
    EXPECT_EQ(s.dims(), (Dims{6, 6, 6}));
    EXPECT_LE(isometry_defect(s.matrix()), 1e-10);
    const ComplexMatrix m = padded_identity(5, 6);
    expect_marginals(s, {m, m, m}, 20, 1e-10);
}

TEST(tilde_masker, isometry_for_several_d) {
    for (int d : {2, 3, 4, 6, 7}) {
        const Masker s = tilde_masker(d);
        EXPECT_EQ(s.input_dim(), d);
        EXPECT_LE(isometry_defect(s.matrix()), 1e-10);
    }
}

TEST(dimension_extension, identity_factors_leave_base) {
    const Masker base = latin_masker(3);
    const ComplexMatrix i3 = ComplexMatrix::Identity(3, 3);
    const Masker same = dimension_extension(base, Dims{3, 3, 3}, i3, i3, i3, i3);
    EXPECT_LE((same.matrix() - base.matrix()).norm(), 1e-15);
    EXPECT_EQ(same.provenance(), Provenance::extended);
}

TEST(dimension_extension, padded_marginals) {
    const Masker s = dimension_extension(latin_masker(3), Dims{4, 4, 4});
    EXPECT_LE(isometry_defect(s.matrix()), 1e-10);
    const ComplexMatrix m = padded_identity(3, 4);
    expect_marginals(s, {m, m, m}, 20, 1e-10);
}

TEST(dimension_extension, mixed_targets_and_input_unitary) {
    const Masker base = latin_masker(3);
    const ComplexMatrix u = random_unitary(3, 17);
    const ComplexMatrix i3 = ComplexMatrix::Identity(3, 3);
    const Masker rotated = dimension_extension(base, Dims{3, 3, 3}, u, i3, i3, i3);
    const ComplexMatrix flat = i3 / 3.0;
    expect_marginals(rotated, {flat, flat, flat}, 20, 1e-10);

    const Masker wide = dimension_extension(base, Dims{3, 5, 4}, u, i3, random_isometry(5, 3, 3), embed_iso(3, 4));
    EXPECT_LE(isometry_defect(wide.matrix()), 1e-10);
    EXPECT_THROW(dimension_extension(base, Dims{2, 3, 3}), DimensionMismatch);
}

TEST(participant_extension, ancillas) {
    const Masker base = latin_masker(3);
    EXPECT_EQ(participant_extension(base, {}).matrix(), base.matrix());

    const StateVector zero = StateVector::Unit(2, 0);
    const Masker s = participant_extension(base, {zero});
    EXPECT_EQ(s.dims(), (Dims{3, 3, 3, 2}));
    EXPECT_LE(isometry_defect(s.matrix()), 1e-10);
    const ComplexMatrix flat = ComplexMatrix::Identity(3, 3) / 3.0;
    expect_marginals(s, {flat, flat, flat, zero * zero.adjoint()}, 20, 1e-10);

    EXPECT_THROW(participant_extension(base, {StateVector::Ones(2)}), InvalidState);
}

TEST(dilation, unitary_and_restriction) {
    const Masker s = latin_masker(3);
    const ComplexMatrix j = ComplexMatrix::Identity(3, 3);
    const StateVector b = StateVector::Unit(9, 0);
    const ComplexMatrix u = unitary_dilation(s, j, b, 42);
    EXPECT_LE((u.adjoint() * u - ComplexMatrix::Identity(27, 27)).norm(), 1e-10);
    EXPECT_LE((u * u.adjoint() - ComplexMatrix::Identity(27, 27)).norm(), 1e-10);
    for (std::uint64_t t = 0; t < 100; ++t) {
        const StateVector psi = random_pure_state(3, t);
        EXPECT_LE((u * kron(StateVector(j * psi), b) - s.apply(psi)).norm(), 1e-10);
    }
    EXPECT_EQ(u, unitary_dilation(s, j, b, 42));

    const Masker back = restrict_dilation(u, s.dims(), j, b);
    EXPECT_EQ(back.provenance(), Provenance::dilation_restricted);
    EXPECT_LE((back.matrix() - s.matrix()).norm(), 1e-10);
}

TEST(dilation, embedded_input) {
    const Masker s = tilde_masker(2);
    const ComplexMatrix j = embed_iso(2, 3);
    const StateVector b = random_pure_state(9, 5);
    const ComplexMatrix u = unitary_dilation(s, j, b, 1);
    EXPECT_LE((u.adjoint() * u - ComplexMatrix::Identity(27, 27)).norm(), 1e-10);
    EXPECT_LE((restrict_dilation(u, s.dims(), j, b).matrix() - s.matrix()).norm(), 1e-10);
}

TEST(mask_density, pure_and_mixed) {
    const Masker s = latin_masker(3);
    const StateVector psi = random_pure_state(3, 9);
    const ComplexMatrix out = mask_density(s, psi * psi.adjoint());
    const StateVector img = s.apply(psi);
    EXPECT_LE((out - img * img.adjoint()).norm(), 1e-12);

    const ComplexMatrix mixed = mask_density(s, ComplexMatrix::Identity(3, 3) / 3.0);
    EXPECT_NEAR(mixed.trace().real(), 1.0, 1e-12);
    for (int j = 0; j < 3; ++j) {
        EXPECT_LE((partial_trace(mixed, s.dims(), j) - ComplexMatrix::Identity(3, 3) / 3.0).norm(), 1e-12);
    }
    const ComplexMatrix rho = random_density(3, 4);
    EXPECT_NEAR(mask_density(s, rho).trace().real(), 1.0, 1e-12);
}

TEST(mask_density, rejects_invalid_states) {
    const Masker s = latin_masker(3);
    EXPECT_THROW(mask_density(s, ComplexMatrix::Identity(3, 3)), InvalidState);
    ComplexMatrix neg = ComplexMatrix::Zero(3, 3);
    neg.diagonal() << 1.5, -0.5, 0.0;
    EXPECT_THROW(mask_density(s, neg), InvalidState);
    ComplexMatrix skew = ComplexMatrix::Identity(3, 3) / 3.0;
    skew(0, 1) = 0.1;
    EXPECT_THROW(mask_density(s, skew), InvalidState);
    EXPECT_THROW(mask_density(s, ComplexMatrix::Identity(2, 2) / 2.0), DimensionMismatch);
}

TEST(masker, construction_errors) {
    const Masker s3 = latin_masker(3);
    const ComplexMatrix i3 = ComplexMatrix::Identity(3, 3);
    EXPECT_THROW(dimension_extension(s3, Dims{4, 3, 3}, i3, 2.0 * embed_iso(3, 4), i3, i3), NotIsometric);
    EXPECT_THROW(dimension_extension(s3, Dims{3, 3, 3}, ComplexMatrix::Ones(3, 3), i3, i3, i3), NotIsometric);
    EXPECT_THROW(dimension_extension(s3, Dims{3, 3}), DimensionMismatch);

    const StateVector b = StateVector::Unit(9, 0);
    EXPECT_THROW(unitary_dilation(s3, ComplexMatrix(ComplexMatrix::Identity(2, 3)), b, 1), DimensionMismatch);
    EXPECT_THROW(unitary_dilation(s3, i3, 2.0 * b, 1), InvalidState);
    EXPECT_THROW(unitary_dilation(s3, i3, StateVector::Unit(8, 0), 1), DimensionMismatch);

    // d + 1 = 10 has no built-in pair.
    EXPECT_THROW(tilde_masker(9), UnsupportedOrder);
    EXPECT_THROW(tilde_masker(1), DimensionMismatch);
}
