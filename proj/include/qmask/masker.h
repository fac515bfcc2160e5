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

#ifndef QMASK_MASKER_H
#define QMASK_MASKER_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmask/mols.h"
#include "qmask/tensor.h"

namespace qmask {

enum class Provenance { latin, embedded, extended, dilation_restricted, user };

std::string to_string(Provenance p);
/// Inverse of to_string; throws std::invalid_argument on unknown names.
Provenance provenance_from_string(const std::string &name);

constexpr double kIsometryTol = 1e-10;

/// An isometry from C^K into a multipartite space.
///
/// The constructor enforces shape agreement and ||S^dagger S - I|| <= kIsometryTol.
class Masker {
   public:
    Masker(Dims dims, ComplexMatrix matrix, Provenance provenance = Provenance::user);

    int input_dim() const {
        return static_cast<int>(matrix_.cols());
    }
    const Dims &dims() const {
        return dims_;
    }
    const ComplexMatrix &matrix() const {
        return matrix_;
    }
    Provenance provenance() const {
        return provenance_;
    }

    StateVector apply(const StateVector &psi) const;
    /// Image of the basis state |i>.
    StateVector image(int i) const {
        return matrix_.col(i);
    }

   private:
    Dims dims_;
    ComplexMatrix matrix_;
    Provenance provenance_;
};

/// Per-subsystem reduced states rho_0..rho_{n-1} of one image state.
struct MarginalSet {
    std::vector<ComplexMatrix> marginals;

    /// Hermitian, PSD (min eigenvalue >= -tol) and unit trace, each within tol.
    bool valid(double tol = 1e-10) const;
};

MarginalSet image_marginals(const Masker &s, const StateVector &psi);

/// S_d|j> = d^{-1/2} sum_k |k>|first(j,k)>|second(j,k)>. Throws InvalidMols on a bad pair.
Masker latin_masker(int d, const MolsPair &pair);
/// latin_masker with the built-in pair mols_pair(d).
Masker latin_masker(int d);

/// The canonical embedding C^k -> C^m, |x> -> |x> (+) 0.
ComplexMatrix embed_iso(int k, int m);

/// Masker of C^d into (C^{d+1})^{(x)3}: S_{d+1} J_{d,d+1} for d != 5, (J (x) J (x) J) S_5 for d = 5.
Masker tilde_masker(int d);

/// (V_1 (x) V_2 (x) V_3) S U with u a unitary on the input space and v_k isometries C^d -> H_k.
Masker dimension_extension(const Masker &base, const Dims &targets, const ComplexMatrix &u,
                           const ComplexMatrix &v1, const ComplexMatrix &v2, const ComplexMatrix &v3);
/// Same, with u = I and each v_k = embed_iso(d_k(base), targets[k]).
Masker dimension_extension(const Masker &base, const Dims &targets);

/// |psi> -> S|psi> (x) |e_1> (x) ... (x) |e_m>.
Masker participant_extension(const Masker &base, const std::vector<StateVector> &ancillas);

/// Unitary U on the full space with U (J|psi> (x) |b>) = S|psi>.
///
/// The block mapping the complement of J(K) (x) |b> onto ker(S^dagger) is a seeded
/// random unitary between deterministically completed orthonormal bases.
ComplexMatrix unitary_dilation(const Masker &s, const ComplexMatrix &j_embed, const StateVector &b, std::uint64_t seed);

/// Masker psi -> U (J psi (x) b), read back from a dilation.
Masker restrict_dilation(const ComplexMatrix &u, const Dims &dims, const ComplexMatrix &j_embed, const StateVector &b);

/// S sigma S^dagger for a density operator sigma on C^K.
ComplexMatrix mask_density(const Masker &s, const ComplexMatrix &sigma);

}  // namespace qmask

#endif
