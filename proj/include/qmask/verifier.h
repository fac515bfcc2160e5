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

#ifndef QMASK_VERIFIER_H
#define QMASK_VERIFIER_H

#include <cstdint>
#include <string>
#include <vector>

#include "qmask/erasure_operator.h"
#include "qmask/masker.h"
#include "qmask/tensor.h"

namespace qmask {

constexpr double kDefaultTol = 1e-8;

/// A finite set of normalized input states.
struct StateSet {
    std::vector<StateVector> states;
    std::string label;

    /// Throws InvalidState unless every member has unit norm within 1e-12 and all share one dimension.
    void validate() const;
    Index dim() const;

    static StateSet computational_basis(Index dim);
    static StateSet random(Index dim, size_t count, std::uint64_t seed);
    /// {psi1, psi2, (psi1 + psi2)/sqrt2, (psi1 - i psi2)/sqrt2}.
    static StateSet polarization_quad(const StateVector &psi1, const StateVector &psi2);
};

/// Marginal agreement of a set of image states, one entry per subsystem.
struct MaskingReport {
    /// rho_j the deviations are measured against.
    std::vector<ComplexMatrix> reference_marginals;
    /// max over the set of ||rho_j(psi) - rho_j||_F.
    std::vector<double> worst_deviation;
    /// max over all pairs of ||rho_j(psi) - rho_j(phi)||_F, diagnostic only.
    std::vector<double> pairwise_max;
    double tol = kDefaultTol;
    bool verdict = false;
    size_t samples = 0;
    bool deterministic = false;

    double worst() const;
};

/// Marginals of S psi for each psi in q, compared against those of the first member.
MaskingReport marginal_report(const Masker &s, const StateSet &q, double tol = kDefaultTol);

/// Finite test of masking all pure states: tr_{not j}[S|i><k|S^dagger] = delta_ik rho_j for
/// every basis pair (i, k) and subsystem j, where rho_j is the mean diagonal marginal.
MaskingReport universal_masking_check(const Masker &s, double tol = kDefaultTol);

/// tr_{not j}[S|psi1><psi2|S^dagger].
ComplexMatrix cross_term(const Masker &s, const StateVector &psi1, const StateVector &psi2, int j);

/// Basis-independent Schmidt data shared by a masked set across the j | rest cut.
struct SchmidtForm {
    int subsystem = 0;
    /// Shared Schmidt coefficients sqrt(c_i), non-increasing.
    std::vector<double> coefficients;
    /// Number of coefficients above tol.
    int rank = 0;
    /// Spectrum of rho_j (descending) and matching eigenvectors as columns.
    std::vector<double> marginal_eigenvalues;
    ComplexMatrix marginal_eigenvectors;
    /// Per input state, the first `rank` right Schmidt vectors as columns.
    std::vector<ComplexMatrix> right_frames;
};

/// Throws CoefficientMismatch when two members' coefficients, or the coefficients and the
/// spectrum of rho_j, differ by more than tol.
SchmidtForm schmidt_form(const Masker &s, const StateSet &q, int j, double tol = kDefaultTol);

/// E_{i,k} = T_j^dagger (|i><k| (x) I) T_j, ordered by i * d_j + k. Materializes dense operators.
std::vector<ErasureOperator> erasure_operator_basis(const Dims &dims, int j);

/// A subspace of the multipartite space given by an orthonormal basis (columns).
class CodeSubspace {
   public:
    /// Throws NotIsometric unless the basis is orthonormal within 1e-10.
    CodeSubspace(Dims dims, ComplexMatrix basis);
    static CodeSubspace range_of(const Masker &s);

    const Dims &dims() const {
        return dims_;
    }
    const ComplexMatrix &basis() const {
        return basis_;
    }
    Index dim() const {
        return basis_.cols();
    }
    ComplexMatrix projector() const {
        return basis_ * basis_.adjoint();
    }

   private:
    Dims dims_;
    ComplexMatrix basis_;
};

/// One-erasure Knill-Laflamme test for subsystem j.
struct KLReport {
    int subsystem = 0;
    int local_dim = 0;
    /// ||P E_{i,k} P - lambda_{ik} P||_F indexed by i * local_dim + k.
    std::vector<double> deviations;
    /// lambda_{ik} = tr(P E_{i,k} P) / dim(code), same indexing.
    std::vector<Complex> lambdas;
    double worst = 0.0;
    double tol = kDefaultTol;
    bool verdict = false;
};

KLReport kl_check(const CodeSubspace &code, int j, double tol = kDefaultTol);

struct EquivalenceReport {
    MaskingReport masking;
    std::vector<KLReport> kl;
    bool masking_verdict = false;
    bool kl_verdict = false;
    bool agree = false;
};

/// Runs the universal masking check and kl_check on ran(S) for every subsystem.
/// Throws DisagreementAtTolerance if the two verdicts differ.
EquivalenceReport equivalence_report(const Masker &s, double tol = kDefaultTol);

}  // namespace qmask

#endif
