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

#include "qmask/verifier.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qmask/errors.h"

namespace qmask {

void StateSet::validate() const {
    if (states.empty()) {
        throw InvalidState("state set is empty");
    }
    for (size_t i = 0; i < states.size(); ++i) {
        if (states[i].size() != states[0].size()) {
            throw DimensionMismatch("state set: member " + std::to_string(i) + " has a different dimension");
        }
        if (std::abs(states[i].norm() - 1.0) > 1e-12) {
            throw InvalidState("state set: member " + std::to_string(i) + " is not normalized");
        }
    }
}

Index StateSet::dim() const {
    return states.empty() ? 0 : states.front().size();
}

StateSet StateSet::computational_basis(Index dim) {
    StateSet out{{}, "computational basis"};
    for (Index i = 0; i < dim; ++i) {
        out.states.push_back(StateVector::Unit(dim, i));
    }
    return out;
}

StateSet StateSet::random(Index dim, size_t count, std::uint64_t seed) {
    StateSet out{{}, "random"};
    for (size_t i = 0; i < count; ++i) {
        out.states.push_back(random_pure_state(dim, split_seed(seed, i)));
    }
    return out;
}

StateSet StateSet::polarization_quad(const StateVector &psi1, const StateVector &psi2) {
    const double r = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    return {{psi1, psi2, r * (psi1 + psi2), r * (psi1 - i * psi2)}, "polarization quad"};
}

double MaskingReport::worst() const {
    return worst_deviation.empty() ? 0.0 : *std::max_element(worst_deviation.begin(), worst_deviation.end());
}

MaskingReport marginal_report(const Masker &s, const StateSet &q, double tol) {
    q.validate();
    if (q.dim() != s.input_dim()) {
        throw DimensionMismatch("marginal_report: states have dimension " + std::to_string(q.dim()) +
                                ", masker input is " + std::to_string(s.input_dim()));
    }
    const int n = s.dims().parties();
    // marginals[member][j]
    std::vector<std::vector<ComplexMatrix>> marginals;
    marginals.reserve(q.states.size());
    for (const auto &psi : q.states) {
        const StateVector img = s.apply(psi);
        std::vector<ComplexMatrix> row;
        for (int j = 0; j < n; ++j) {
            row.push_back(marginal(img, s.dims(), j));
        }
        marginals.push_back(std::move(row));
    }

    MaskingReport out;
    out.tol = tol;
    out.samples = q.states.size();
    out.reference_marginals = marginals.front();
    out.worst_deviation.assign(static_cast<size_t>(n), 0.0);
    out.pairwise_max.assign(static_cast<size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) {
        const auto jj = static_cast<size_t>(j);
        for (size_t a = 0; a < marginals.size(); ++a) {
            out.worst_deviation[jj] =
                std::max(out.worst_deviation[jj], (marginals[a][jj] - out.reference_marginals[jj]).norm());
            for (size_t b = a + 1; b < marginals.size(); ++b) {
                out.pairwise_max[jj] = std::max(out.pairwise_max[jj], (marginals[a][jj] - marginals[b][jj]).norm());
            }
        }
    }
    out.verdict = out.worst() <= tol;
    return out;
}

MaskingReport universal_masking_check(const Masker &s, double tol) {
    const int n = s.dims().parties();
    const int k = s.input_dim();
    MaskingReport out;
    out.tol = tol;
    out.deterministic = true;
    out.samples = static_cast<size_t>(k) * static_cast<size_t>(k);
    for (int j = 0; j < n; ++j) {
        std::vector<ComplexMatrix> x;
        x.reserve(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) {
            x.push_back(front_coefficients(s.image(i), s.dims(), j));
        }
        const Index d = s.dims()[j];
        ComplexMatrix mean = ComplexMatrix::Zero(d, d);
        for (int i = 0; i < k; ++i) {
            mean += x[static_cast<size_t>(i)] * x[static_cast<size_t>(i)].adjoint();
        }
        mean /= static_cast<double>(k);

        double worst = 0.0;
        double pairwise = 0.0;
        for (int a = 0; a < k; ++a) {
            const ComplexMatrix diag_a = x[static_cast<size_t>(a)] * x[static_cast<size_t>(a)].adjoint();
            for (int b = 0; b < k; ++b) {
                ComplexMatrix m = x[static_cast<size_t>(a)] * x[static_cast<size_t>(b)].adjoint();
                if (a == b) {
                    m -= mean;
                } else if (b > a) {
                    const ComplexMatrix diag_b = x[static_cast<size_t>(b)] * x[static_cast<size_t>(b)].adjoint();
                    pairwise = std::max(pairwise, (diag_a - diag_b).norm());
                }
                worst = std::max(worst, m.norm());
            }
        }
        out.reference_marginals.push_back(std::move(mean));
        out.worst_deviation.push_back(worst);
        out.pairwise_max.push_back(pairwise);
    }
    out.verdict = out.worst() <= tol;
    return out;
}

ComplexMatrix cross_term(const Masker &s, const StateVector &psi1, const StateVector &psi2, int j) {
    return reduced_outer(s.apply(psi1), s.apply(psi2), s.dims(), j);
}

SchmidtForm schmidt_form(const Masker &s, const StateSet &q, int j, double tol) {
    q.validate();
    s.dims().check_index(j);
    const Index d = s.dims()[j];
    const Index rest = s.dims().rest(j);

    SchmidtForm out;
    out.subsystem = j;

    const StateVector first_image = s.apply(q.states.front());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(marginal(first_image, s.dims(), j));
    // Eigen sorts ascending; report descending to line up with singular values.
    const auto &values = eig.eigenvalues();
    for (Index i = values.size() - 1; i >= 0; --i) {
        out.marginal_eigenvalues.push_back(values(i));
    }
    out.marginal_eigenvectors = eig.eigenvectors().rowwise().reverse();

    for (size_t member = 0; member < q.states.size(); ++member) {
        const StateVector front = permute_to_front(s.apply(q.states[member]), s.dims(), j);
        const SchmidtResult sr = schmidt_decompose(front, d, rest, tol);
        if (member == 0) {
            out.coefficients = sr.coefficients;
            out.rank = sr.rank;
            for (size_t i = 0; i < sr.coefficients.size(); ++i) {
                const double c2 = sr.coefficients[i] * sr.coefficients[i];
                if (std::abs(c2 - out.marginal_eigenvalues[i]) > tol) {
                    std::ostringstream msg;
                    msg << "schmidt_form: squared coefficient " << i << " = " << c2
                        << " differs from marginal eigenvalue " << out.marginal_eigenvalues[i];
                    throw CoefficientMismatch(msg.str());
                }
            }
        } else {
            for (size_t i = 0; i < sr.coefficients.size(); ++i) {
                if (std::abs(sr.coefficients[i] - out.coefficients[i]) > tol) {
                    std::ostringstream msg;
                    msg << "schmidt_form: member " << member << " coefficient " << i << " = " << sr.coefficients[i]
                        << ", member 0 has " << out.coefficients[i];
                    throw CoefficientMismatch(msg.str());
                }
            }
        }
        out.right_frames.push_back(sr.right_vectors.leftCols(out.rank));
    }
    return out;
}

std::vector<ErasureOperator> erasure_operator_basis(const Dims &dims, int j) {
    dims.check_index(j);
    const Index d = dims[j];
    std::vector<ErasureOperator> out;
    out.reserve(static_cast<size_t>(d * d));
    for (Index i = 0; i < d; ++i) {
        for (Index k = 0; k < d; ++k) {
            ComplexMatrix local = ComplexMatrix::Zero(d, d);
            local(i, k) = 1.0;
            out.emplace_back(dims, j, std::move(local));
        }
    }
    return out;
}

CodeSubspace::CodeSubspace(Dims dims, ComplexMatrix basis) : dims_(std::move(dims)), basis_(std::move(basis)) {
    if (basis_.rows() != dims_.total() || basis_.cols() < 1) {
        throw DimensionMismatch("CodeSubspace: basis shape does not match dims " + dims_.str());
    }
    const double defect = isometry_defect(basis_);
    if (!(defect <= 1e-10)) {
        throw NotIsometric("CodeSubspace: basis is not orthonormal, defect " + std::to_string(defect));
    }
}

CodeSubspace CodeSubspace::range_of(const Masker &s) {
    return CodeSubspace(s.dims(), s.matrix());
}

KLReport kl_check(const CodeSubspace &code, int j, double tol) {
    const Dims &dims = code.dims();
    dims.check_index(j);
    const Index d = dims[j];
    const Index rest = dims.rest(j);
    const Index k = code.dim();

    // rows[i] is the K x rest matrix whose row a holds <i| (x) I applied to T_j |b_a>.
    std::vector<ComplexMatrix> rows(static_cast<size_t>(d), ComplexMatrix(k, rest));
    for (Index a = 0; a < k; ++a) {
        const ComplexMatrix x = front_coefficients(code.basis().col(a), dims, j);
        for (Index i = 0; i < d; ++i) {
            rows[static_cast<size_t>(i)].row(a) = x.row(i);
        }
    }

    KLReport out;
    out.subsystem = j;
    out.local_dim = static_cast<int>(d);
    out.tol = tol;
    const ComplexMatrix id = ComplexMatrix::Identity(k, k);
    for (Index i = 0; i < d; ++i) {
        for (Index l = 0; l < d; ++l) {
            // B^dagger E_{i,l} B, where <b_a|E_{i,l}|b_c> = sum_r conj(x_a(i, r)) x_c(l, r).
            const ComplexMatrix g =
                rows[static_cast<size_t>(i)].conjugate() * rows[static_cast<size_t>(l)].transpose();
            const Complex lambda = g.trace() / static_cast<double>(k);
            // ||P E P - lambda P||_F = ||B^dagger E B - lambda I||_F for an isometric B.
            const double dev = (g - lambda * id).norm();
            out.lambdas.push_back(lambda);
            out.deviations.push_back(dev);
            out.worst = std::max(out.worst, dev);
        }
    }
    out.verdict = out.worst <= tol;
    return out;
}

EquivalenceReport equivalence_report(const Masker &s, double tol) {
    EquivalenceReport out;
    out.masking = universal_masking_check(s, tol);
    out.masking_verdict = out.masking.verdict;
    const CodeSubspace code = CodeSubspace::range_of(s);
    out.kl_verdict = true;
    for (int j = 0; j < s.dims().parties(); ++j) {
        out.kl.push_back(kl_check(code, j, tol));
        out.kl_verdict = out.kl_verdict && out.kl.back().verdict;
    }
    out.agree = out.masking_verdict == out.kl_verdict;
    if (!out.agree) {
        std::ostringstream msg;
        msg << "equivalence_report: masking check says " << (out.masking_verdict ? "masker" : "not a masker")
            << " (worst " << out.masking.worst() << ") but the erasure check says "
            << (out.kl_verdict ? "correctable" : "not correctable") << " at tol " << tol;
        throw DisagreementAtTolerance(msg.str());
    }
    return out;
}

}  // namespace qmask
