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

#include "qmask/masker.h"

#include <cmath>

#include "qmask/errors.h"

namespace qmask {

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::latin:
            return "latin";
        case Provenance::embedded:
            return "embedded";
        case Provenance::extended:
            return "extended";
        case Provenance::dilation_restricted:
            return "dilation-restricted";
        case Provenance::user:
            return "user";
    }
    return "user";
}

Provenance provenance_from_string(const std::string &name) {
    for (auto p : {Provenance::latin, Provenance::embedded, Provenance::extended, Provenance::dilation_restricted,
                   Provenance::user}) {
        if (to_string(p) == name) {
            return p;
        }
    }
    throw std::invalid_argument("unknown provenance '" + name + "'");
}

Masker::Masker(Dims dims, ComplexMatrix matrix, Provenance provenance)
    : dims_(std::move(dims)), matrix_(std::move(matrix)), provenance_(provenance) {
    if (matrix_.rows() != dims_.total()) {
        throw DimensionMismatch("Masker: matrix has " + std::to_string(matrix_.rows()) + " rows but dims " +
                                dims_.str() + " span " + std::to_string(dims_.total()));
    }
    if (matrix_.cols() < 1) {
        throw DimensionMismatch("Masker: input dimension must be >= 1");
    }
    const double defect = isometry_defect(matrix_);
    if (!(defect <= kIsometryTol)) {
        throw NotIsometric("Masker: ||S^dagger S - I||_F = " + std::to_string(defect));
    }
}

StateVector Masker::apply(const StateVector &psi) const {
    if (psi.size() != matrix_.cols()) {
        throw DimensionMismatch("Masker: input state has dimension " + std::to_string(psi.size()) + ", expected " +
                                std::to_string(matrix_.cols()));
    }
    return matrix_ * psi;
}

bool MarginalSet::valid(double tol) const {
    for (const auto &rho : marginals) {
        if (!is_hermitian(rho, tol)) {
            return false;
        }
        if (std::abs(rho.trace() - Complex(1.0)) > tol) {
            return false;
        }
        if (min_eigenvalue_hermitian(rho) < -tol) {
            return false;
        }
    }
    return true;
}

MarginalSet image_marginals(const Masker &s, const StateVector &psi) {
    const StateVector img = s.apply(psi);
    MarginalSet out;
    for (int j = 0; j < s.dims().parties(); ++j) {
        out.marginals.push_back(marginal(img, s.dims(), j));
    }
    return out;
}

Masker latin_masker(int d, const MolsPair &pair) {
    if (pair.order() != d) {
        throw InvalidMols("latin_masker: pair has order " + std::to_string(pair.order()) + ", expected " +
                          std::to_string(d));
    }
    if (auto check = verify_mols(pair); !check) {
        throw InvalidMols("latin_masker: " + check.witness);
    }
    const Index dd = d;
    ComplexMatrix m = ComplexMatrix::Zero(dd * dd * dd, dd);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
            m(k * dd * dd + pair.first(j, k) * dd + pair.second(j, k), j) = amp;
        }
    }
    return Masker(Dims{d, d, d}, std::move(m), Provenance::latin);
}

Masker latin_masker(int d) {
    return latin_masker(d, mols_pair(d));
}

ComplexMatrix embed_iso(int k, int m) {
    if (k < 1 || k > m) {
        throw DimensionMismatch("embed_iso: need 1 <= k <= m, got k=" + std::to_string(k) + ", m=" + std::to_string(m));
    }
    ComplexMatrix j = ComplexMatrix::Zero(m, k);
    j.topRows(k).setIdentity();
    return j;
}

Masker tilde_masker(int d) {
    if (d < 2) {
        throw DimensionMismatch("tilde_masker: d must be >= 2");
    }
    if (d == 5) {
        const Masker s5 = latin_masker(5);
        const ComplexMatrix j = embed_iso(5, 6);
        return Masker(Dims{6, 6, 6}, kron(kron(j, j), j) * s5.matrix(), Provenance::embedded);
    }
    const Masker next = latin_masker(d + 1);
    return Masker(next.dims(), next.matrix() * embed_iso(d, d + 1), Provenance::embedded);
}

static void require_isometry(const ComplexMatrix &v, Index rows, Index cols, const std::string &name) {
    if (v.rows() != rows || v.cols() != cols) {
        throw DimensionMismatch(name + " must be " + std::to_string(rows) + "x" + std::to_string(cols) + ", got " +
                                std::to_string(v.rows()) + "x" + std::to_string(v.cols()));
    }
    const double defect = isometry_defect(v);
    if (!(defect <= kIsometryTol)) {
        throw NotIsometric(name + ": ||V^dagger V - I||_F = " + std::to_string(defect));
    }
}

Masker dimension_extension(const Masker &base, const Dims &targets, const ComplexMatrix &u,
                           const ComplexMatrix &v1, const ComplexMatrix &v2, const ComplexMatrix &v3) {
    if (base.dims().parties() != 3 || targets.parties() != 3) {
        throw DimensionMismatch("dimension_extension: base and targets must be tripartite");
    }
    const Index k = base.input_dim();
    require_isometry(u, k, k, "u");
    require_isometry(v1, targets[0], base.dims()[0], "v1");
    require_isometry(v2, targets[1], base.dims()[1], "v2");
    require_isometry(v3, targets[2], base.dims()[2], "v3");
    return Masker(targets, kron(kron(v1, v2), v3) * base.matrix() * u, Provenance::extended);
}

Masker dimension_extension(const Masker &base, const Dims &targets) {
    if (base.dims().parties() != 3 || targets.parties() != 3) {
        throw DimensionMismatch("dimension_extension: base and targets must be tripartite");
    }
    const auto k = static_cast<Index>(base.input_dim());
    return dimension_extension(base, targets, ComplexMatrix::Identity(k, k), embed_iso(base.dims()[0], targets[0]),
                               embed_iso(base.dims()[1], targets[1]), embed_iso(base.dims()[2], targets[2]));
}

Masker participant_extension(const Masker &base, const std::vector<StateVector> &ancillas) {
    std::vector<int> dims = base.dims().values();
    ComplexMatrix m = base.matrix();
    for (size_t i = 0; i < ancillas.size(); ++i) {
        const auto &e = ancillas[i];
        if (std::abs(e.norm() - 1.0) > kIsometryTol) {
            throw InvalidState("participant_extension: ancilla " + std::to_string(i) + " has norm " +
                               std::to_string(e.norm()));
        }
        dims.push_back(static_cast<int>(e.size()));
        m = kron(m, ComplexMatrix(e));
    }
    if (ancillas.empty()) {
        return base;
    }
    return Masker(Dims(std::move(dims)), std::move(m), Provenance::extended);
}

// Columns J|i> (x) |b>, an orthonormal basis of J(K) (x) |b>.
static ComplexMatrix dilation_domain(const Dims &dims, Index k, const ComplexMatrix &j_embed, const StateVector &b) {
    require_isometry(j_embed, dims[0], k, "j_embed");
    if (b.size() != dims.rest(0)) {
        throw DimensionMismatch("ancilla |b> has dimension " + std::to_string(b.size()) + ", expected " +
                                std::to_string(dims.rest(0)));
    }
    if (std::abs(b.norm() - 1.0) > kIsometryTol) {
        throw InvalidState("ancilla |b> has norm " + std::to_string(b.norm()));
    }
    return kron(j_embed, ComplexMatrix(b));
}

ComplexMatrix unitary_dilation(const Masker &s, const ComplexMatrix &j_embed, const StateVector &b, std::uint64_t seed) {
    const Index k = s.input_dim();
    if (k > s.dims()[0]) {
        throw DimensionMismatch("unitary_dilation: input dimension " + std::to_string(k) +
                                " exceeds first subsystem dimension " + std::to_string(s.dims()[0]));
    }
    const ComplexMatrix domain = dilation_domain(s.dims(), k, j_embed, b);
    ComplexMatrix u = s.matrix() * domain.adjoint();
    const Index n = s.dims().total();
    if (n > k) {
        const ComplexMatrix domain_perp = orthogonal_complement(domain);
        const ComplexMatrix range_perp = orthogonal_complement(s.matrix());
        u += range_perp * random_unitary(n - k, seed) * domain_perp.adjoint();
    }
    return u;
}

Masker restrict_dilation(const ComplexMatrix &u, const Dims &dims, const ComplexMatrix &j_embed, const StateVector &b) {
    if (u.rows() != dims.total() || u.cols() != dims.total()) {
        throw DimensionMismatch("restrict_dilation: unitary does not match dims " + dims.str());
    }
    const ComplexMatrix domain = dilation_domain(dims, j_embed.cols(), j_embed, b);
    return Masker(dims, u * domain, Provenance::dilation_restricted);
}

ComplexMatrix mask_density(const Masker &s, const ComplexMatrix &sigma) {
    constexpr double tol = 1e-8;
    const Index k = s.input_dim();
    if (sigma.rows() != k || sigma.cols() != k) {
        throw DimensionMismatch("mask_density: sigma must be " + std::to_string(k) + "x" + std::to_string(k));
    }
    if (!is_hermitian(sigma, tol)) {
        throw InvalidState("mask_density: sigma is not Hermitian");
    }
    if (std::abs(sigma.trace() - Complex(1.0)) > tol) {
        throw InvalidState("mask_density: trace of sigma is not 1");
    }
    if (min_eigenvalue_hermitian(sigma) < -tol) {
        throw InvalidState("mask_density: sigma is not positive semidefinite");
    }
    return s.matrix() * sigma * s.matrix().adjoint();
}

}  // namespace qmask
