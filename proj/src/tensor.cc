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

#include "qmask/tensor.h"

#include <algorithm>
#include <random>
#include <sstream>

#include "qmask/errors.h"

namespace qmask {

Dims::Dims(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) {
        throw DimensionMismatch("Dims: at least one subsystem is required");
    }
    for (int d : dims_) {
        if (d < 2) {
            throw DimensionMismatch("Dims: every subsystem dimension must be >= 2, got " + std::to_string(d));
        }
    }
}

Index Dims::total() const {
    Index t = 1;
    for (int d : dims_) {
        t *= d;
    }
    return t;
}

Index Dims::rest(int j) const {
    check_index(j);
    return total() / dims_[static_cast<size_t>(j)];
}

Dims Dims::moved_to_front(int j) const {
    check_index(j);
    std::vector<int> out;
    out.reserve(dims_.size());
    out.push_back(dims_[static_cast<size_t>(j)]);
    for (int t = 0; t < parties(); ++t) {
        if (t != j) {
            out.push_back(dims_[static_cast<size_t>(t)]);
        }
    }
    return Dims(std::move(out));
}

void Dims::check_index(int j) const {
    if (j < 0 || j >= parties()) {
        throw DimensionMismatch("subsystem index " + std::to_string(j) + " out of range for " + str());
    }
}

std::string Dims::str() const {
    std::ostringstream out;
    out << "(";
    for (size_t t = 0; t < dims_.size(); ++t) {
        out << (t ? "," : "") << dims_[t];
    }
    out << ")";
    return out.str();
}

StateVector SchmidtResult::reconstruct() const {
    const Index l = left_vectors.rows();
    const Index r = right_vectors.rows();
    StateVector out = StateVector::Zero(l * r);
    for (size_t i = 0; i < coefficients.size(); ++i) {
        const auto c = static_cast<Index>(i);
        out += coefficients[i] * kron(StateVector(left_vectors.col(c)), StateVector(right_vectors.col(c)));
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index k = 0; k < a.cols(); ++k) {
            out.block(i * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(i, k) * b;
        }
    }
    return out;
}

StateVector kron(const StateVector &a, const StateVector &b) {
    StateVector out(a.size() * b.size());
    for (Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

std::vector<Index> front_permutation(const Dims &dims, int j) {
    dims.check_index(j);
    const int n = dims.parties();
    const Index total = dims.total();
    const Index rest = total / dims[j];

    // Stride of each original subsystem inside the permuted layout.
    std::vector<Index> new_stride(static_cast<size_t>(n));
    new_stride[static_cast<size_t>(j)] = rest;
    Index s = rest;
    for (int t = 0; t < n; ++t) {
        if (t == j) {
            continue;
        }
        s /= dims[t];
        new_stride[static_cast<size_t>(t)] = s;
    }

    std::vector<Index> perm(static_cast<size_t>(total));
    std::vector<int> digit(static_cast<size_t>(n), 0);
    Index target = 0;
    for (Index old = 0; old < total; ++old) {
        perm[static_cast<size_t>(old)] = target;
        // Odometer increment, least significant subsystem last.
        for (int t = n - 1; t >= 0; --t) {
            auto &h = digit[static_cast<size_t>(t)];
            ++h;
            target += new_stride[static_cast<size_t>(t)];
            if (h < dims[t]) {
                break;
            }
            target -= new_stride[static_cast<size_t>(t)] * h;
            h = 0;
        }
    }
    return perm;
}

static void check_vector(const StateVector &v, const Dims &dims) {
    if (v.size() != dims.total()) {
        throw DimensionMismatch("vector of size " + std::to_string(v.size()) + " does not match dims " + dims.str());
    }
}

StateVector permute_to_front(const StateVector &v, const Dims &dims, int j) {
    check_vector(v, dims);
    const auto perm = front_permutation(dims, j);
    StateVector out(v.size());
    for (Index i = 0; i < v.size(); ++i) {
        out(perm[static_cast<size_t>(i)]) = v(i);
    }
    return out;
}

StateVector permute_from_front(const StateVector &v, const Dims &dims, int j) {
    check_vector(v, dims);
    const auto perm = front_permutation(dims, j);
    StateVector out(v.size());
    for (Index i = 0; i < v.size(); ++i) {
        out(i) = v(perm[static_cast<size_t>(i)]);
    }
    return out;
}

ComplexMatrix front_permutation_matrix(const Dims &dims, int j) {
    const auto perm = front_permutation(dims, j);
    const Index total = dims.total();
    ComplexMatrix t = ComplexMatrix::Zero(total, total);
    for (Index i = 0; i < total; ++i) {
        t(perm[static_cast<size_t>(i)], i) = 1.0;
    }
    return t;
}

ComplexMatrix partial_trace(const ComplexMatrix &rho, const Dims &dims, int keep) {
    const Index total = dims.total();
    if (rho.rows() != total || rho.cols() != total) {
        throw DimensionMismatch("partial_trace: operator is " + std::to_string(rho.rows()) + "x" +
                                std::to_string(rho.cols()) + ", dims " + dims.str());
    }
    const auto perm = front_permutation(dims, keep);
    std::vector<Index> inverse(perm.size());
    for (size_t i = 0; i < perm.size(); ++i) {
        inverse[static_cast<size_t>(perm[i])] = static_cast<Index>(i);
    }
    const Index d = dims[keep];
    const Index rest = total / d;
    ComplexMatrix out = ComplexMatrix::Zero(d, d);
    for (Index a = 0; a < d; ++a) {
        for (Index b = 0; b < d; ++b) {
            Complex acc = 0.0;
            for (Index r = 0; r < rest; ++r) {
                acc += rho(inverse[static_cast<size_t>(a * rest + r)], inverse[static_cast<size_t>(b * rest + r)]);
            }
            out(a, b) = acc;
        }
    }
    return out;
}

ComplexMatrix front_coefficients(const StateVector &v, const Dims &dims, int j) {
    const StateVector w = permute_to_front(v, dims, j);
    const Index d = dims[j];
    return Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(w.data(), d,
                                                                                                     w.size() / d);
}

ComplexMatrix reduced_outer(const StateVector &a, const StateVector &b, const Dims &dims, int keep) {
    const ComplexMatrix xa = front_coefficients(a, dims, keep);
    const ComplexMatrix xb = front_coefficients(b, dims, keep);
    return xa * xb.adjoint();
}

SchmidtResult schmidt_decompose(const StateVector &v, Index left_dim, Index right_dim, double tol) {
    if (left_dim < 1 || right_dim < 1 || v.size() != left_dim * right_dim) {
        throw DimensionMismatch("schmidt_decompose: vector of size " + std::to_string(v.size()) + " is not " +
                                std::to_string(left_dim) + " x " + std::to_string(right_dim));
    }
    const ComplexMatrix coeff =
        Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(v.data(), left_dim,
                                                                                                  right_dim);
    Eigen::JacobiSVD<ComplexMatrix> svd(coeff, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SchmidtResult out;
    const auto &sv = svd.singularValues();
    out.coefficients.assign(sv.data(), sv.data() + sv.size());
    out.left_vectors = svd.matrixU();
    // coeff = U S V^dagger, so the right factors are the conjugated columns of V.
    out.right_vectors = svd.matrixV().conjugate();
    out.rank = static_cast<int>(std::count_if(out.coefficients.begin(), out.coefficients.end(),
                                              [tol](double c) { return c > tol; }));
    return out;
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

static ComplexMatrix ginibre(Index rows, Index cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(rows, cols);
    // Fill in a fixed order so results do not depend on Eigen's storage order.
    for (Index i = 0; i < rows; ++i) {
        for (Index k = 0; k < cols; ++k) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, k) = Complex(re, im);
        }
    }
    return g;
}

StateVector random_pure_state(Index dim, std::uint64_t seed) {
    if (dim < 1) {
        throw DimensionMismatch("random_pure_state: dim must be >= 1");
    }
    StateVector v = ginibre(dim, 1, seed).col(0);
    v /= v.norm();
    return v;
}

ComplexMatrix random_unitary(Index dim, std::uint64_t seed) {
    const ComplexMatrix z = ginibre(dim, dim, seed);
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index k = 0; k < dim; ++k) {
        const Complex diag = r(k, k);
        const double mag = std::abs(diag);
        if (mag > 0.0) {
            q.col(k) *= diag / mag;
        }
    }
    return q;
}

ComplexMatrix random_isometry(Index rows, Index cols, std::uint64_t seed) {
    if (cols > rows) {
        throw DimensionMismatch("random_isometry: cols > rows");
    }
    return random_unitary(rows, seed).leftCols(cols);
}

ComplexMatrix random_density(Index dim, std::uint64_t seed) {
    const ComplexMatrix g = ginibre(dim, dim, seed);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return rho;
}

double isometry_defect(const ComplexMatrix &v) {
    return (v.adjoint() * v - ComplexMatrix::Identity(v.cols(), v.cols())).norm();
}

bool is_hermitian(const ComplexMatrix &m, double tol) {
    return m.rows() == m.cols() && (m - m.adjoint()).norm() <= tol;
}

double min_eigenvalue_hermitian(const ComplexMatrix &m) {
    const ComplexMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().minCoeff();
}

ComplexMatrix polar_isometry(const ComplexMatrix &a) {
    Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

ComplexMatrix orthogonal_complement(const ComplexMatrix &isometry) {
    const Index n = isometry.rows();
    const Index k = isometry.cols();
    Eigen::HouseholderQR<ComplexMatrix> qr(isometry);
    const ComplexMatrix q = qr.householderQ();
    return q.rightCols(n - k);
}

}  // namespace qmask
