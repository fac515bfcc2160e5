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

#ifndef QMASK_TENSOR_H
#define QMASK_TENSOR_H

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qmask {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Ordered subsystem dimensions (d_0, ..., d_{n-1}) of a tensor product space.
///
/// Basis states |h_0 h_1 ... h_{n-1}> are laid out with subsystem 0 as the most
/// significant digit, so the flat index is sum_t h_t * prod_{u>t} d_u.
class Dims {
   public:
    Dims() = default;
    explicit Dims(std::vector<int> dims);
    Dims(std::initializer_list<int> dims) : Dims(std::vector<int>(dims)) {
    }

    int parties() const {
        return static_cast<int>(dims_.size());
    }
    int operator[](int j) const {
        return dims_.at(static_cast<size_t>(j));
    }
    const std::vector<int> &values() const {
        return dims_;
    }
    /// Product of all subsystem dimensions.
    Index total() const;
    /// Product of every dimension except subsystem j.
    Index rest(int j) const;
    /// Dimensions reordered as (d_j, d_0, ..., d_{j-1}, d_{j+1}, ...).
    Dims moved_to_front(int j) const;

    void check_index(int j) const;
    std::string str() const;

    bool operator==(const Dims &other) const = default;

   private:
    std::vector<int> dims_;
};

struct SchmidtResult {
    /// Non-increasing, non-negative.
    std::vector<double> coefficients;
    /// Columns are the left Schmidt vectors (left_dim x min(left_dim, right_dim)).
    ComplexMatrix left_vectors;
    /// Columns are the right Schmidt vectors (right_dim x min(left_dim, right_dim)).
    ComplexMatrix right_vectors;
    /// Number of coefficients above the rank tolerance.
    int rank = 0;

    /// sum_i c_i |left_i> (x) |right_i>.
    StateVector reconstruct() const;
};

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);
StateVector kron(const StateVector &a, const StateVector &b);

/// Maps each flat index of `dims` to its flat index after moving subsystem j to the front.
std::vector<Index> front_permutation(const Dims &dims, int j);

/// Applies T_j: |h_0 ... h_j ... h_{n-1}> -> |h_j h_0 ... h_{j-1} h_{j+1} ...>.
StateVector permute_to_front(const StateVector &v, const Dims &dims, int j);
/// Applies T_j^dagger, the inverse of permute_to_front.
StateVector permute_from_front(const StateVector &v, const Dims &dims, int j);
/// Dense permutation matrix of T_j.
ComplexMatrix front_permutation_matrix(const Dims &dims, int j);

/// Reduced operator on subsystem `keep` of an operator on the full space.
ComplexMatrix partial_trace(const ComplexMatrix &rho, const Dims &dims, int keep);

/// tr over all but `keep` of |a><b|, without forming the outer product.
ComplexMatrix reduced_outer(const StateVector &a, const StateVector &b, const Dims &dims, int keep);

/// Marginal state of subsystem `keep` for the pure state v.
inline ComplexMatrix marginal(const StateVector &v, const Dims &dims, int keep) {
    return reduced_outer(v, v, dims, keep);
}

/// Coefficient matrix of T_j v: rows index subsystem j, columns index the remaining factors.
ComplexMatrix front_coefficients(const StateVector &v, const Dims &dims, int j);

constexpr double kDefaultSvdTol = 1e-10;

SchmidtResult schmidt_decompose(const StateVector &v, Index left_dim, Index right_dim, double tol = kDefaultSvdTol);

/// Haar-random unit vector. Deterministic per seed.
StateVector random_pure_state(Index dim, std::uint64_t seed);
/// Haar-random unitary (QR of a complex Ginibre matrix with phase fix).
ComplexMatrix random_unitary(Index dim, std::uint64_t seed);
/// First `cols` columns of a Haar-random unitary.
ComplexMatrix random_isometry(Index rows, Index cols, std::uint64_t seed);
/// Random full-rank density operator (Ginibre G G^dagger / tr).
ComplexMatrix random_density(Index dim, std::uint64_t seed);

/// Independent stream seed derived from (seed, stream) by splitmix64.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream);

/// ||V^dagger V - I||_F.
double isometry_defect(const ComplexMatrix &v);
bool is_hermitian(const ComplexMatrix &m, double tol);
double min_eigenvalue_hermitian(const ComplexMatrix &m);

/// Unitary factor of the polar decomposition of a full-column-rank matrix.
ComplexMatrix polar_isometry(const ComplexMatrix &a);

/// Orthonormal basis of the orthogonal complement of the column span of an isometry.
ComplexMatrix orthogonal_complement(const ComplexMatrix &isometry);

}  // namespace qmask

#endif
