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

#ifndef QMASK_MOLS_H
#define QMASK_MOLS_H

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qmask {

/// A d x d array with entries in 0..d-1.
///
/// Construction only checks shape and entry range; whether rows and columns
/// are permutations is left to verify_latin so that malformed squares can be
/// loaded and diagnosed.
class LatinSquare {
   public:
    LatinSquare(int order, std::vector<int> cells);
    static LatinSquare from_rows(const std::vector<std::vector<int>> &rows);

    int order() const {
        return order_;
    }
    int operator()(int row, int col) const {
        return cells_[static_cast<size_t>(row * order_ + col)];
    }
    const std::vector<int> &cells() const {
        return cells_;
    }
    std::vector<std::vector<int>> rows() const;

    bool operator==(const LatinSquare &other) const = default;

   private:
    int order_;
    std::vector<int> cells_;
};

struct MolsPair {
    LatinSquare first;
    LatinSquare second;

    int order() const {
        return first.order();
    }
};

/// Outcome of an exhaustive check. `witness` names the first violation found.
struct MolsCheck {
    bool ok = true;
    std::string witness;

    explicit operator bool() const {
        return ok;
    }
};

MolsCheck verify_latin(const LatinSquare &square);
MolsCheck verify_mols(const MolsPair &pair);

/// GF(p^m) with elements encoded as integers sum_i a_i p^i (a_i the polynomial coefficients).
class FiniteField {
   public:
    FiniteField(int p, int m, std::vector<int> modulus);

    int characteristic() const {
        return p_;
    }
    int degree() const {
        return m_;
    }
    int order() const {
        return q_;
    }
    /// Monic modulus polynomial, coefficients c_0..c_m (c_m = 1). For m = 1 this is x.
    const std::vector<int> &modulus() const {
        return modulus_;
    }

    int add(int a, int b) const {
        return add_[static_cast<size_t>(a * q_ + b)];
    }
    int mul(int a, int b) const {
        return mul_[static_cast<size_t>(a * q_ + b)];
    }
    int neg(int a) const;
    /// Multiplicative inverse; throws std::domain_error for 0.
    int inv(int a) const;

   private:
    int p_;
    int m_;
    int q_;
    std::vector<int> modulus_;
    std::vector<int> add_;
    std::vector<int> mul_;
};

/// (p, m) with q = p^m, or nullopt if q is not a prime power.
std::optional<std::pair<int, int>> prime_power(int q);

/// Lexicographically smallest monic irreducible polynomial of the given degree over GF(p).
/// Candidates are ranked by the integer sum_{i<m} c_i p^i.
std::vector<int> smallest_irreducible(int p, int m);

constexpr int kMaxFieldOrder = 64;

/// Field tables for GF(q), 2 <= q <= 64.
FiniteField gf_construct(int q);

/// The q-1 squares L_a(i, k) = a*i + k, one per nonzero a, in increasing a.
std::vector<LatinSquare> mols_from_field(const FiniteField &field);

/// Direct product pair of order a.order() * b.order().
MolsPair macneish_product(const MolsPair &a, const MolsPair &b);

/// Orthogonal pair of order d from the finite-field and product constructions.
MolsPair mols_pair(int d);

}  // namespace qmask

#endif
