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

#include "qmask/mols.h"

#include <stdexcept>

#include "qmask/errors.h"

namespace qmask {

LatinSquare::LatinSquare(int order, std::vector<int> cells) : order_(order), cells_(std::move(cells)) {
    if (order_ < 1) {
        throw std::invalid_argument("LatinSquare: order must be >= 1");
    }
    if (cells_.size() != static_cast<size_t>(order_) * static_cast<size_t>(order_)) {
        throw std::invalid_argument("LatinSquare: expected " + std::to_string(order_ * order_) + " cells, got " +
                                    std::to_string(cells_.size()));
    }
    for (int c : cells_) {
        if (c < 0 || c >= order_) {
            throw std::invalid_argument("LatinSquare: entry " + std::to_string(c) + " outside 0.." +
                                        std::to_string(order_ - 1));
        }
    }
}

LatinSquare LatinSquare::from_rows(const std::vector<std::vector<int>> &rows) {
    const int d = static_cast<int>(rows.size());
    std::vector<int> cells;
    cells.reserve(rows.size() * rows.size());
    for (const auto &row : rows) {
        if (static_cast<int>(row.size()) != d) {
            throw std::invalid_argument("LatinSquare: ragged row");
        }
        cells.insert(cells.end(), row.begin(), row.end());
    }
    return LatinSquare(d, std::move(cells));
}

std::vector<std::vector<int>> LatinSquare::rows() const {
    std::vector<std::vector<int>> out(static_cast<size_t>(order_));
    for (int r = 0; r < order_; ++r) {
        out[static_cast<size_t>(r)].assign(cells_.begin() + r * order_, cells_.begin() + (r + 1) * order_);
    }
    return out;
}

MolsCheck verify_latin(const LatinSquare &square) {
    const int d = square.order();
    for (int r = 0; r < d; ++r) {
        std::vector<int> seen(static_cast<size_t>(d), -1);
        for (int c = 0; c < d; ++c) {
            auto &prev = seen[static_cast<size_t>(square(r, c))];
            if (prev >= 0) {
                return {false, "row " + std::to_string(r) + " repeats symbol " + std::to_string(square(r, c)) +
                                   " at columns " + std::to_string(prev) + " and " + std::to_string(c)};
            }
            prev = c;
        }
    }
    for (int c = 0; c < d; ++c) {
        std::vector<int> seen(static_cast<size_t>(d), -1);
        for (int r = 0; r < d; ++r) {
            auto &prev = seen[static_cast<size_t>(square(r, c))];
            if (prev >= 0) {
                return {false, "column " + std::to_string(c) + " repeats symbol " + std::to_string(square(r, c)) +
                                   " at rows " + std::to_string(prev) + " and " + std::to_string(r)};
            }
            prev = r;
        }
    }
    return {};
}

MolsCheck verify_mols(const MolsPair &pair) {
    if (pair.first.order() != pair.second.order()) {
        return {false, "order mismatch: " + std::to_string(pair.first.order()) + " vs " +
                           std::to_string(pair.second.order())};
    }
    if (auto check = verify_latin(pair.first); !check) {
        return {false, "first square: " + check.witness};
    }
    if (auto check = verify_latin(pair.second); !check) {
        return {false, "second square: " + check.witness};
    }
    const int d = pair.order();
    // Cell index of the first occurrence of each ordered symbol pair.
    std::vector<int> seen(static_cast<size_t>(d * d), -1);
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
            const int a = pair.first(r, c);
            const int b = pair.second(r, c);
            auto &prev = seen[static_cast<size_t>(a * d + b)];
            if (prev >= 0) {
                return {false, "pair (" + std::to_string(a) + "," + std::to_string(b) + ") appears at cells (" +
                                   std::to_string(prev / d) + "," + std::to_string(prev % d) + ") and (" +
                                   std::to_string(r) + "," + std::to_string(c) + ")"};
            }
            prev = r * d + c;
        }
    }
    return {};
}

std::optional<std::pair<int, int>> prime_power(int q) {
    if (q < 2) {
        return std::nullopt;
    }
    int p = 2;
    while (p * p <= q && q % p != 0) {
        ++p;
    }
    if (q % p != 0) {
        p = q;
    }
    int m = 0;
    int rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++m;
    }
    if (rest != 1) {
        return std::nullopt;
    }
    return std::make_pair(p, m);
}

namespace {

using Poly = std::vector<int>;  // coefficients c_0..c_deg

void trim(Poly &a) {
    while (!a.empty() && a.back() == 0) {
        a.pop_back();
    }
}

int mod(int x, int p) {
    const int r = x % p;
    return r < 0 ? r + p : r;
}

// Remainder of a modulo a monic b over GF(p).
Poly poly_rem(Poly a, const Poly &b, int p) {
    trim(a);
    const size_t db = b.size() - 1;
    while (a.size() > db) {
        const int lead = a.back();
        const size_t shift = a.size() - 1 - db;
        for (size_t i = 0; i <= db; ++i) {
            a[shift + i] = mod(a[shift + i] - lead * b[i], p);
        }
        trim(a);
    }
    return a;
}

Poly monic_from_index(int index, int p, int m) {
    Poly out(static_cast<size_t>(m + 1), 0);
    for (int i = 0; i < m; ++i) {
        out[static_cast<size_t>(i)] = index % p;
        index /= p;
    }
    out[static_cast<size_t>(m)] = 1;
    return out;
}

int int_pow(int base, int e) {
    int out = 1;
    for (int i = 0; i < e; ++i) {
        out *= base;
    }
    return out;
}

bool is_irreducible(const Poly &f, int p) {
    const int m = static_cast<int>(f.size()) - 1;
    for (int deg = 1; deg <= m / 2; ++deg) {
        for (int idx = 0; idx < int_pow(p, deg); ++idx) {
            if (poly_rem(f, monic_from_index(idx, p, deg), p).empty()) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

std::vector<int> smallest_irreducible(int p, int m) {
    if (m == 1) {
        return {0, 1};
    }
    for (int idx = 0; idx < int_pow(p, m); ++idx) {
        auto f = monic_from_index(idx, p, m);
        if (is_irreducible(f, p)) {
            return f;
        }
    }
    throw std::logic_error("no irreducible polynomial found");
}

FiniteField::FiniteField(int p, int m, std::vector<int> modulus)
    : p_(p), m_(m), q_(int_pow(p, m)), modulus_(std::move(modulus)) {
    const auto to_poly = [this](int x) {
        Poly out(static_cast<size_t>(m_), 0);
        for (int i = 0; i < m_; ++i) {
            out[static_cast<size_t>(i)] = x % p_;
            x /= p_;
        }
        return out;
    };
    const auto from_poly = [this](const Poly &a) {
        int out = 0;
        for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
            out = out * p_ + a[static_cast<size_t>(i)];
        }
        return out;
    };

    const auto qs = static_cast<size_t>(q_);
    add_.resize(qs * qs);
    mul_.resize(qs * qs);
    for (int a = 0; a < q_; ++a) {
        const Poly pa = to_poly(a);
        for (int b = 0; b < q_; ++b) {
            const Poly pb = to_poly(b);
            Poly sum(static_cast<size_t>(m_));
            for (int i = 0; i < m_; ++i) {
                sum[static_cast<size_t>(i)] = mod(pa[static_cast<size_t>(i)] + pb[static_cast<size_t>(i)], p_);
            }
            Poly prod(static_cast<size_t>(2 * m_ - 1), 0);
            for (int i = 0; i < m_; ++i) {
                for (int k = 0; k < m_; ++k) {
                    auto &c = prod[static_cast<size_t>(i + k)];
                    c = mod(c + pa[static_cast<size_t>(i)] * pb[static_cast<size_t>(k)], p_);
                }
            }
            // For prime fields the modulus is x, which would reduce everything to 0.
            const Poly reduced = m_ == 1 ? prod : poly_rem(prod, modulus_, p_);
            add_[static_cast<size_t>(a) * qs + static_cast<size_t>(b)] = from_poly(sum);
            mul_[static_cast<size_t>(a) * qs + static_cast<size_t>(b)] = from_poly(reduced);
        }
    }
}

int FiniteField::neg(int a) const {
    for (int b = 0; b < q_; ++b) {
        if (add(a, b) == 0) {
            return b;
        }
    }
    throw std::logic_error("FiniteField: additive inverse missing");
}

int FiniteField::inv(int a) const {
    if (a == 0) {
        throw std::domain_error("FiniteField: zero has no inverse");
    }
    for (int b = 1; b < q_; ++b) {
        if (mul(a, b) == 1) {
            return b;
        }
    }
    throw std::logic_error("FiniteField: multiplicative inverse missing");
}

FiniteField gf_construct(int q) {
    const auto pm = prime_power(q);
    if (!pm) {
        throw NotPrimePower("GF(" + std::to_string(q) + "): order is not a prime power");
    }
    if (q > kMaxFieldOrder) {
        throw UnsupportedOrder("GF(" + std::to_string(q) + "): tables are limited to order " +
                               std::to_string(kMaxFieldOrder));
    }
    const auto [p, m] = *pm;
    return FiniteField(p, m, smallest_irreducible(p, m));
}

std::vector<LatinSquare> mols_from_field(const FiniteField &field) {
    const int q = field.order();
    std::vector<LatinSquare> out;
    out.reserve(static_cast<size_t>(q - 1));
    for (int a = 1; a < q; ++a) {
        std::vector<int> cells(static_cast<size_t>(q * q));
        for (int i = 0; i < q; ++i) {
            for (int k = 0; k < q; ++k) {
                cells[static_cast<size_t>(i * q + k)] = field.add(field.mul(a, i), k);
            }
        }
        out.emplace_back(q, std::move(cells));
    }
    return out;
}

static LatinSquare product_square(const LatinSquare &a, const LatinSquare &b) {
    const int na = a.order();
    const int nb = b.order();
    const int n = na * nb;
    std::vector<int> cells(static_cast<size_t>(n * n));
    for (int i1 = 0; i1 < na; ++i1) {
        for (int i2 = 0; i2 < nb; ++i2) {
            for (int k1 = 0; k1 < na; ++k1) {
                for (int k2 = 0; k2 < nb; ++k2) {
                    const int row = i1 * nb + i2;
                    const int col = k1 * nb + k2;
                    cells[static_cast<size_t>(row * n + col)] = a(i1, k1) * nb + b(i2, k2);
                }
            }
        }
    }
    return LatinSquare(n, std::move(cells));
}

MolsPair macneish_product(const MolsPair &a, const MolsPair &b) {
    return {product_square(a.first, b.first), product_square(a.second, b.second)};
}

MolsPair mols_pair(int d) {
    if (d == 2 || d == 6) {
        throw NoMolsExists("no pair of orthogonal Latin squares of order " + std::to_string(d) + " exists");
    }
    if (d < 3) {
        throw UnsupportedOrder("order " + std::to_string(d) + " is below 3");
    }
    if (d % 4 == 2) {
        throw UnsupportedOrder("order " + std::to_string(d) +
                               " is 2 mod 4; no built-in construction, supply the squares from a file");
    }

    std::optional<MolsPair> acc;
    int rest = d;
    for (int p = 2; rest > 1; ++p) {
        if (rest % p != 0) {
            continue;
        }
        int q = 1;
        while (rest % p == 0) {
            rest /= p;
            q *= p;
        }
        if (q > kMaxFieldOrder) {
            throw UnsupportedOrder("order " + std::to_string(d) + " needs GF(" + std::to_string(q) +
                                   "), beyond the built-in field tables");
        }
        auto squares = mols_from_field(gf_construct(q));
        MolsPair factor{squares[0], squares[1]};
        acc = acc ? macneish_product(*acc, factor) : factor;
    }
    return *acc;
}

}  // namespace qmask
