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

#include "qmask/erasure.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qmask/errors.h"

namespace qmask {

namespace {

double completeness(const std::vector<ComplexMatrix> &kraus, Index total) {
    ComplexMatrix sum = ComplexMatrix::Zero(total, total);
    for (const auto &e : kraus) {
        sum += e.adjoint() * e;
    }
    return (sum - ComplexMatrix::Identity(total, total)).norm();
}

ComplexMatrix apply_kraus(const std::vector<ComplexMatrix> &kraus, const ComplexMatrix &rho) {
    ComplexMatrix out = ComplexMatrix::Zero(kraus.front().rows(), kraus.front().rows());
    for (const auto &e : kraus) {
        out += e * rho * e.adjoint();
    }
    return out;
}

// Eigenvalues of the overlap matrix below this are treated as zero error directions.
constexpr double kOverlapRankTol = 1e-10;

}  // namespace

KrausChannel::KrausChannel(Dims dims, std::vector<ComplexMatrix> kraus, std::optional<int> erasure_index)
    : dims_(std::move(dims)), kraus_(std::move(kraus)), erasure_index_(erasure_index) {
    if (kraus_.empty()) {
        throw std::invalid_argument("KrausChannel: at least one Kraus operator is required");
    }
    const Index total = dims_.total();
    for (const auto &e : kraus_) {
        if (e.rows() != total || e.cols() != total) {
            throw DimensionMismatch("KrausChannel: Kraus operator shape does not match dims " + dims_.str());
        }
    }
    if (erasure_index_) {
        dims_.check_index(*erasure_index_);
    }
    const double defect = completeness_defect();
    if (!(defect <= kCompletenessTol)) {
        throw std::invalid_argument("KrausChannel: ||sum E^dagger E - I||_F = " + std::to_string(defect));
    }
}

KrausChannel KrausChannel::identity(const Dims &dims) {
    return KrausChannel(dims, {ComplexMatrix::Identity(dims.total(), dims.total())});
}

ComplexMatrix KrausChannel::apply(const ComplexMatrix &rho) const {
    if (rho.rows() != dims_.total() || rho.cols() != dims_.total()) {
        throw DimensionMismatch("KrausChannel::apply: operator shape does not match dims " + dims_.str());
    }
    return apply_kraus(kraus_, rho);
}

double KrausChannel::completeness_defect() const {
    return completeness(kraus_, dims_.total());
}

KrausChannel reset_channel(const Dims &dims, int j) {
    dims.check_index(j);
    const Index d = dims[j];
    std::vector<ComplexMatrix> kraus;
    for (Index k = 0; k < d; ++k) {
        ComplexMatrix local = ComplexMatrix::Zero(d, d);
        local(0, k) = 1.0;
        kraus.push_back(embed_local(dims, j, local));
    }
    return KrausChannel(dims, std::move(kraus), j);
}

KrausChannel depolarize_channel(const Dims &dims, int j) {
    dims.check_index(j);
    const Index d = dims[j];
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    std::vector<ComplexMatrix> kraus;
    for (Index i = 0; i < d; ++i) {
        for (Index k = 0; k < d; ++k) {
            ComplexMatrix local = ComplexMatrix::Zero(d, d);
            local(i, k) = amp;
            kraus.push_back(embed_local(dims, j, local));
        }
    }
    return KrausChannel(dims, std::move(kraus), j);
}

bool is_one_erasure(const KrausChannel &ch, int j) {
    const Dims &dims = ch.dims();
    dims.check_index(j);
    const Index total = dims.total();
    const Index d = dims[j];
    const Index rest = total / d;
    const auto perm = front_permutation(dims, j);
    for (const auto &e : ch.kraus()) {
        // f = T_j e T_j^dagger
        ComplexMatrix f(total, total);
        for (Index a = 0; a < total; ++a) {
            for (Index b = 0; b < total; ++b) {
                f(perm[static_cast<size_t>(a)], perm[static_cast<size_t>(b)]) = e(a, b);
            }
        }
        // Best A with f ~ A (x) I is the normalized partial trace over the rest factor.
        ComplexMatrix local = ComplexMatrix::Zero(d, d);
        for (Index i = 0; i < d; ++i) {
            for (Index k = 0; k < d; ++k) {
                Complex acc = 0.0;
                for (Index r = 0; r < rest; ++r) {
                    acc += f(i * rest + r, k * rest + r);
                }
                local(i, k) = acc / static_cast<double>(rest);
            }
        }
        if ((f - kron(local, ComplexMatrix::Identity(rest, rest))).norm() > 1e-10) {
            return false;
        }
    }
    return true;
}

RecoveryMap RecoveryMap::identity(Index total) {
    return {{ComplexMatrix::Identity(total, total)}, ComplexMatrix::Identity(total, total)};
}

ComplexMatrix RecoveryMap::apply(const ComplexMatrix &rho) const {
    return apply_kraus(kraus, rho);
}

double RecoveryMap::completeness_defect() const {
    return completeness(kraus, kraus.front().cols());
}

RecoveryMap kl_recovery(const CodeSubspace &code, const KrausChannel &ch, double tol) {
    if (!(code.dims() == ch.dims())) {
        throw DimensionMismatch("kl_recovery: code dims " + code.dims().str() + " vs channel dims " +
                                ch.dims().str());
    }
    if (const auto j = ch.erasure_index()) {
        const KLReport report = kl_check(code, *j, tol);
        if (!report.verdict) {
            std::ostringstream msg;
            msg << "kl_recovery: code fails the erasure conditions on subsystem " << *j << " (worst deviation "
                << report.worst << ", tol " << tol << ")";
            throw KLViolated(msg.str());
        }
    }

    const ComplexMatrix &b = code.basis();
    const Index k = code.dim();
    const Index total = code.dims().total();
    const auto m = static_cast<Index>(ch.kraus().size());

    std::vector<ComplexMatrix> eb;
    eb.reserve(static_cast<size_t>(m));
    for (const auto &e : ch.kraus()) {
        eb.push_back(e * b);
    }

    // alpha_{kl} I = B^dagger E_k^dagger E_l B on a correctable code.
    ComplexMatrix alpha(m, m);
    const ComplexMatrix id = ComplexMatrix::Identity(k, k);
    for (Index a = 0; a < m; ++a) {
        for (Index c = 0; c < m; ++c) {
            const ComplexMatrix overlap = eb[static_cast<size_t>(a)].adjoint() * eb[static_cast<size_t>(c)];
            alpha(a, c) = overlap.trace() / static_cast<double>(k);
            const double dev = (overlap - alpha(a, c) * id).norm();
            if (dev > tol) {
                std::ostringstream msg;
                msg << "kl_recovery: Kraus pair (" << a << "," << c << ") violates the overlap condition by " << dev;
                throw KLViolated(msg.str());
            }
        }
    }

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(0.5 * (alpha + alpha.adjoint()));
    const auto &lambda = eig.eigenvalues();
    const ComplexMatrix &u = eig.eigenvectors();

    RecoveryMap out;
    out.code_projector = code.projector();
    // Orthonormal columns spanning the corrected error subspaces F_m(code).
    ComplexMatrix corrected(total, 0);
    for (Index c = 0; c < m; ++c) {
        if (lambda(c) <= kOverlapRankTol) {
            continue;
        }
        ComplexMatrix fb = ComplexMatrix::Zero(total, k);
        for (Index a = 0; a < m; ++a) {
            fb += u(a, c) * eb[static_cast<size_t>(a)];
        }
        fb /= std::sqrt(lambda(c));
        out.kraus.push_back(b * fb.adjoint());
        corrected.conservativeResize(Eigen::NoChange, corrected.cols() + k);
        corrected.rightCols(k) = fb;
    }

    // Whatever lies outside the corrected subspaces is sent to the first code state.
    if (corrected.cols() < total) {
        const ComplexMatrix outside =
            corrected.cols() == 0 ? ComplexMatrix::Identity(total, total) : orthogonal_complement(corrected);
        const StateVector anchor = b.col(0);
        for (Index t = 0; t < outside.cols(); ++t) {
            out.kraus.push_back(anchor * outside.col(t).adjoint());
        }
    }
    return out;
}

FidelityStats roundtrip_fidelity(const CodeSubspace &code, const KrausChannel &ch, const RecoveryMap &rec,
                                 size_t samples, std::uint64_t seed) {
    FidelityStats out;
    out.samples = samples;
    if (samples == 0) {
        return out;
    }
    double sum = 0.0;
    out.worst = std::numeric_limits<double>::infinity();
    for (size_t s = 0; s < samples; ++s) {
        const StateVector v = code.basis() * random_pure_state(code.dim(), split_seed(seed, s));
        // <v| R_m E_k |v> summed in modulus squared is <v| (R o E)(|v><v|) |v>.
        std::vector<StateVector> errored;
        errored.reserve(ch.kraus().size());
        for (const auto &e : ch.kraus()) {
            errored.push_back(e * v);
        }
        double fid = 0.0;
        for (const auto &r : rec.kraus) {
            const StateVector back = r.adjoint() * v;
            for (const auto &w : errored) {
                fid += std::norm(back.dot(w));
            }
        }
        out.worst = std::min(out.worst, fid);
        sum += fid;
    }
    out.mean = sum / static_cast<double>(samples);
    return out;
}

}  // namespace qmask
