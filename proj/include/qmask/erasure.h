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

#ifndef QMASK_ERASURE_H
#define QMASK_ERASURE_H

#include <cstdint>
#include <optional>
#include <vector>

#include "qmask/erasure_operator.h"
#include "qmask/tensor.h"
#include "qmask/verifier.h"

namespace qmask {

constexpr double kCompletenessTol = 1e-10;

/// A channel rho -> sum_k E_k rho E_k^dagger.
class KrausChannel {
   public:
    /// Throws std::invalid_argument if ||sum E^dagger E - I||_F > kCompletenessTol.
    KrausChannel(Dims dims, std::vector<ComplexMatrix> kraus, std::optional<int> erasure_index = std::nullopt);

    static KrausChannel identity(const Dims &dims);

    const Dims &dims() const {
        return dims_;
    }
    const std::vector<ComplexMatrix> &kraus() const {
        return kraus_;
    }
    std::optional<int> erasure_index() const {
        return erasure_index_;
    }

    ComplexMatrix apply(const ComplexMatrix &rho) const;
    double completeness_defect() const;

   private:
    Dims dims_;
    std::vector<ComplexMatrix> kraus_;
    std::optional<int> erasure_index_;
};

/// Kraus operators {T_j^dagger (|0><k| (x) I) T_j}: resets subsystem j to |0>.
KrausChannel reset_channel(const Dims &dims, int j);
/// Kraus operators {d_j^{-1/2} T_j^dagger (|i><k| (x) I) T_j}: replaces subsystem j by I/d_j.
KrausChannel depolarize_channel(const Dims &dims, int j);

/// True iff every Kraus operator equals T_j^dagger (A (x) I) T_j for some A, within 1e-10.
bool is_one_erasure(const KrausChannel &ch, int j);

/// Recovery channel aimed at a code; Kraus completeness holds on the full space.
struct RecoveryMap {
    std::vector<ComplexMatrix> kraus;
    ComplexMatrix code_projector;

    /// Single Kraus operator I: "no recovery".
    static RecoveryMap identity(Index total);

    ComplexMatrix apply(const ComplexMatrix &rho) const;
    double completeness_defect() const;
};

/// Standard recovery synthesis from the Knill-Laflamme overlap matrix.
///
/// Throws KLViolated when the code fails kl_check for the channel's erasure
/// index, or when B^dagger E_k^dagger E_l B is not proportional to I for the
/// channel's own Kraus operators.
RecoveryMap kl_recovery(const CodeSubspace &code, const KrausChannel &ch, double tol = kDefaultTol);

struct FidelityStats {
    double worst = 1.0;
    double mean = 1.0;
    size_t samples = 0;
};

/// Encodes random code states, applies ch then rec, and reports <v|sigma|v>.
FidelityStats roundtrip_fidelity(const CodeSubspace &code, const KrausChannel &ch, const RecoveryMap &rec,
                                 size_t samples, std::uint64_t seed);

}  // namespace qmask

#endif
