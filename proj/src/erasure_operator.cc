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

#include "qmask/erasure_operator.h"

#include "qmask/errors.h"

namespace qmask {

ComplexMatrix embed_local(const Dims &dims, int j, const ComplexMatrix &local) {
    dims.check_index(j);
    const Index d = dims[j];
    if (local.rows() != d || local.cols() != d) {
        throw DimensionMismatch("erasure operator: local factor must be " + std::to_string(d) + "x" +
                                std::to_string(d));
    }
    const Index total = dims.total();
    const Index rest = total / d;
    const auto perm = front_permutation(dims, j);
    // (T^dagger X T)(a, b) = X(perm a, perm b) with X = local (x) I_rest.
    ComplexMatrix out = ComplexMatrix::Zero(total, total);
    for (Index a = 0; a < total; ++a) {
        const Index pa = perm[static_cast<size_t>(a)];
        for (Index b = 0; b < total; ++b) {
            const Index pb = perm[static_cast<size_t>(b)];
            if (pa % rest == pb % rest) {
                out(a, b) = local(pa / rest, pb / rest);
            }
        }
    }
    return out;
}

ErasureOperator::ErasureOperator(Dims dims, int j, ComplexMatrix local)
    : dims_(std::move(dims)), j_(j), local_(std::move(local)), global_(embed_local(dims_, j_, local_)) {
}

}  // namespace qmask
