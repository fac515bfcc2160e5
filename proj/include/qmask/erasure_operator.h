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

#ifndef QMASK_ERASURE_OPERATOR_H
#define QMASK_ERASURE_OPERATOR_H

#include "qmask/tensor.h"

namespace qmask {

/// An operator acting as A on subsystem j and as the identity elsewhere:
/// T_j^dagger (A (x) I_rest) T_j.
class ErasureOperator {
   public:
    ErasureOperator(Dims dims, int j, ComplexMatrix local);

    const Dims &dims() const {
        return dims_;
    }
    int subsystem() const {
        return j_;
    }
    const ComplexMatrix &local() const {
        return local_;
    }
    /// Dense operator on the full space.
    const ComplexMatrix &global() const {
        return global_;
    }

   private:
    Dims dims_;
    int j_;
    ComplexMatrix local_;
    ComplexMatrix global_;
};

/// Dense T_j^dagger (A (x) I_rest) T_j.
ComplexMatrix embed_local(const Dims &dims, int j, const ComplexMatrix &local);

}  // namespace qmask

#endif
