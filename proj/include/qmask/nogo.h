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

#ifndef QMASK_NOGO_H
#define QMASK_NOGO_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmask/tensor.h"

namespace qmask {

/// Does C^K admit a universal masker into the space with these dims?
struct MaskProblem {
    int input_dim = 0;
    Dims dims;

    /// Throws DimensionMismatch unless 1 <= K <= prod(dims).
    void validate() const;
};

/// Masking defect
///
///   D(S) = sum_j [ sum_{i != k} ||M_j(i,k)||_F^2 + sum_i ||M_j(i,i) - mean_j||_F^2 ],
///   M_j(i,k) = tr_{not j}[S|i><k|S^dagger],  mean_j = (1/K) sum_i M_j(i,i).
///
/// D(S) = 0 exactly when S passes universal_masking_check. Throws NotIsometric if
/// ||S^dagger S - I||_F > 1e-8.
double masking_defect(const ComplexMatrix &s, const MaskProblem &problem);

struct DefectEvaluation {
    double value = 0.0;
    /// Euclidean gradient for the real inner product Re tr(A^dagger B): the real part holds
    /// dD/dRe(S_ab), the imaginary part dD/dIm(S_ab).
    ComplexMatrix gradient;
};

/// D and its gradient for any N x K matrix; no isometry check.
DefectEvaluation defect_with_gradient(const ComplexMatrix &s, const MaskProblem &problem);

struct RestartSummary {
    std::uint64_t seed = 0;
    double initial_defect = 0.0;
    double final_defect = 0.0;
    int iterations = 0;
    /// "defect" (D below threshold), "gradient" (stationary), "max_iters" or "stalled".
    std::string termination;
};

struct SearchResult {
    MaskProblem problem;
    double best_defect = 0.0;
    ComplexMatrix best_isometry;
    int best_restart = 0;
    std::vector<RestartSummary> restarts;
    std::uint64_t seed = 0;
    int max_iters = 0;
};

constexpr double kDefectStop = 1e-24;
constexpr double kGradientStop = 1e-10;

/// Multi-restart Riemannian conjugate-gradient descent of D over the isometries C^K -> C^N.
///
/// Restart r starts from random_isometry(N, K, split_seed(seed, r)); each step is retracted
/// onto the manifold by the polar factor. Deterministic for fixed arguments.
SearchResult optimize_defect(const MaskProblem &problem, int restarts, int max_iters, std::uint64_t seed);

struct ProbeResult {
    SearchResult search;
    /// Set when the best defect fell below 1e-10 and the isometry was cross-checked.
    std::optional<bool> cross_check_passed;
};

/// optimize_defect on K = 6 into (C^6)^{(x)3}. Records the landscape only.
ProbeResult probe_open_question(int restarts, int max_iters, std::uint64_t seed);

}  // namespace qmask

#endif
