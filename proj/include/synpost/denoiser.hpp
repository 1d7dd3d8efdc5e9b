//
// Copyright 2026 The synpost Authors
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
//

#ifndef SYNPOST_DENOISER_HPP_
#define SYNPOST_DENOISER_HPP_

#include <string>
#include <vector>

#include "synpost/workload.hpp"

namespace synpost {

enum class DenoiseMode { kL1, kL2 };

struct DenoiseOptions {
  std::size_t max_iters = 20000;
  double tol = 1e-10;        // stop when a full pass improves less than this
  double initial_step = 1.0; // l2 line-search starting step
  double l1_step_c = 0.5;    // l1 subgradient step c/sqrt(t)
  double p_floor = 1e-12;    // interior margin of the simplex
};

struct DenoiseResult {
  std::vector<double> p_star;  // strictly positive, sums to 1
  AnswerVector a_star;         // Q * p_star, tag = denoised
  double objective_value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::string warning;  // set when the iteration cap was reached
};

// Projects noisy answers onto the set of answers achievable by a distribution
// over the synthetic support: minimizes ||Qp - a||_1 (l1, Laplace) or
// (1/2)||Qp - a||_2^2 (l2, Gaussian) over the simplex interior by
// multiplicative (entropic mirror descent) updates from the uniform vector.
DenoiseResult denoise(const QueryMatrix& Q, const AnswerVector& noisy, DenoiseMode mode,
                      const DenoiseOptions& opts = {});

}  // namespace synpost

#endif  // SYNPOST_DENOISER_HPP_
