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

#ifndef SYNPOST_MECHANISMS_HPP_
#define SYNPOST_MECHANISMS_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "synpost/workload.hpp"

namespace synpost {

struct PrivacyCharge {
  std::string label;
  double eps = 0.0;
  double delta = 0.0;
};

// A ledger of (eps, delta) charges; totals are componentwise sums (basic
// composition).
class PrivacyAccount {
 public:
  void charge(const std::string& label, double eps, double delta);
  const std::vector<PrivacyCharge>& charges() const { return charges_; }

 private:
  std::vector<PrivacyCharge> charges_;
};

std::pair<double, double> compose(const PrivacyAccount& account);

enum class MechanismKind { kLaplace, kGaussian };

struct MechanismSpec {
  MechanismKind kind = MechanismKind::kGaussian;
  double eps_post = 1.0;
  double delta_post = 0.0;  // 0 for laplace, in (0,1) for gaussian
  double scale = 0.0;       // b or sigma
  std::uint64_t seed = 0;

  void validate() const;
};

double laplace_scale(double delta1, double eps);

// Adds i.i.d. Laplace(0, delta1/eps) noise per coordinate.
AnswerVector laplace_noise(const AnswerVector& exact, double delta1, double eps,
                           std::uint64_t seed);

// The Gaussian-mechanism privacy curve: the smallest delta for which noise of
// the given sigma is (eps, delta)-DP at L2 sensitivity delta2. Strictly
// decreasing in sigma.
double gaussian_mechanism_delta(double eps, double delta2, double sigma);

// The smallest sigma making the Gaussian mechanism (eps, delta)-DP, found by
// exponential bracketing plus bisection to relative tolerance 1e-12.
double calibrate_gaussian_sigma(double delta2, double eps, double delta);

// Adds i.i.d. N(0, sigma^2) noise per coordinate.
AnswerVector gaussian_noise(const AnswerVector& exact, double sigma, std::uint64_t seed);

}  // namespace synpost

#endif  // SYNPOST_MECHANISMS_HPP_
