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

#include "synpost/mechanisms.hpp"

#include <cmath>
#include <stdexcept>

#include "synpost/rng.hpp"

namespace synpost {

void PrivacyAccount::charge(const std::string& label, double eps, double delta) {
  if (!(eps >= 0.0)) {
    throw std::invalid_argument("PrivacyAccount: eps must be >= 0");
  }
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("PrivacyAccount: delta must lie in [0, 1]");
  }
  charges_.push_back({label, eps, delta});
}

std::pair<double, double> compose(const PrivacyAccount& account) {
  double eps = 0.0, delta = 0.0;
  for (const auto& c : account.charges()) {
    eps += c.eps;
    delta += c.delta;
  }
  return {eps, delta};
}

void MechanismSpec::validate() const {
  if (!(eps_post > 0.0)) {
    throw std::invalid_argument("MechanismSpec: eps_post must be positive");
  }
  if (kind == MechanismKind::kLaplace) {
    if (delta_post != 0.0) {
      throw std::invalid_argument("MechanismSpec: laplace requires delta_post = 0");
    }
  } else {
    if (!(delta_post > 0.0 && delta_post < 1.0)) {
      throw std::invalid_argument("MechanismSpec: gaussian requires delta_post in (0, 1)");
    }
  }
  if (!(scale > 0.0)) {
    throw std::invalid_argument("MechanismSpec: noise scale must be positive");
  }
}

double laplace_scale(double delta1, double eps) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument("laplace_noise: eps must be positive");
  }
  if (!(delta1 > 0.0)) {
    throw std::invalid_argument("laplace_noise: sensitivity must be positive");
  }
  return delta1 / eps;
}

AnswerVector laplace_noise(const AnswerVector& exact, double delta1, double eps,
                           std::uint64_t seed) {
  const double b = laplace_scale(delta1, eps);
  Rng rng(seed);
  AnswerVector out;
  out.tag = AnswerTag::kNoisy;
  out.values.reserve(exact.size());
  for (double v : exact.values) {
    out.values.push_back(v + rng.laplace(b));
  }
  return out;
}

double gaussian_mechanism_delta(double eps, double delta2, double sigma) {
  const double a = delta2 / (2.0 * sigma);
  const double b = eps * sigma / delta2;
  return standard_normal_cdf(a - b) - std::exp(eps) * standard_normal_cdf(-a - b);
}

double calibrate_gaussian_sigma(double delta2, double eps, double delta) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument("calibrate_gaussian_sigma: eps must be positive");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("calibrate_gaussian_sigma: delta must lie in (0, 1)");
  }
  if (!(delta2 > 0.0)) {
    throw std::invalid_argument("calibrate_gaussian_sigma: sensitivity must be positive");
  }

  constexpr int kMaxIters = 500;
  // Bracket [lo, hi] with delta(lo) > delta >= delta(hi); the privacy curve
  // is strictly decreasing in sigma and tends to 1 as sigma -> 0.
  double hi = delta2;
  int iters = 0;
  while (gaussian_mechanism_delta(eps, delta2, hi) > delta) {
    hi *= 2.0;
    if (++iters > kMaxIters) {
      throw std::runtime_error("calibrate_gaussian_sigma: bracketing did not converge");
    }
  }
  double lo = hi / 2.0;
  while (gaussian_mechanism_delta(eps, delta2, lo) <= delta) {
    hi = lo;
    lo /= 2.0;
    if (++iters > kMaxIters) {
      throw std::runtime_error("calibrate_gaussian_sigma: bracketing did not converge");
    }
  }

  constexpr double kRelTol = 1e-12;
  iters = 0;
  while (hi - lo > kRelTol * lo) {
    const double mid = 0.5 * (lo + hi);
    if (gaussian_mechanism_delta(eps, delta2, mid) > delta) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (++iters > kMaxIters) {
      throw std::runtime_error("calibrate_gaussian_sigma: bisection did not converge");
    }
  }
  return hi;
}

AnswerVector gaussian_noise(const AnswerVector& exact, double sigma, std::uint64_t seed) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("gaussian_noise: sigma must be positive");
  }
  Rng rng(seed);
  AnswerVector out;
  out.tag = AnswerTag::kNoisy;
  out.values.reserve(exact.size());
  for (double v : exact.values) {
    out.values.push_back(v + rng.gaussian(sigma));
  }
  return out;
}

}  // namespace synpost
