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

#ifndef SYNPOST_RNG_HPP_
#define SYNPOST_RNG_HPP_

#include <cstdint>
#include <random>
#include <vector>

namespace synpost {

// Seeded generator with explicit output mappings. std::mt19937_64 is fully
// specified by the standard and the mappings below avoid the
// implementation-defined std::*_distribution adaptors, so every draw is
// bit-reproducible across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next() >> 11) * kInv53; }

  // Uniform in (0, 1); safe as an inverse-CDF argument.
  double uniform_open() {
    return (static_cast<double>(next() >> 11) + 0.5) * kInv53;
  }

  // Unbiased integer in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  double laplace(double scale) {
    const double u = uniform_open();
    return u < 0.5 ? scale * std::log(2.0 * u) : -scale * std::log(2.0 * (1.0 - u));
  }

  double gaussian(double sigma);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

 private:
  static constexpr double kInv53 = 1.0 / 9007199254740992.0;  // 2^-53
  std::mt19937_64 gen_;
};

// Standard normal CDF via the complementary error function.
double standard_normal_cdf(double x);

// Inverse standard normal CDF (Wichura's PPND16 rational approximation,
// accurate to ~1e-15). Arguments must lie in (0, 1).
double inv_normal_cdf(double p);

}  // namespace synpost

#endif  // SYNPOST_RNG_HPP_
