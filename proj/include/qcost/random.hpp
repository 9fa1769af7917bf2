// Copyright 2026 The qcost Authors
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

// Counter-based pseudo-random streams. Stream (seed, domain, index) is a pure
// function of its key, so sample i never depends on samples 0..i-1.
// Reproducibility is promised per build, not across implementations.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace qcost {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Domain tags keep independent uses of one seed apart.
enum class RngDomain : std::uint64_t {
  kHaarPure = 1,
  kGinibre = 2,
  kUnitary = 3,
  kOptimizerStart = 4,
  kCampaign = 5,
  kTest = 99,
};

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, RngDomain domain, std::uint64_t index)
      : state_(splitmix64(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(domain))) ^
                          splitmix64(index + 0x632be59bd9b4e019ULL))) {}

  std::uint64_t next_u64() {
    counter_ += 1;
    return splitmix64(state_ + counter_ * 0x9e3779b97f4a7c15ULL);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
  }

 private:
  std::uint64_t state_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace qcost
