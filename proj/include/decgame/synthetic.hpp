// Copyright 2026 The decgame Authors
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

#ifndef DECGAME_SYNTHETIC_HPP_
#define DECGAME_SYNTHETIC_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "decgame/prob_vector.hpp"

namespace decgame {

// Portable uniform draws: the raw 64-bit engine output is specified by the
// standard, and the conversion to [0, 1) is done here.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}

  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Uniform integer in [0, n).
  std::size_t below(std::size_t n) {
    return static_cast<std::size_t>(next() * static_cast<double>(n));
  }
  double exponential();

 private:
  std::mt19937_64 engine_;
};

// Flat Dirichlet draw in vocabulary order.
std::vector<double> random_simplex(std::size_t d, UniformSource& rng);

// Zipf(s) over d tokens with ranks randomly assigned to vocabulary ids.
RawDist zipf_dist(double s, std::size_t d, UniformSource& rng);

}  // namespace decgame

#endif  // DECGAME_SYNTHETIC_HPP_
