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

#include "decgame/synthetic.hpp"

#include <cmath>
#include <numeric>
#include <utility>

namespace decgame {

double UniformSource::exponential() { return -std::log1p(-next()); }

std::vector<double> random_simplex(std::size_t d, UniformSource& rng) {
  std::vector<double> out(d);
  double sum = 0.0;
  for (double& x : out) {
    x = rng.exponential() + 1e-300;
    sum += x;
  }
  for (double& x : out) x /= sum;
  return out;
}

RawDist zipf_dist(double s, std::size_t d, UniformSource& rng) {
  std::vector<std::size_t> ids(d);
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  for (std::size_t i = d; i > 1; --i) std::swap(ids[i - 1], ids[rng.below(i)]);
  RawDist raw;
  raw.values.resize(d);
  double sum = 0.0;
  for (std::size_t r = 0; r < d; ++r) {
    const double w = std::pow(static_cast<double>(r + 1), -s);
    raw.values[ids[r]] = w;
    sum += w;
  }
  for (double& x : raw.values) x /= sum;
  return raw;
}

}  // namespace decgame
