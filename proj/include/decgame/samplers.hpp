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

#ifndef DECGAME_SAMPLERS_HPP_
#define DECGAME_SAMPLERS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "decgame/error.hpp"
#include "decgame/prob_vector.hpp"

namespace decgame {

enum class Method {
  kGame,
  kGreedy,
  kPure,
  kTopK,
  kNucleus,
  kTemperature,
  kTypical,
  kEta,
};

std::string_view to_string(Method method);
Method parse_method(std::string_view text);

struct SamplerConfig {
  Method method = Method::kGame;
  double epsilon = 0.1;  // game, in (0, 1]
  double tau = 1.0;      // game and temperature, > 0
  std::size_t top_k = 50;
  double top_p = 0.9;    // nucleus and typical, in (0, 1]
  double eta = 3e-4;     // in (0, 1)
  bool paper_literal_tau_branch = false;

  // Throws BadConfig.
  void validate() const;
  std::string tag() const;
};

struct TruncationResult {
  std::vector<std::size_t> support_vocab_ids;
  std::vector<double> masses;
  std::string strategy_tag;

  std::size_t support_size() const { return masses.size(); }
};

// Counter-based substream: draws for record n depend only on (seed, n).
struct RngState {
  std::uint64_t seed = 0;
  std::uint64_t stream_index = 0;

  // Uniform in [0, 1) with 53 random bits.
  double uniform() const;
};

std::uint64_t splitmix64(std::uint64_t& state);

TruncationResult truncate(const SamplerConfig& cfg, const ProbVector& p);
// Same result as truncate(cfg, ingest(raw)) without sorting the whole
// vocabulary when the method only needs a short head.
TruncationResult truncate(const SamplerConfig& cfg, const RawDist& raw);

std::size_t sample_token(const TruncationResult& tr, const RngState& rng);

struct StepOutput {
  std::size_t index = 0;
  std::optional<std::string> id;
  std::optional<std::size_t> token;
  std::size_t support_size = 0;
  std::optional<TruncationResult> truncation;  // kept on request
  std::optional<Errc> error_code;
  std::string error;
};

struct GenerateOptions {
  std::uint64_t seed = 0;
  bool strict = false;
  bool keep_truncation = false;
};

// Pulls records until the source returns nothing; hands each output to the
// sink in input order. In strict mode the first bad record throws.
void generate_stream(const std::function<std::optional<RawDist>()>& source,
                     const std::function<void(StepOutput&&)>& sink,
                     const SamplerConfig& cfg, const GenerateOptions& options);

std::vector<StepOutput> generate(std::span<const RawDist> stream,
                                 const SamplerConfig& cfg,
                                 const GenerateOptions& options);

}  // namespace decgame

#endif  // DECGAME_SAMPLERS_HPP_
