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

#ifndef DECGAME_CLI_HPP_
#define DECGAME_CLI_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "decgame/error.hpp"
#include "decgame/prob_vector.hpp"

namespace decgame {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitGuard = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitData = 65;

int exit_code_for(Errc code);

// Parses one stream record: {"id": ..., "probs": [...]} or
// {"id": ..., "logits": [...]}. Array entries may be the strings "inf",
// "-inf" or "nan". The id is kept as its JSON text. Throws ParseError.
RawDist parse_stream_record(const std::string& line);

// args excludes the program name. Seed defaults come from DECGAME_SEED.
int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err);

}  // namespace decgame

#endif  // DECGAME_CLI_HPP_
