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

#ifndef DECGAME_FORMAT_HPP_
#define DECGAME_FORMAT_HPP_

#include <cstddef>
#include <span>
#include <string>

namespace decgame {

// 17 significant digits, round-trip exact.
std::string format_double(double x);
// As format_double for finite x; non-finite values become the JSON strings
// "inf", "-inf" or "nan".
std::string json_number(double x);
std::string json_array(std::span<const double> xs);
std::string json_array(std::span<const std::size_t> xs);
std::string json_string(const std::string& s);

}  // namespace decgame

#endif  // DECGAME_FORMAT_HPP_
