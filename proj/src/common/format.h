// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COMMITTEE_RL_COMMON_FORMAT_H_
#define COMMITTEE_RL_COMMON_FORMAT_H_

#include <string>
#include <string_view>

namespace crl {

// Shortest decimal form that parses back to the identical double. Every
// number printed or written to CSV goes through here.
std::string FormatDouble(double value);

// Strict parse of a whole token; throws Error(kParse) on junk.
double ParseDouble(std::string_view text);

}  // namespace crl

#endif  // COMMITTEE_RL_COMMON_FORMAT_H_
