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

#ifndef COMMITTEE_RL_COMMON_ERROR_H_
#define COMMITTEE_RL_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace crl {

// Mirrors crl_status in the C API; values must stay in sync.
enum class ErrorCode {
  kDomain = 1,
  kConfig = 2,
  kCapacity = 3,
  kUsage = 4,
  kIo = 5,
  kParse = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void ThrowDomain(const std::string& message) {
  throw Error(ErrorCode::kDomain, message);
}
[[noreturn]] inline void ThrowConfig(const std::string& message) {
  throw Error(ErrorCode::kConfig, message);
}

}  // namespace crl

#endif  // COMMITTEE_RL_COMMON_ERROR_H_
