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

#ifndef COMMITTEE_RL_COMMON_RANDOM_H_
#define COMMITTEE_RL_COMMON_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>

namespace crl {

using Rng = std::mt19937_64;

// Independent random streams of one run. Adding a new consumer never shifts
// the draws seen by the existing ones.
enum class StreamRole : std::uint64_t {
  kEnvLayout = 1,
  kEnvDynamics = 2,
  kAgentInit = 3,
  kActionSampling = 4,
  kUpdateMask = 5,
  kBootstrapHead = 6,
  kTieBreak = 7,
};

// splitmix64 finalizer.
constexpr std::uint64_t MixBits(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t DeriveSeed(std::uint64_t seed, StreamRole role,
                                   std::uint64_t index = 0) {
  return MixBits(MixBits(MixBits(seed) ^ static_cast<std::uint64_t>(role)) ^
                 index);
}

inline Rng MakeStream(std::uint64_t seed, StreamRole role,
                      std::uint64_t index = 0) {
  return Rng(DeriveSeed(seed, role, index));
}

inline std::size_t UniformIndex(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline double Uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace crl

#endif  // COMMITTEE_RL_COMMON_RANDOM_H_
