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
#ifndef COMMITTEE_RL_ENVS_GRID_H_
#define COMMITTEE_RL_ENVS_GRID_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "envs/environment.h"

namespace crl::envs {

enum class GridKind { kDoorKey, kMultiRoom, kKeyCorridor, kObstructedMaze };

std::string_view GridKindName(GridKind kind);
std::optional<GridKind> ParseGridKind(std::string_view name);

// Fully observable, reduced-size puzzle grids in the style of the MiniGrid
// suite. One layout per seed.
//   DoorKey:        key -> unlock door -> reach the goal. 'size' is the side
//                   length including the outer wall (>= 5).
//   MultiRoom:      'rooms' rooms of 'room_size' interior side chained by
//                   closed doors; reach the goal in the last room.
//   KeyCorridor:    corridor with 'rooms' rooms on each side; one is locked
//                   and holds the target ball, the key lies in another room.
//   ObstructedMaze: two rooms of 'room_size' side; the key is inside a box,
//                   a ball blocks the locked door, the target ball is beyond.
struct GridConfig {
  GridKind kind = GridKind::kDoorKey;
  std::size_t size = 6;
  std::size_t rooms = 2;
  std::size_t room_size = 3;
  std::size_t max_steps = 0;  // 0 selects the per-kind default
  std::uint64_t seed = 0;

  void Validate() const;
  std::size_t EffectiveMaxSteps() const;
};

enum GridAction : std::size_t {
  kTurnLeft = 0,
  kTurnRight = 1,
  kForward = 2,
  kPickup = 3,
  kDrop = 4,
  kToggle = 5,
  kDone = 6,
};
inline constexpr std::size_t kGridActionCount = 7;

// Success reward 1 - 0.9 * step_count / max_steps.
double GridSuccessReward(std::size_t step_count, std::size_t max_steps);

enum class CellType : std::uint8_t { kFloor, kWall, kGoal, kDoor };

struct GridObject {
  enum class Type : std::uint8_t { kKey, kBall, kBox };
  Type type = Type::kBall;
  int color = 0;
  int contains = -1;  // boxes: index of the object hidden inside
};

struct GridDoor {
  std::size_t cell = 0;
  int color = 0;
  bool locked = false;
};

struct GridLayout {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<CellType> cells;
  std::vector<GridDoor> doors;
  std::vector<GridObject> objects;
  std::vector<std::size_t> object_start;  // cell index, or kHidden
  std::size_t agent_start = 0;
  // Mission: reach a goal cell, or pick up this object.
  std::optional<std::size_t> target_object;

  std::size_t carried_slot() const { return width * height; }
  std::size_t hidden_slot() const { return width * height + 1; }
  std::size_t gone_slot() const { return width * height + 2; }
};

// Full dynamic state of a grid episode.
struct GridState {
  std::size_t agent_cell = 0;
  std::uint8_t direction = 0;               // 0 east, 1 south, 2 west, 3 north
  std::vector<std::size_t> object_cells;    // cell, or a layout slot marker
  std::vector<std::uint8_t> door_states;    // 0 open, 1 closed, 2 locked

  friend bool operator==(const GridState&, const GridState&) = default;
};

GridLayout GenerateGridLayout(const GridConfig& config);

class GridEnv : public Environment {
 public:
  explicit GridEnv(const GridConfig& config);
  // Wraps a hand-built layout (tests, degenerate puzzles).
  GridEnv(const GridConfig& config, GridLayout layout);

  std::string name() const override;
  std::size_t state_count() const override { return keys_.size(); }
  std::size_t action_count() const override { return kGridActionCount; }
  std::size_t Reset(Rng& rng) override;
  EnvStep Step(std::size_t action) override;
  std::size_t steps_taken() const override { return steps_; }
  bool episode_running() const override { return running_; }
  std::string Describe() const override;
  std::string Render() const override;

  const GridConfig& config() const { return config_; }
  const GridLayout& layout() const { return layout_; }
  const GridState& state() const { return state_; }
  std::size_t max_steps() const { return max_steps_; }

  // Dense index of a reachable state; throws a domain error otherwise.
  std::size_t EncodeState(const GridState& state) const;
  GridState DecodeState(std::size_t index) const;

  struct Outcome {
    GridState next;
    bool success = false;
  };
  // Deterministic dynamics, independent of episode bookkeeping.
  Outcome Apply(const GridState& state, std::size_t action) const;

  GridState StartState(std::uint8_t direction) const;

 private:
  std::uint64_t Key(const GridState& state) const;
  GridState Unkey(std::uint64_t key) const;
  void EnumerateStates();
  std::optional<std::size_t> ObjectAt(const GridState& state,
                                      std::size_t cell) const;
  std::string RenderState(const GridState& state) const;

  GridConfig config_;
  GridLayout layout_;
  std::size_t max_steps_ = 0;
  std::vector<std::uint64_t> keys_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::vector<bool> success_state_;
  GridState state_;
  std::size_t steps_ = 0;
  bool running_ = false;
};

}  // namespace crl::envs

#endif  // COMMITTEE_RL_ENVS_GRID_H_
