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
#include "envs/grid.h"

#include <algorithm>
#include <deque>
#include <sstream>
#include <string>
#include <utility>

#include "common/error.h"
#include "common/format.h"

namespace crl::envs {

std::string_view GridKindName(GridKind kind) {
  switch (kind) {
    case GridKind::kDoorKey: return "doorkey";
    case GridKind::kMultiRoom: return "multiroom";
    case GridKind::kKeyCorridor: return "keycorridor";
    case GridKind::kObstructedMaze: return "obstructedmaze";
  }
  return "unknown";
}

std::optional<GridKind> ParseGridKind(std::string_view name) {
  if (name == "doorkey") return GridKind::kDoorKey;
  if (name == "multiroom") return GridKind::kMultiRoom;
  if (name == "keycorridor") return GridKind::kKeyCorridor;
  if (name == "obstructedmaze") return GridKind::kObstructedMaze;
  return std::nullopt;
}

void GridConfig::Validate() const {
  switch (kind) {
    case GridKind::kDoorKey:
      if (size < 5 || size > 32) ThrowConfig("doorkey size must be in [5, 32]");
      break;
    case GridKind::kMultiRoom:
      if (rooms < 2 || rooms > 8) ThrowConfig("multiroom rooms must be in [2, 8]");
      if (room_size < 2 || room_size > 8) {
        ThrowConfig("multiroom room_size must be in [2, 8]");
      }
      break;
    case GridKind::kKeyCorridor:
      if (rooms < 1 || rooms > 4) ThrowConfig("keycorridor rooms must be in [1, 4]");
      if (room_size < 2 || room_size > 6) {
        ThrowConfig("keycorridor room_size must be in [2, 6]");
      }
      break;
    case GridKind::kObstructedMaze:
      if (room_size < 3 || room_size > 6) {
        ThrowConfig("obstructedmaze room_size must be in [3, 6]");
      }
      break;
  }
}

std::size_t GridConfig::EffectiveMaxSteps() const {
  if (max_steps > 0) return max_steps;
  switch (kind) {
    case GridKind::kDoorKey: return 10 * size * size;
    case GridKind::kMultiRoom: return 20 * rooms * room_size;
    case GridKind::kKeyCorridor: return 30 * room_size * room_size;
    case GridKind::kObstructedMaze: return 16 * room_size * room_size;
  }
  return 100;
}

double GridSuccessReward(std::size_t step_count, std::size_t max_steps) {
  return 1.0 - 0.9 * (static_cast<double>(step_count) /
                      static_cast<double>(max_steps));
}

namespace {

constexpr int kRed = 0;
constexpr int kGreen = 1;
constexpr int kBlue = 2;
constexpr int kPurple = 3;
constexpr int kYellow = 4;
constexpr int kColorCount = 6;
constexpr std::string_view kColorNames[kColorCount] = {
    "red", "green", "blue", "purple", "yellow", "grey"};

constexpr int kDx[4] = {1, 0, -1, 0};
constexpr int kDy[4] = {0, 1, 0, -1};

class LayoutBuilder {
 public:
  LayoutBuilder(std::size_t width, std::size_t height, Rng& rng) : rng_(rng) {
    layout_.width = width;
    layout_.height = height;
    layout_.cells.assign(width * height, CellType::kFloor);
    for (std::size_t x = 0; x < width; ++x) {
      SetWall(x, 0);
      SetWall(x, height - 1);
    }
    for (std::size_t y = 0; y < height; ++y) {
      SetWall(0, y);
      SetWall(width - 1, y);
    }
    taken_.assign(width * height, false);
  }

  std::size_t Cell(std::size_t x, std::size_t y) const {
    return y * layout_.width + x;
  }
  void SetWall(std::size_t x, std::size_t y) {
    layout_.cells[Cell(x, y)] = CellType::kWall;
  }
  void SetGoal(std::size_t cell) {
    layout_.cells[cell] = CellType::kGoal;
    taken_[cell] = true;
  }
  void AddDoor(std::size_t x, std::size_t y, int color, bool locked) {
    layout_.cells[Cell(x, y)] = CellType::kDoor;
    layout_.doors.push_back({Cell(x, y), color, locked});
  }
  std::size_t AddObject(GridObject::Type type, int color, std::size_t cell) {
    layout_.objects.push_back({type, color, -1});
    layout_.object_start.push_back(cell);
    if (cell < taken_.size()) taken_[cell] = true;
    return layout_.objects.size() - 1;
  }
  void HideInside(std::size_t box, std::size_t object) {
    layout_.objects[box].contains = static_cast<int>(object);
    layout_.object_start[object] = layout_.hidden_slot();
  }
  void SetAgent(std::size_t cell) {
    layout_.agent_start = cell;
    taken_[cell] = true;
  }
  void Reserve(std::size_t cell) { taken_[cell] = true; }

  // Uniform free floor cell in the inclusive rectangle.
  std::size_t FreeCell(std::size_t x0, std::size_t x1, std::size_t y0,
                       std::size_t y1) {
    std::vector<std::size_t> options;
    for (std::size_t y = y0; y <= y1; ++y) {
      for (std::size_t x = x0; x <= x1; ++x) {
        const std::size_t c = Cell(x, y);
        if (layout_.cells[c] == CellType::kFloor && !taken_[c]) {
          options.push_back(c);
        }
      }
    }
    if (options.empty()) ThrowConfig("grid layout has no free cell left");
    return options[UniformIndex(rng_, options.size())];
  }

  std::size_t Pick(std::size_t lo, std::size_t hi) {  // inclusive
    return lo + UniformIndex(rng_, hi - lo + 1);
  }

  GridLayout Take() { return std::move(layout_); }

 private:
  Rng& rng_;
  GridLayout layout_;
  std::vector<bool> taken_;
};

GridLayout DoorKeyLayout(const GridConfig& config, Rng& rng) {
  const std::size_t n = config.size;
  LayoutBuilder b(n, n, rng);
  const std::size_t split = b.Pick(2, n - 3);
  for (std::size_t y = 1; y + 1 < n; ++y) b.SetWall(split, y);
  b.AddDoor(split, b.Pick(1, n - 2), kYellow, /*locked=*/true);
  b.SetGoal(b.Cell(n - 2, n - 2));
  b.SetAgent(b.FreeCell(1, split - 1, 1, n - 2));
  b.AddObject(GridObject::Type::kKey, kYellow, b.FreeCell(1, split - 1, 1, n - 2));
  return b.Take();
}

GridLayout MultiRoomLayout(const GridConfig& config, Rng& rng) {
  const std::size_t s = config.room_size;
  const std::size_t rooms = config.rooms;
  LayoutBuilder b(rooms * (s + 1) + 1, s + 2, rng);
  for (std::size_t j = 1; j < rooms; ++j) {
    const std::size_t x = j * (s + 1);
    for (std::size_t y = 1; y <= s; ++y) b.SetWall(x, y);
    b.AddDoor(x, b.Pick(1, s), static_cast<int>(j % kColorCount), false);
  }
  const std::size_t last = (rooms - 1) * (s + 1) + 1;
  b.SetGoal(b.FreeCell(last, last + s - 1, 1, s));
  b.SetAgent(b.FreeCell(1, s, 1, s));
  return b.Take();
}

GridLayout KeyCorridorLayout(const GridConfig& config, Rng& rng) {
  const std::size_t s = config.room_size;
  const std::size_t r = config.rooms;
  const std::size_t width = r * (s + 1) + 1;
  const std::size_t corridor = s + 2;
  LayoutBuilder b(width, 2 * s + 5, rng);
  for (std::size_t x = 1; x + 1 < width; ++x) {
    b.SetWall(x, s + 1);
    b.SetWall(x, s + 3);
  }
  for (std::size_t j = 1; j < r; ++j) {
    for (std::size_t y = 1; y <= s; ++y) b.SetWall(j * (s + 1), y);
    for (std::size_t y = s + 4; y <= 2 * s + 3; ++y) b.SetWall(j * (s + 1), y);
  }
  // Rooms 0..r-1 above the corridor, r..2r-1 below.
  const std::size_t locked = b.Pick(0, 2 * r - 1);
  std::size_t key_room = b.Pick(0, 2 * r - 2);
  if (key_room >= locked) ++key_room;
  struct Bounds {
    std::size_t x0, x1, y0, y1;
  };
  std::vector<Bounds> bounds;
  for (std::size_t room = 0; room < 2 * r; ++room) {
    const std::size_t j = room % r;
    const bool top = room < r;
    const std::size_t x0 = j * (s + 1) + 1;
    const Bounds bd{x0, x0 + s - 1, top ? 1 : s + 4, top ? s : 2 * s + 3};
    bounds.push_back(bd);
    const std::size_t door_x = b.Pick(bd.x0, bd.x1);
    const bool is_locked = room == locked;
    b.AddDoor(door_x, top ? s + 1 : s + 3,
              is_locked ? kRed : static_cast<int>(1 + room % (kColorCount - 1)),
              is_locked);
  }
  const Bounds& lb = bounds[locked];
  const std::size_t target =
      b.AddObject(GridObject::Type::kBall, kPurple, b.FreeCell(lb.x0, lb.x1, lb.y0, lb.y1));
  const Bounds& kb = bounds[key_room];
  b.AddObject(GridObject::Type::kKey, kRed, b.FreeCell(kb.x0, kb.x1, kb.y0, kb.y1));
  b.SetAgent(b.FreeCell(1, width - 2, corridor, corridor));
  GridLayout layout = b.Take();
  layout.target_object = target;
  return layout;
}

GridLayout ObstructedMazeLayout(const GridConfig& config, Rng& rng) {
  const std::size_t s = config.room_size;
  LayoutBuilder b(2 * (s + 1) + 1, s + 2, rng);
  const std::size_t wall_x = s + 1;
  for (std::size_t y = 1; y <= s; ++y) b.SetWall(wall_x, y);
  const std::size_t door_y = b.Pick(1, s);
  b.AddDoor(wall_x, door_y, kBlue, /*locked=*/true);
  b.AddObject(GridObject::Type::kBall, kGreen, b.Cell(s, door_y));  // blocker
  b.SetAgent(b.FreeCell(1, s, 1, s));
  const std::size_t box =
      b.AddObject(GridObject::Type::kBox, kPurple, b.FreeCell(1, s, 1, s));
  const std::size_t key = b.AddObject(GridObject::Type::kKey, kBlue, 0);
  b.HideInside(box, key);
  const std::size_t target = b.AddObject(
      GridObject::Type::kBall, kRed, b.FreeCell(wall_x + 1, 2 * s + 1, 1, s));
  GridLayout layout = b.Take();
  layout.target_object = target;
  return layout;
}

}  // namespace

GridLayout GenerateGridLayout(const GridConfig& config) {
  config.Validate();
  Rng rng = MakeStream(config.seed, StreamRole::kEnvLayout);
  switch (config.kind) {
    case GridKind::kDoorKey: return DoorKeyLayout(config, rng);
    case GridKind::kMultiRoom: return MultiRoomLayout(config, rng);
    case GridKind::kKeyCorridor: return KeyCorridorLayout(config, rng);
    case GridKind::kObstructedMaze: return ObstructedMazeLayout(config, rng);
  }
  ThrowConfig("unknown grid kind");
}

GridEnv::GridEnv(const GridConfig& config)
    : GridEnv(config, GenerateGridLayout(config)) {}

GridEnv::GridEnv(const GridConfig& config, GridLayout layout)
    : config_(config),
      layout_(std::move(layout)),
      max_steps_(config.EffectiveMaxSteps()) {
  // Mixed-radix keys must fit in 64 bits.
  const long double cells = static_cast<long double>(layout_.width * layout_.height);
  long double radix = cells * 4.0L;
  for (std::size_t i = 0; i < layout_.objects.size(); ++i) radix *= cells + 3.0L;
  for (std::size_t i = 0; i < layout_.doors.size(); ++i) radix *= 3.0L;
  if (radix >= 1.8e19L) ThrowConfig("grid too large to index");
  EnumerateStates();
  state_ = StartState(0);
}

std::string GridEnv::name() const {
  std::string n(GridKindName(config_.kind));
  switch (config_.kind) {
    case GridKind::kDoorKey:
      return n + "-" + std::to_string(config_.size);
    case GridKind::kMultiRoom:
    case GridKind::kKeyCorridor:
      return n + "-r" + std::to_string(config_.rooms) + "s" +
             std::to_string(config_.room_size);
    case GridKind::kObstructedMaze:
      return n + "-s" + std::to_string(config_.room_size);
  }
  return n;
}

GridState GridEnv::StartState(std::uint8_t direction) const {
  GridState state;
  state.agent_cell = layout_.agent_start;
  state.direction = direction;
  state.object_cells = layout_.object_start;
  for (const auto& door : layout_.doors) {
    state.door_states.push_back(door.locked ? 2 : 1);
  }
  return state;
}

std::uint64_t GridEnv::Key(const GridState& state) const {
  const std::uint64_t cells = layout_.width * layout_.height;
  std::uint64_t key = state.agent_cell;
  key = key * 4 + state.direction;
  for (std::size_t c : state.object_cells) key = key * (cells + 3) + c;
  for (std::uint8_t d : state.door_states) key = key * 3 + d;
  return key;
}

GridState GridEnv::Unkey(std::uint64_t key) const {
  const std::uint64_t cells = layout_.width * layout_.height;
  GridState state;
  state.door_states.resize(layout_.doors.size());
  state.object_cells.resize(layout_.objects.size());
  for (std::size_t i = state.door_states.size(); i-- > 0;) {
    state.door_states[i] = static_cast<std::uint8_t>(key % 3);
    key /= 3;
  }
  for (std::size_t i = state.object_cells.size(); i-- > 0;) {
    state.object_cells[i] = static_cast<std::size_t>(key % (cells + 3));
    key /= cells + 3;
  }
  state.direction = static_cast<std::uint8_t>(key % 4);
  state.agent_cell = static_cast<std::size_t>(key / 4);
  return state;
}

std::size_t GridEnv::EncodeState(const GridState& state) const {
  if (state.object_cells.size() != layout_.objects.size() ||
      state.door_states.size() != layout_.doors.size()) {
    ThrowDomain("grid state does not match the layout");
  }
  const auto it = index_.find(Key(state));
  if (it == index_.end()) ThrowDomain("grid state is not reachable");
  return it->second;
}

GridState GridEnv::DecodeState(std::size_t index) const {
  if (index >= keys_.size()) ThrowDomain("grid state index out of range");
  return Unkey(keys_[index]);
}

std::optional<std::size_t> GridEnv::ObjectAt(const GridState& state,
                                             std::size_t cell) const {
  for (std::size_t i = 0; i < state.object_cells.size(); ++i) {
    if (state.object_cells[i] == cell) return i;
  }
  return std::nullopt;
}

GridEnv::Outcome GridEnv::Apply(const GridState& state,
                                std::size_t action) const {
  Outcome out{state, false};
  GridState& next = out.next;
  const std::size_t w = layout_.width;
  const std::size_t front = static_cast<std::size_t>(
      static_cast<long long>(state.agent_cell) + kDy[state.direction] * static_cast<long long>(w) +
      kDx[state.direction]);
  const auto carried = ObjectAt(state, layout_.carried_slot());
  auto door_at = [&](std::size_t cell) -> std::optional<std::size_t> {
    for (std::size_t d = 0; d < layout_.doors.size(); ++d) {
      if (layout_.doors[d].cell == cell) return d;
    }
    return std::nullopt;
  };
  switch (action) {
    case kTurnLeft: next.direction = (state.direction + 3) % 4; break;
    case kTurnRight: next.direction = (state.direction + 1) % 4; break;
    case kForward: {
      const CellType type = layout_.cells[front];
      bool passable = type == CellType::kFloor || type == CellType::kGoal;
      if (type == CellType::kDoor) passable = state.door_states[*door_at(front)] == 0;
      if (passable && !ObjectAt(state, front)) {
        next.agent_cell = front;
        if (type == CellType::kGoal && !layout_.target_object) out.success = true;
      }
      break;
    }
    case kPickup: {
      const auto obj = ObjectAt(state, front);
      if (!carried && obj && layout_.objects[*obj].type != GridObject::Type::kBox) {
        next.object_cells[*obj] = layout_.carried_slot();
        if (layout_.target_object == *obj) out.success = true;
      }
      break;
    }
    case kDrop:
      if (carried && layout_.cells[front] == CellType::kFloor &&
          !ObjectAt(state, front)) {
        next.object_cells[*carried] = front;
      }
      break;
    case kToggle: {
      if (const auto door = door_at(front)) {
        const std::uint8_t status = state.door_states[*door];
        if (status == 2) {
          if (carried && layout_.objects[*carried].type == GridObject::Type::kKey &&
              layout_.objects[*carried].color == layout_.doors[*door].color) {
            next.door_states[*door] = 0;
          }
        } else {
          next.door_states[*door] = status == 0 ? 1 : 0;
        }
      } else if (const auto obj = ObjectAt(state, front);
                 obj && layout_.objects[*obj].type == GridObject::Type::kBox) {
        next.object_cells[*obj] = layout_.gone_slot();
        const int inside = layout_.objects[*obj].contains;
        if (inside >= 0) next.object_cells[static_cast<std::size_t>(inside)] = front;
      }
      break;
    }
    case kDone: break;
    default: ThrowDomain("grid action out of range");
  }
  return out;
}

void GridEnv::EnumerateStates() {
  std::deque<GridState> frontier;
  auto visit = [&](const GridState& s, bool success) {
    const std::uint64_t key = Key(s);
    if (index_.contains(key)) return;
    index_.emplace(key, keys_.size());
    keys_.push_back(key);
    success_state_.push_back(success);
    if (!success) frontier.push_back(s);
  };
  for (std::uint8_t d = 0; d < 4; ++d) visit(StartState(d), false);
  while (!frontier.empty()) {
    const GridState s = std::move(frontier.front());
    frontier.pop_front();
    for (std::size_t a = 0; a < kGridActionCount; ++a) {
      const Outcome out = Apply(s, a);
      visit(out.next, out.success);
    }
  }
}

std::size_t GridEnv::Reset(Rng& rng) {
  state_ = StartState(static_cast<std::uint8_t>(UniformIndex(rng, 4)));
  steps_ = 0;
  running_ = true;
  return EncodeState(state_);
}

EnvStep GridEnv::Step(std::size_t action) {
  if (!running_) throw Error(ErrorCode::kUsage, "grid episode is over; call Reset");
  if (action >= kGridActionCount) ThrowDomain("grid action out of range");
  ++steps_;
  const Outcome out = Apply(state_, action);
  state_ = out.next;
  EnvStep result;
  result.observation = EncodeState(state_);
  if (out.success) {
    result.reward = GridSuccessReward(steps_, max_steps_);
    result.done = true;
  } else if (steps_ >= max_steps_) {
    result.truncated = true;
  }
  running_ = !(result.done || result.truncated);
  return result;
}

std::string GridEnv::RenderState(const GridState& state) const {
  std::string art;
  for (std::size_t y = 0; y < layout_.height; ++y) {
    for (std::size_t x = 0; x < layout_.width; ++x) {
      const std::size_t c = y * layout_.width + x;
      char ch = '.';
      switch (layout_.cells[c]) {
        case CellType::kWall: ch = '#'; break;
        case CellType::kGoal: ch = 'G'; break;
        case CellType::kFloor: ch = '.'; break;
        case CellType::kDoor:
          for (std::size_t d = 0; d < layout_.doors.size(); ++d) {
            if (layout_.doors[d].cell == c) {
              ch = "/DL"[state.door_states[d]];
            }
          }
          break;
      }
      if (const auto obj = ObjectAt(state, c)) {
        switch (layout_.objects[*obj].type) {
          case GridObject::Type::kKey: ch = 'k'; break;
          case GridObject::Type::kBall:
            ch = layout_.target_object == *obj ? 'T' : 'o';
            break;
          case GridObject::Type::kBox: ch = 'x'; break;
        }
      }
      if (c == state.agent_cell) ch = ">v<^"[state.direction];
      art.push_back(ch);
    }
    art.push_back('\n');
  }
  if (const auto carried = ObjectAt(state, layout_.carried_slot())) {
    const GridObject& o = layout_.objects[*carried];
    art += "carrying: " + std::string(kColorNames[o.color]) +
           (o.type == GridObject::Type::kKey ? " key" : " ball") + "\n";
  }
  return art;
}

std::string GridEnv::Render() const { return RenderState(state_); }

std::string GridEnv::Describe() const {
  std::ostringstream out;
  out << "grid world " << GridKindName(config_.kind) << " (layout seed "
      << config_.seed << ")\n"
      << "  grid: " << layout_.width << "x" << layout_.height
      << " including walls\n"
      << "  actions: 7 (left, right, forward, pickup, drop, toggle, done)\n"
      << "  max steps: " << max_steps_ << "\n"
      << "  mission: "
      << (layout_.target_object ? "pick up the target ball (T)"
                                : "reach the goal (G)")
      << "\n"
      << "  success reward: 1 - 0.9 * steps / " << max_steps_ << "\n"
      << "  state-space size: " << keys_.size() << " reachable states\n"
      << "  legend: # wall, G goal, L locked / D closed / '/' open door,"
         " k key, o ball, T target, x box, ><v^ agent\n"
      << RenderState(StartState(0));
  return out.str();
}

}  // namespace crl::envs
