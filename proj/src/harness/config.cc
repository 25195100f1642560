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
#include "harness/config.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "common/error.h"
#include "common/format.h"
#include "json.hpp"

namespace crl::harness {
namespace {

using nlohmann::json;

class Problems {
 public:
  void Add(const std::string& path, const std::string& message) {
    list_.push_back(path + ": " + message);
  }
  bool empty() const { return list_.empty(); }
  std::string Joined() const {
    std::string out;
    for (const auto& p : list_) {
      if (!out.empty()) out += '\n';
      out += p;
    }
    return out;
  }

 private:
  std::vector<std::string> list_;
};

std::string Join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

void CheckKeys(const json& obj, const std::string& path,
               std::initializer_list<std::string_view> allowed,
               Problems& problems) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) problems.Add(Join(path, key), "unknown field");
  }
}

bool ExpectObject(const json& j, const std::string& path, Problems& problems) {
  if (!j.is_object()) {
    problems.Add(path.empty() ? "<root>" : path, "expected an object");
    return false;
  }
  return true;
}

template <typename T>
void ReadUnsigned(const json& obj, std::string_view key, const std::string& path,
                  T& out, Problems& problems) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(std::string(key));
  if (!v.is_number_unsigned() &&
      !(v.is_number_integer() && v.get<long long>() >= 0)) {
    problems.Add(Join(path, key), "expected a non-negative integer");
    return;
  }
  out = static_cast<T>(v.get<std::uint64_t>());
}

void ReadDouble(const json& obj, std::string_view key, const std::string& path,
                double& out, Problems& problems) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(std::string(key));
  if (v.is_string() && (v == "inf" || v == "infinity")) {
    out = std::numeric_limits<double>::infinity();
    return;
  }
  if (!v.is_number()) {
    problems.Add(Join(path, key), "expected a number");
    return;
  }
  out = v.get<double>();
}

std::optional<std::string> ReadString(const json& obj, std::string_view key,
                                      const std::string& path,
                                      Problems& problems) {
  if (!obj.contains(key)) return std::nullopt;
  const json& v = obj.at(std::string(key));
  if (!v.is_string()) {
    problems.Add(Join(path, key), "expected a string");
    return std::nullopt;
  }
  return v.get<std::string>();
}

// Names end up in CSV cells and file names.
bool IsPlainName(std::string_view name) {
  if (name.empty()) return false;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_' || c == '-' ||
                    c == '.' || c == '@' || c == '+';
    if (!ok) return false;
  }
  return true;
}

EnvSpec ParseEnv(const json& j, const std::string& path, Problems& problems) {
  EnvSpec spec;
  if (!ExpectObject(j, path, problems)) return spec;
  CheckKeys(j, path,
            {"label", "kind", "states", "actions", "episode_cap", "start_p",
             "reward_low", "reward_high", "size", "rooms", "room_size",
             "max_steps"},
            problems);
  const auto kind = ReadString(j, "kind", path, problems);
  if (!kind) {
    if (!j.contains("kind")) problems.Add(Join(path, "kind"), "missing");
    return spec;
  }
  if (*kind == "corridor") {
    spec.kind = EnvSpec::Kind::kCorridor;
    auto& c = spec.corridor;
    ReadUnsigned(j, "states", path, c.states, problems);
    ReadUnsigned(j, "actions", path, c.actions, problems);
    ReadUnsigned(j, "episode_cap", path, c.episode_cap, problems);
    ReadDouble(j, "start_p", path, c.start_p, problems);
    ReadDouble(j, "reward_low", path, c.reward_low, problems);
    ReadDouble(j, "reward_high", path, c.reward_high, problems);
    for (const char* key : {"size", "rooms", "room_size", "max_steps"}) {
      if (j.contains(key)) problems.Add(Join(path, key), "not a corridor field");
    }
    try {
      c.Validate();
    } catch (const Error& e) {
      problems.Add(path, e.what());
    }
    spec.label = "corridor-m" + std::to_string(c.actions);
  } else if (const auto grid_kind = envs::ParseGridKind(*kind)) {
    spec.kind = EnvSpec::Kind::kGrid;
    auto& g = spec.grid;
    g.kind = *grid_kind;
    ReadUnsigned(j, "size", path, g.size, problems);
    ReadUnsigned(j, "rooms", path, g.rooms, problems);
    ReadUnsigned(j, "room_size", path, g.room_size, problems);
    ReadUnsigned(j, "max_steps", path, g.max_steps, problems);
    for (const char* key : {"states", "actions", "episode_cap", "start_p",
                            "reward_low", "reward_high"}) {
      if (j.contains(key)) problems.Add(Join(path, key), "not a grid field");
    }
    try {
      g.Validate();
    } catch (const Error& e) {
      problems.Add(path, e.what());
    }
    spec.label = std::string(envs::GridKindName(g.kind));
  } else {
    problems.Add(Join(path, "kind"),
                 "unknown environment '" + *kind +
                     "' (corridor, doorkey, multiroom, keycorridor, "
                     "obstructedmaze)");
  }
  if (const auto label = ReadString(j, "label", path, problems)) {
    spec.label = *label;
  }
  if (!IsPlainName(spec.label)) {
    problems.Add(Join(path, "label"),
                 "must be non-empty and use only letters, digits and _-.@+");
  }
  return spec;
}

std::optional<AgentSpec> ParseAgent(const json& j, const std::string& path,
                                    Problems& problems) {
  if (!ExpectObject(j, path, problems)) return std::nullopt;
  CheckKeys(j, path, {"name", "policy", "rule", "threshold", "utility"},
            problems);
  AgentSpec agent;
  const auto name = ReadString(j, "name", path, problems);
  const auto policy = ReadString(j, "policy", path, problems);
  const auto rule = ReadString(j, "rule", path, problems);
  if (policy && rule) {
    problems.Add(path, "give either 'policy' or 'rule', not both");
    return std::nullopt;
  }
  if (policy) {
    const auto parsed = ensemble::ParseClassicPolicy(*policy);
    if (!parsed) {
      problems.Add(Join(path, "policy"),
                   "unknown policy '" + *policy +
                       "' (majority, rank, average, bootstrapped, boltzmann)");
      return std::nullopt;
    }
    if (j.contains("threshold")) {
      problems.Add(Join(path, "threshold"), "only committee rules take a threshold");
    }
    agent.policy = *parsed;
  } else if (rule) {
    const auto parsed = votecore::ParseRuleName(*rule);
    if (!parsed) {
      problems.Add(Join(path, "rule"),
                   "unknown rule '" + *rule +
                       "' (plurality, bloc, ccr, borda, judge, lottery)");
      return std::nullopt;
    }
    ensemble::CommitteePolicy committee{*parsed, 0.0};
    ReadDouble(j, "threshold", path, committee.threshold, problems);
    if (!(committee.threshold >= 0.0)) {
      problems.Add(Join(path, "threshold"), "must be >= 0");
    }
    if (committee.rule == votecore::RuleKind::kLottery &&
        committee.threshold != 0.0) {
      problems.Add(Join(path, "threshold"), "lottery rule requires threshold 0");
    }
    agent.policy = committee;
  } else {
    problems.Add(path, "missing 'policy' or 'rule'");
    return std::nullopt;
  }
  if (const auto utility = ReadString(j, "utility", path, problems)) {
    agent.utility_mode = ensemble::ParseUtilityMode(*utility);
    if (!agent.utility_mode) {
      problems.Add(Join(path, "utility"), "expected 'raw' or 'softmax'");
    }
  }
  agent.name = name ? *name : PolicyLabel(agent.policy);
  if (!IsPlainName(agent.name)) {
    problems.Add(Join(path, "name"),
                 "must be non-empty and use only letters, digits and _-.@+");
  }
  return agent;
}

void ParseEnsemble(const json& j, EnsembleSettings& out, Problems& problems) {
  const std::string path = "ensemble";
  if (!ExpectObject(j, path, problems)) return;
  CheckKeys(j, path, {"k", "utility", "update_mask_p", "tiebreak", "init_scale"},
            problems);
  ReadUnsigned(j, "k", path, out.heads, problems);
  if (out.heads == 0) problems.Add(Join(path, "k"), "must be >= 1");
  if (const auto utility = ReadString(j, "utility", path, problems)) {
    const auto mode = ensemble::ParseUtilityMode(*utility);
    if (!mode) {
      problems.Add(Join(path, "utility"), "expected 'raw' or 'softmax'");
    } else {
      out.utility_mode = *mode;
    }
  }
  if (j.contains("update_mask_p") && !j.at("update_mask_p").is_null()) {
    double p = 1.0;
    ReadDouble(j, "update_mask_p", path, p, problems);
    if (!(p >= 0.0 && p <= 1.0)) {
      problems.Add(Join(path, "update_mask_p"), "must be in [0, 1]");
    }
    out.update_mask_p = p;
  }
  if (j.contains("tiebreak")) {
    const json& t = j.at("tiebreak");
    if (t.is_string() && t == "lowest") {
      out.tiebreak = votecore::TieBreakPolicy::LowestIndex();
    } else if (t.is_object() && t.contains("seed") && t.size() == 1 &&
               t.at("seed").is_number_unsigned()) {
      out.tiebreak =
          votecore::TieBreakPolicy::SeededRandom(t.at("seed").get<std::uint64_t>());
    } else {
      problems.Add(Join(path, "tiebreak"),
                   "expected \"lowest\" or {\"seed\": <unsigned>}");
    }
  }
  ReadDouble(j, "init_scale", path, out.init_scale, problems);
  if (!(out.init_scale >= 0.0) || !std::isfinite(out.init_scale)) {
    problems.Add(Join(path, "init_scale"), "must be finite and >= 0");
  }
}

void ParseLearning(const json& j, qcore::LearningParams& out,
                   Problems& problems) {
  const std::string path = "learning";
  if (!ExpectObject(j, path, problems)) return;
  CheckKeys(j, path, {"alpha", "gamma", "epsilon"}, problems);
  ReadDouble(j, "alpha", path, out.alpha, problems);
  ReadDouble(j, "gamma", path, out.gamma, problems);
  if (!(out.alpha > 0.0 && out.alpha <= 1.0)) {
    problems.Add(Join(path, "alpha"), "must be in (0, 1]");
  }
  if (!(out.gamma >= 0.0 && out.gamma < 1.0)) {
    problems.Add(Join(path, "gamma"), "must be in [0, 1)");
  }
  if (j.contains("epsilon")) {
    const std::string ep = Join(path, "epsilon");
    const json& e = j.at("epsilon");
    if (ExpectObject(e, ep, problems)) {
      CheckKeys(e, ep, {"start", "end", "anneal_steps"}, problems);
      ReadDouble(e, "start", ep, out.epsilon.start, problems);
      ReadDouble(e, "end", ep, out.epsilon.end, problems);
      ReadUnsigned(e, "anneal_steps", ep, out.epsilon.anneal_steps, problems);
      try {
        out.epsilon.Validate();
      } catch (const Error& err) {
        problems.Add(ep, err.what());
      }
    }
  }
}

void ParseMetric(const json& j, MetricSettings& out, Problems& problems) {
  const std::string path = "metric";
  if (!ExpectObject(j, path, problems)) return;
  CheckKeys(j, path, {"ema_coeff", "sample_interval", "sample_count"}, problems);
  ReadDouble(j, "ema_coeff", path, out.ema_coeff, problems);
  ReadUnsigned(j, "sample_interval", path, out.sample_interval, problems);
  ReadUnsigned(j, "sample_count", path, out.sample_count, problems);
  try {
    out.Validate();
  } catch (const Error& e) {
    problems.Add(path, e.what());
  }
}

std::string LineColumn(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return std::to_string(line) + ":" + std::to_string(column);
}

json EnvToJson(const EnvSpec& spec) {
  json j;
  j["label"] = spec.label;
  if (spec.kind == EnvSpec::Kind::kCorridor) {
    const auto& c = spec.corridor;
    j["kind"] = "corridor";
    j["states"] = c.states;
    j["actions"] = c.actions;
    j["episode_cap"] = c.episode_cap;
    j["start_p"] = c.start_p;
    j["reward_low"] = c.reward_low;
    j["reward_high"] = c.reward_high;
  } else {
    const auto& g = spec.grid;
    j["kind"] = std::string(envs::GridKindName(g.kind));
    j["size"] = g.size;
    j["rooms"] = g.rooms;
    j["room_size"] = g.room_size;
    j["max_steps"] = g.max_steps;
  }
  return j;
}

}  // namespace

void MetricSettings::Validate() const {
  if (!(ema_coeff >= 0.0 && ema_coeff < 1.0)) {
    ThrowConfig("ema_coeff must be in [0, 1)");
  }
  if (sample_interval == 0) ThrowConfig("sample_interval must be positive");
  if (sample_count == 0) ThrowConfig("sample_count must be positive");
}

std::string PolicyLabel(const ensemble::PolicyKind& policy) {
  if (const auto* classic = std::get_if<ensemble::ClassicPolicy>(&policy)) {
    return std::string(ensemble::ClassicPolicyName(*classic));
  }
  const auto& committee = std::get<ensemble::CommitteePolicy>(policy);
  return std::string(votecore::RuleName(committee.rule)) + "@" +
         FormatDouble(committee.threshold);
}

std::unique_ptr<envs::Environment> MakeEnvironment(const EnvSpec& spec,
                                                   std::uint64_t seed) {
  if (spec.kind == EnvSpec::Kind::kCorridor) {
    envs::CorridorConfig c = spec.corridor;
    c.seed = seed;
    return std::make_unique<envs::CorridorEnv>(c);
  }
  envs::GridConfig g = spec.grid;
  g.seed = seed;
  return std::make_unique<envs::GridEnv>(g);
}

ensemble::AgentConfig ExperimentConfig::MakeAgentConfig(
    const AgentSpec& agent, std::uint64_t seed) const {
  ensemble::AgentConfig c;
  c.heads = ensemble.heads;
  c.policy = agent.policy;
  c.params = learning;
  c.tiebreak = ensemble.tiebreak;
  c.utility_mode = agent.utility_mode.value_or(ensemble.utility_mode);
  c.update_mask_p = ensemble.update_mask_p;
  c.init_scale = ensemble.init_scale;
  c.seed = seed;
  return c;
}

EnvSpec ParseEnvSpec(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, "env spec:" + LineColumn(json_text, e.byte) +
                                       ": " + e.what());
  }
  Problems problems;
  EnvSpec spec = ParseEnv(j, "env", problems);
  if (!problems.empty()) throw Error(ErrorCode::kConfig, problems.Joined());
  return spec;
}

ExperimentConfig ParseExperimentConfig(std::string_view text,
                                       std::string_view source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string(source) + ":" +
                                       LineColumn(text, e.byte) + ": " +
                                       e.what());
  }
  ExperimentConfig config;
  Problems problems;
  if (!ExpectObject(j, "", problems)) {
    throw Error(ErrorCode::kConfig, problems.Joined());
  }
  CheckKeys(j, "",
            {"version", "env", "envs", "agents", "ensemble", "learning",
             "total_steps", "seeds", "metric", "jobs"},
            problems);
  if (!j.contains("version")) {
    problems.Add("version", "missing (this build reads version " +
                                std::to_string(kConfigVersion) + ")");
  } else if (!j.at("version").is_number_integer() ||
             j.at("version").get<int>() != kConfigVersion) {
    problems.Add("version", "unsupported schema version " + j.at("version").dump() +
                                " (this build reads version " +
                                std::to_string(kConfigVersion) + ")");
  }
  if (j.contains("env") && j.contains("envs")) {
    problems.Add("envs", "give either 'env' or 'envs', not both");
  } else if (j.contains("env")) {
    config.envs.push_back(ParseEnv(j.at("env"), "env", problems));
  } else if (j.contains("envs") && j.at("envs").is_array()) {
    const json& list = j.at("envs");
    for (std::size_t i = 0; i < list.size(); ++i) {
      config.envs.push_back(
          ParseEnv(list[i], "envs[" + std::to_string(i) + "]", problems));
    }
  } else if (j.contains("envs")) {
    problems.Add("envs", "expected an array");
  }
  if (config.envs.empty()) problems.Add("envs", "at least one environment required");

  if (j.contains("agents") && j.at("agents").is_array()) {
    const json& list = j.at("agents");
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (auto agent = ParseAgent(list[i], "agents[" + std::to_string(i) + "]",
                                  problems)) {
        config.agents.push_back(std::move(*agent));
      }
    }
  } else if (j.contains("agents")) {
    problems.Add("agents", "expected an array");
  }
  if (config.agents.empty() && !(j.contains("agents") && !j.at("agents").empty())) {
    problems.Add("agents", "at least one agent required");
  }
  std::set<std::string> names;
  for (std::size_t i = 0; i < config.agents.size(); ++i) {
    if (!names.insert(config.agents[i].name).second) {
      problems.Add("agents", "duplicate agent name '" + config.agents[i].name + "'");
    }
  }
  std::set<std::string> labels;
  for (const auto& env : config.envs) {
    if (!labels.insert(env.label).second) {
      problems.Add("envs", "duplicate environment label '" + env.label + "'");
    }
  }

  if (j.contains("ensemble")) ParseEnsemble(j.at("ensemble"), config.ensemble, problems);
  if (j.contains("learning")) ParseLearning(j.at("learning"), config.learning, problems);
  if (j.contains("metric")) ParseMetric(j.at("metric"), config.metric, problems);
  ReadUnsigned(j, "total_steps", "", config.total_steps, problems);
  if (config.total_steps == 0) problems.Add("total_steps", "must be positive");
  ReadUnsigned(j, "jobs", "", config.jobs, problems);

  if (!j.contains("seeds")) {
    for (std::uint64_t s = 0; s < 10; ++s) config.seeds.push_back(s);
  } else if (j.at("seeds").is_array()) {
    const json& list = j.at("seeds");
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (!list[i].is_number_unsigned()) {
        problems.Add("seeds[" + std::to_string(i) + "]",
                     "expected a non-negative integer");
      } else {
        config.seeds.push_back(list[i].get<std::uint64_t>());
      }
    }
  } else if (j.at("seeds").is_object()) {
    const json& s = j.at("seeds");
    CheckKeys(s, "seeds", {"count", "start"}, problems);
    std::uint64_t count = 0;
    std::uint64_t start = 0;
    ReadUnsigned(s, "count", "seeds", count, problems);
    ReadUnsigned(s, "start", "seeds", start, problems);
    for (std::uint64_t i = 0; i < count; ++i) config.seeds.push_back(start + i);
  } else {
    problems.Add("seeds", "expected an array or {\"count\", \"start\"}");
  }
  if (config.seeds.empty() && problems.empty()) {
    problems.Add("seeds", "seed list must not be empty");
  }
  std::set<std::uint64_t> unique_seeds(config.seeds.begin(), config.seeds.end());
  if (unique_seeds.size() != config.seeds.size()) {
    problems.Add("seeds", "seeds must be distinct");
  }
  if (config.metric.sample_interval > 0 && config.metric.sample_count > 0 &&
      config.metric.horizon() > config.total_steps) {
    problems.Add("metric", "sample_interval * sample_count (" +
                               std::to_string(config.metric.horizon()) +
                               ") exceeds total_steps (" +
                               std::to_string(config.total_steps) + ")");
  }
  if (!problems.empty()) throw Error(ErrorCode::kConfig, problems.Joined());
  return config;
}

ExperimentConfig LoadExperimentConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read config " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return ParseExperimentConfig(buffer.str(), path);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfig) {
      throw Error(e.code(), path + ":\n" + e.what());
    }
    throw;
  }
}

std::string ExperimentConfigToJson(const ExperimentConfig& config) {
  json j;
  j["version"] = config.version;
  j["envs"] = json::array();
  for (const auto& env : config.envs) j["envs"].push_back(EnvToJson(env));
  j["agents"] = json::array();
  for (const auto& agent : config.agents) {
    json a;
    a["name"] = agent.name;
    if (const auto* classic = std::get_if<ensemble::ClassicPolicy>(&agent.policy)) {
      a["policy"] = std::string(ensemble::ClassicPolicyName(*classic));
    } else {
      const auto& committee = std::get<ensemble::CommitteePolicy>(agent.policy);
      a["rule"] = std::string(votecore::RuleName(committee.rule));
      if (std::isinf(committee.threshold)) {
        a["threshold"] = "inf";
      } else {
        a["threshold"] = committee.threshold;
      }
    }
    if (agent.utility_mode) {
      a["utility"] = std::string(ensemble::UtilityModeName(*agent.utility_mode));
    }
    j["agents"].push_back(a);
  }
  json e;
  e["k"] = config.ensemble.heads;
  e["utility"] = std::string(ensemble::UtilityModeName(config.ensemble.utility_mode));
  e["update_mask_p"] = config.ensemble.update_mask_p
                           ? json(*config.ensemble.update_mask_p)
                           : json(nullptr);
  if (config.ensemble.tiebreak.kind == votecore::TieBreakPolicy::Kind::kLowestIndex) {
    e["tiebreak"] = "lowest";
  } else {
    e["tiebreak"] = {{"seed", *config.ensemble.tiebreak.seed}};
  }
  e["init_scale"] = config.ensemble.init_scale;
  j["ensemble"] = e;
  j["learning"] = {{"alpha", config.learning.alpha},
                   {"gamma", config.learning.gamma},
                   {"epsilon",
                    {{"start", config.learning.epsilon.start},
                     {"end", config.learning.epsilon.end},
                     {"anneal_steps", config.learning.epsilon.anneal_steps}}}};
  j["total_steps"] = config.total_steps;
  j["seeds"] = config.seeds;
  j["metric"] = {{"ema_coeff", config.metric.ema_coeff},
                 {"sample_interval", config.metric.sample_interval},
                 {"sample_count", config.metric.sample_count}};
  j["jobs"] = config.jobs;
  return j.dump(2);
}

std::string ConfigHash(const ExperimentConfig& config) {
  // jobs only affects scheduling, never results.
  ExperimentConfig canonical = config;
  canonical.jobs = 0;
  const std::string text = ExperimentConfigToJson(canonical);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(hash));
  return buffer;
}

}  // namespace crl::harness
