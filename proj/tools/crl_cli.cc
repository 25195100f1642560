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

// crl: command-line front end over the committee_rl C API.

#include <unistd.h>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "committee_rl/committee_rl.h"
#include "json.hpp"

namespace {

using nlohmann::json;

// Thrown to unwind with a diagnostic and exit code 1.
struct CommandError {
  std::string message;
};

void Check(crl_status status, const std::string& context = "") {
  if (status == CRL_OK) return;
  std::string message = crl_status_name(status);
  message += ": ";
  if (!context.empty()) message += context + ": ";
  message += crl_last_error();
  throw CommandError{message};
}

std::string TakeString(char* text) {
  std::string out(text);
  crl_string_free(text);
  return out;
}

bool UseColor() {
  const char* no_color = std::getenv("NO_COLOR");
  if (no_color != nullptr && no_color[0] != '\0') return false;
  return isatty(STDOUT_FILENO) != 0;
}

std::string FormatNumber(double value) {
  char buffer[32];
  crl_format_double(value, buffer, sizeof(buffer));
  return buffer;
}

template <typename T, void (*Destroy)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Destroy(ptr); }
};

using ProfileHandle = Handle<crl_profile, crl_profile_destroy>;
using CommitteeHandle = Handle<crl_committee, crl_committee_destroy>;
using BallotHandle = Handle<crl_ballot, crl_ballot_destroy>;
using EnvHandle = Handle<crl_env, crl_env_destroy>;
using ConfigHandle = Handle<crl_config, crl_config_destroy>;
using ResultsHandle = Handle<crl_results, crl_results_destroy>;

// ---- elect ------------------------------------------------------------------

struct ElectArgs {
  std::string ballots;
  std::optional<std::string> rule;
  std::optional<std::size_t> n;
  std::optional<std::string> threshold;
  std::optional<std::size_t> lottery_voter;
  std::optional<std::uint64_t> seed;
  bool bruteforce = false;
};

int RunElect(const ElectArgs& args) {
  BallotHandle ballot;
  Check(crl_ballot_load(args.ballots.c_str(), &ballot.ptr));
  const crl_profile* profile = crl_ballot_profile(ballot.ptr);

  std::string rule;
  if (args.rule) {
    rule = *args.rule;
  } else if (const char* header_rule = crl_ballot_rule(ballot.ptr)) {
    rule = header_rule;
  } else {
    throw CommandError{"no rule given (use --rule or a 'rule:' header line)"};
  }

  std::optional<std::size_t> n = args.n;
  std::optional<double> threshold;
  if (args.threshold) {
    if (*args.threshold == "inf" || *args.threshold == "infinity") {
      threshold = INFINITY;
    } else {
      char* end = nullptr;
      threshold = std::strtod(args.threshold->c_str(), &end);
      if (end == args.threshold->c_str() || *end != '\0') {
        throw CommandError{"--threshold: not a number: " + *args.threshold};
      }
    }
  }
  // Flags override the file header; a flag for one mode hides the header's
  // value for the other.
  if (!n && !threshold) {
    std::size_t header_n = 0;
    double header_threshold = 0.0;
    if (crl_ballot_size(ballot.ptr, &header_n)) n = header_n;
    if (crl_ballot_threshold(ballot.ptr, &header_threshold)) {
      threshold = header_threshold;
    }
  }
  if (n && threshold) {
    throw CommandError{"give either a committee size (--n) or a threshold, not both"};
  }
  if (!n && !threshold) {
    throw CommandError{"no committee size or threshold given (--n or --threshold)"};
  }
  if (args.bruteforce && !n) throw CommandError{"--bruteforce needs --n"};

  crl_rule_spec spec{rule.c_str(), CRL_NO_VOTER, 0, 0};
  std::size_t voter = 0;
  if (args.lottery_voter) {
    spec.lottery_voter = *args.lottery_voter;
  } else if (crl_ballot_lottery_voter(ballot.ptr, &voter)) {
    spec.lottery_voter = voter;
  }
  std::uint64_t seed = 0;
  if (args.seed) {
    spec.seeded_tiebreak = 1;
    spec.tiebreak_seed = *args.seed;
  } else if (crl_ballot_tiebreak_seed(ballot.ptr, &seed)) {
    spec.seeded_tiebreak = 1;
    spec.tiebreak_seed = seed;
  }

  CommitteeHandle committee;
  if (args.bruteforce) {
    Check(crl_elect_bruteforce(profile, &spec, *n, &committee.ptr));
  } else if (n) {
    Check(crl_elect_topk(profile, &spec, *n, &committee.ptr));
  } else {
    Check(crl_elect_threshold(profile, &spec, *threshold, &committee.ptr));
  }
  std::vector<std::size_t> members(crl_committee_size(committee.ptr));
  crl_committee_members(committee.ptr, members.data(), members.size());
  std::string list;
  for (std::size_t i = 0; i < members.size(); ++i) {
    list += (i == 0 ? "a" : ",a") + std::to_string(members[i]);
  }
  std::cout << "voters: " << crl_profile_voters(profile)
            << "  candidates: " << crl_profile_candidates(profile) << "\n";
  std::cout << "rule: " << rule;
  if (n) {
    std::cout << "  n: " << *n << (args.bruteforce ? " (brute force)" : " (greedy)");
  } else {
    std::cout << "  threshold: " << FormatNumber(*threshold);
  }
  std::cout << "\ncommittee: {" << list << "}\nscore: "
            << FormatNumber(crl_committee_score(committee.ptr)) << "\n";
  return 0;
}

// ---- shared env / agent flags -------------------------------------------------

struct EnvArgs {
  std::string kind = "corridor";
  std::string spec_json;
  std::optional<std::size_t> actions;
  std::optional<std::size_t> states;
  std::optional<std::size_t> episode_cap;
  std::optional<std::size_t> size;
  std::optional<std::size_t> rooms;
  std::optional<std::size_t> room_size;
  std::optional<std::size_t> max_steps;

  void Register(CLI::App* app) {
    app->add_option("--env", kind,
                    "Environment: corridor, doorkey, multiroom, keycorridor, "
                    "obstructedmaze")
        ->capture_default_str();
    app->add_option("--env-json", spec_json,
                    "Environment as a JSON object (overrides the other env flags)");
    app->add_option("--actions", actions, "Corridor: number of actions m");
    app->add_option("--states", states, "Corridor: number of states");
    app->add_option("--episode-cap", episode_cap, "Corridor: steps per episode");
    app->add_option("--size", size, "DoorKey: grid side including walls");
    app->add_option("--rooms", rooms, "MultiRoom/KeyCorridor: number of rooms");
    app->add_option("--room-size", room_size, "Room interior side");
    app->add_option("--max-steps", max_steps, "Grid: step limit (0 = default)");
  }

  json ToJson() const {
    if (!spec_json.empty()) {
      try {
        return json::parse(spec_json);
      } catch (const json::parse_error& e) {
        throw CommandError{std::string("--env-json: ") + e.what()};
      }
    }
    json j;
    j["kind"] = kind;
    if (actions) j["actions"] = *actions;
    if (states) j["states"] = *states;
    if (episode_cap) j["episode_cap"] = *episode_cap;
    if (size) j["size"] = *size;
    if (rooms) j["rooms"] = *rooms;
    if (room_size) j["room_size"] = *room_size;
    if (max_steps) j["max_steps"] = *max_steps;
    return j;
  }
};

// ---- train ------------------------------------------------------------------

struct TrainArgs {
  EnvArgs env;
  std::string config_path;
  std::string env_label;
  std::string agent_name;
  std::string policy;
  std::string rule;
  double threshold = 0.0;
  std::size_t heads = 10;
  std::string utility = "raw";
  std::uint64_t steps = 200'000;
  double alpha = 0.2;
  double gamma = 0.9;
  double eps_start = 1.0;
  double eps_end = 0.001;
  std::optional<std::uint64_t> anneal;
  std::uint64_t seed = 0;
  std::string load_dir;
  std::string save_dir;
  std::string out_dir;
};

std::size_t FindIndex(const json& list, const char* key, const std::string& want,
                      const char* what) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i].value(key, "") == want) return i;
  }
  throw CommandError{std::string("no ") + what + " named '" + want + "' in the config"};
}

int RunTrain(const TrainArgs& args, CLI::App* app) {
  ConfigHandle config;
  std::size_t env_index = 0;
  std::size_t agent_index = 0;
  if (!args.config_path.empty()) {
    for (const char* flag : {"--env", "--env-json", "--policy", "--rule", "--k",
                             "--steps", "--alpha", "--gamma"}) {
      if (app->count(flag) > 0) {
        throw CommandError{std::string(flag) + " cannot be combined with --config"};
      }
    }
    Check(crl_config_load(args.config_path.c_str(), &config.ptr));
    char* text = nullptr;
    Check(crl_config_to_json(config.ptr, &text));
    const json j = json::parse(TakeString(text));
    if (!args.env_label.empty()) {
      env_index = FindIndex(j["envs"], "label", args.env_label, "environment");
    }
    if (!args.agent_name.empty()) {
      agent_index = FindIndex(j["agents"], "name", args.agent_name, "agent");
    }
  } else {
    if (!args.policy.empty() && !args.rule.empty()) {
      throw CommandError{"give either --policy or --rule, not both"};
    }
    json agent;
    if (!args.rule.empty()) {
      agent["rule"] = args.rule;
      if (std::isinf(args.threshold)) {
        agent["threshold"] = "inf";
      } else {
        agent["threshold"] = args.threshold;
      }
    } else {
      agent["policy"] = args.policy.empty() ? "majority" : args.policy;
    }
    json j;
    j["version"] = 1;
    j["env"] = args.env.ToJson();
    j["agents"] = json::array({agent});
    j["ensemble"] = {{"k", args.heads}, {"utility", args.utility}};
    j["learning"] = {{"alpha", args.alpha},
                     {"gamma", args.gamma},
                     {"epsilon",
                      {{"start", args.eps_start},
                       {"end", args.eps_end},
                       {"anneal_steps", args.anneal.value_or(args.steps / 2)}}}};
    j["total_steps"] = args.steps;
    j["seeds"] = json::array({args.seed});
    const std::uint64_t interval = std::max<std::uint64_t>(1, args.steps / 100);
    j["metric"] = {{"sample_interval", interval},
                   {"sample_count", args.steps / interval}};
    Check(crl_config_parse(j.dump().c_str(), &config.ptr), "train flags");
  }

  ResultsHandle results;
  Check(crl_train(config.ptr, env_index, agent_index, args.seed,
                  args.load_dir.empty() ? nullptr : args.load_dir.c_str(),
                  args.save_dir.empty() ? nullptr : args.save_dir.c_str(),
                  &results.ptr));
  std::size_t episodes = 0;
  double tail_mean = 0.0;
  Check(crl_results_run_summary(results.ptr, 0, 100, &episodes, &tail_mean));
  char* text = nullptr;
  Check(crl_results_report_text(results.ptr, UseColor() ? 1 : 0, &text));
  std::cout << TakeString(text);
  std::cout << "episodes: " << episodes
            << "\nmean return (last 100 episodes): " << FormatNumber(tail_mean)
            << "\n";
  if (!args.out_dir.empty()) {
    Check(crl_results_write(results.ptr, args.out_dir.c_str(), 0));
    std::cout << "wrote " << args.out_dir << "\n";
  }
  if (!args.save_dir.empty()) std::cout << "saved heads to " << args.save_dir << "\n";
  return 0;
}

// ---- experiment / report ------------------------------------------------------

struct ExperimentArgs {
  std::string config_path;
  std::string out_dir;
  std::size_t jobs = 0;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> seeds;
  bool plots = false;
  bool quiet = false;
};

void PrintProgress(size_t done, size_t total, void*) {
  std::fprintf(stderr, "\r%zu/%zu runs", done, total);
  if (done == total) std::fprintf(stderr, "\n");
}

int RunExperimentCommand(const ExperimentArgs& args) {
  ConfigHandle config;
  Check(crl_config_load(args.config_path.c_str(), &config.ptr));
  if (args.seed || args.seeds) {
    const std::size_t count = args.seeds.value_or(crl_config_seed_count(config.ptr));
    Check(crl_config_set_seeds(config.ptr, args.seed.value_or(0), count));
  }
  ResultsHandle results;
  const bool progress = !args.quiet && isatty(STDERR_FILENO) != 0;
  Check(crl_experiment_run(config.ptr, args.jobs, progress ? PrintProgress : nullptr,
                           nullptr, &results.ptr));
  Check(crl_results_write(results.ptr, args.out_dir.c_str(), args.plots ? 1 : 0));
  char* text = nullptr;
  Check(crl_results_report_text(results.ptr, UseColor() ? 1 : 0, &text));
  std::cout << TakeString(text);
  std::cout << "\nwrote " << crl_results_run_count(results.ptr) << " run logs to "
            << args.out_dir << "\n";
  return 0;
}

struct ReportArgs {
  std::string in_dir;
  std::string out_dir;
  bool plots = false;
};

int RunReport(const ReportArgs& args) {
  ResultsHandle results;
  Check(crl_results_load(args.in_dir.c_str(), &results.ptr));
  const std::string out = args.out_dir.empty() ? args.in_dir : args.out_dir;
  Check(crl_results_write_report(results.ptr, out.c_str(), args.plots ? 1 : 0));
  char* text = nullptr;
  Check(crl_results_report_text(results.ptr, UseColor() ? 1 : 0, &text));
  std::cout << TakeString(text);
  return 0;
}

// ---- env ----------------------------------------------------------------------

int RunEnv(const EnvArgs& env_args, std::uint64_t seed, bool render) {
  EnvHandle env;
  Check(crl_env_create(env_args.ToJson().dump().c_str(), seed, &env.ptr));
  char* text = nullptr;
  if (render) {
    Check(crl_env_reset(env.ptr, seed, nullptr));
    Check(crl_env_render(env.ptr, &text));
  } else {
    Check(crl_env_describe(env.ptr, &text));
  }
  std::cout << TakeString(text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Committee-voting ensemble Q-learning: elections, training, "
               "experiments and reports."};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(crl_version()));

  ElectArgs elect;
  auto* elect_cmd = app.add_subcommand("elect", "Elect a committee from a ballot file");
  elect_cmd->add_option("ballots", elect.ballots, "Ballot file")->required();
  elect_cmd->add_option("--rule", elect.rule,
                        "plurality (sntv), bloc, ccr, borda, judge, lottery");
  elect_cmd->add_option("--n", elect.n, "Committee size (greedy best-n)");
  elect_cmd->add_option("--threshold", elect.threshold,
                        "Satisfaction threshold (number or inf)");
  elect_cmd->add_option("--lottery-voter", elect.lottery_voter,
                        "Voter whose ballot the lottery rule reads");
  elect_cmd->add_option("--seed", elect.seed, "Seeded random tie-breaking");
  elect_cmd->add_flag("--bruteforce", elect.bruteforce,
                      "Exhaustive optimum over all n-subsets");

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Train one agent on one environment");
  train.env.Register(train_cmd);
  train_cmd->add_option("--config", train.config_path,
                        "Experiment config; trains one (env, agent) pair from it");
  train_cmd->add_option("--env-label", train.env_label, "With --config: environment label");
  train_cmd->add_option("--agent", train.agent_name, "With --config: agent name");
  train_cmd->add_option("--policy", train.policy,
                        "majority, rank, average, bootstrapped, boltzmann");
  train_cmd->add_option("--rule", train.rule,
                        "Committee rule: plurality, bloc, ccr, borda, judge, lottery");
  train_cmd->add_option("--threshold", train.threshold, "Satisfaction threshold")
      ->capture_default_str();
  train_cmd->add_option("--k", train.heads, "Ensemble size")->capture_default_str();
  train_cmd->add_option("--utility", train.utility, "raw or softmax")->capture_default_str();
  train_cmd->add_option("--steps", train.steps, "Training steps")->capture_default_str();
  train_cmd->add_option("--alpha", train.alpha, "Learning rate")->capture_default_str();
  train_cmd->add_option("--gamma", train.gamma, "Discount")->capture_default_str();
  train_cmd->add_option("--eps-start", train.eps_start, "Initial epsilon")
      ->capture_default_str();
  train_cmd->add_option("--eps-end", train.eps_end, "Final epsilon")->capture_default_str();
  train_cmd->add_option("--anneal", train.anneal,
                        "Epsilon annealing steps (default: half of --steps)");
  train_cmd->add_option("--seed", train.seed, "Run seed")->capture_default_str();
  train_cmd->add_option("--load", train.load_dir,
                        "Resume from head_<i>.qtable files in this directory");
  train_cmd->add_option("--save", train.save_dir,
                        "Write head_<i>.qtable checkpoints to this directory");
  train_cmd->add_option("--out", train.out_dir, "Write the run log and report here");

  ExperimentArgs experiment;
  auto* exp_cmd = app.add_subcommand(
      "experiment", "Run every (env, agent, seed) of a config and report");
  exp_cmd->add_option("--config", experiment.config_path, "Experiment config (JSON)")
      ->required();
  exp_cmd->add_option("--out", experiment.out_dir, "Output directory")->required();
  exp_cmd->add_option("--jobs", experiment.jobs,
                      "Worker threads (0 = config value, then hardware)");
  exp_cmd->add_option("--seed", experiment.seed,
                      "First seed; replaces the config's seed list");
  exp_cmd->add_option("--seeds", experiment.seeds, "Number of seeds");
  exp_cmd->add_flag("--plots", experiment.plots, "Write SVG learning curves");
  exp_cmd->add_flag("--quiet", experiment.quiet, "No progress output");

  ReportArgs report;
  auto* report_cmd =
      app.add_subcommand("report", "Recompute tables and plots from run logs");
  report_cmd->add_option("dir", report.in_dir, "Experiment output directory")
      ->required();
  report_cmd->add_option("--out", report.out_dir,
                         "Write report files here instead of the input directory");
  report_cmd->add_flag("--plots", report.plots, "Write SVG learning curves");

  EnvArgs env_args;
  std::uint64_t env_seed = 0;
  auto* env_cmd = app.add_subcommand("env", "Inspect an environment");
  env_cmd->require_subcommand(1);
  auto* describe_cmd = env_cmd->add_subcommand("describe", "Print the layout summary");
  auto* render_cmd = env_cmd->add_subcommand("render", "Draw the start state");
  for (auto* cmd : {describe_cmd, render_cmd}) {
    env_args.Register(cmd);
    cmd->add_option("--seed", env_seed, "Layout and start-state seed")
        ->capture_default_str();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*elect_cmd) return RunElect(elect);
    if (*train_cmd) return RunTrain(train, train_cmd);
    if (*exp_cmd) return RunExperimentCommand(experiment);
    if (*report_cmd) return RunReport(report);
    if (*describe_cmd) return RunEnv(env_args, env_seed, false);
    if (*render_cmd) return RunEnv(env_args, env_seed, true);
  } catch (const CommandError& e) {
    std::cerr << "crl: " << e.message << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "crl: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
