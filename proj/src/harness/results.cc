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

#include "harness/results.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "common/error.h"
#include "common/format.h"
#include "harness/report.h"
#include "json.hpp"

namespace crl::harness {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr std::string_view kRunLogHeader = "step,episode_return,seed,agent,env";
constexpr int kManifestVersion = 1;

void WriteFile(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string_view> SplitCommas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::uint64_t ParseUnsigned(std::string_view text, const std::string& where) {
  std::uint64_t value = 0;
  if (text.empty()) throw Error(ErrorCode::kParse, where + ": empty integer");
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw Error(ErrorCode::kParse,
                  where + ": expected an unsigned integer, got '" +
                      std::string(text) + "'");
    }
    value = value * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return value;
}

}  // namespace

ExperimentResults RunAndReport(const ExperimentConfig& config, std::size_t jobs,
                               const ProgressFn& progress) {
  ExperimentResults results;
  results.config = config;
  results.logs = RunExperiment(config, jobs, progress);
  results.report = BuildMetricReport(config, results.logs);
  return results;
}

std::string RunLogCsv(const RunLog& log) {
  std::string out(kRunLogHeader);
  out += '\n';
  const std::string suffix = "," + std::to_string(log.seed) + "," + log.agent +
                             "," + log.env + "\n";
  for (const auto& e : log.episodes) {
    out += std::to_string(e.step);
    out += ',';
    out += FormatDouble(e.episode_return);
    out += suffix;
  }
  return out;
}

std::vector<EpisodeRecord> ParseRunLogCsv(std::string_view text,
                                          std::string_view source,
                                          const std::string& env,
                                          const std::string& agent,
                                          std::uint64_t seed) {
  std::vector<EpisodeRecord> episodes;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool header_seen = false;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const std::string where = std::string(source) + ":" + std::to_string(line_no);
    if (!header_seen) {
      if (line != kRunLogHeader) {
        throw Error(ErrorCode::kParse,
                    where + ": expected header '" + std::string(kRunLogHeader) + "'");
      }
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    const auto fields = SplitCommas(line);
    if (fields.size() != 5) {
      throw Error(ErrorCode::kParse, where + ": expected 5 fields, got " +
                                         std::to_string(fields.size()));
    }
    EpisodeRecord record;
    record.step = ParseUnsigned(fields[0], where + " (step)");
    try {
      record.episode_return = ParseDouble(fields[1]);
    } catch (const Error& e) {
      throw Error(ErrorCode::kParse, where + " (episode_return): " + e.what());
    }
    if (ParseUnsigned(fields[2], where + " (seed)") != seed || fields[3] != agent ||
        fields[4] != env) {
      throw Error(ErrorCode::kParse, where + ": row belongs to another run (expected " +
                                         env + "/" + agent + "/seed" +
                                         std::to_string(seed) + ")");
    }
    episodes.push_back(record);
  }
  if (!header_seen) throw Error(ErrorCode::kParse, std::string(source) + ": empty file");
  return episodes;
}

std::string RunLogFileName(const RunLog& log) {
  return log.env + "__" + log.agent + "__seed" + std::to_string(log.seed) + ".csv";
}

void WriteReportFiles(const std::string& dir, const ExperimentResults& results,
                      bool plots) {
  const fs::path root(dir);
  fs::create_directories(root);
  const MetricReport& report = results.report;
  WriteFile(root / "metrics.csv", MetricsCsv(report));
  WriteFile(root / "curves.csv", CurvesCsv(report));
  if (report.agents.size() >= 2) {
    WriteFile(root / "table.csv", CompareCsv(CompareReport(report)));
  }
  WriteFile(root / "report.txt", RenderReportText(report, false));
  if (plots) {
    fs::create_directories(root / "plots");
    for (std::size_t e = 0; e < report.envs.size(); ++e) {
      WriteFile(root / "plots" / (report.envs[e] + ".svg"),
                LearningCurveSvg(report, e));
    }
  }
}

void WriteResults(const std::string& dir, const ExperimentResults& results,
                  bool plots) {
  const fs::path root(dir);
  std::error_code ec;
  fs::create_directories(root / "runs", ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + (root / "runs").string());
  json manifest;
  manifest["format"] = "committee-rl-results";
  manifest["version"] = kManifestVersion;
  manifest["config_hash"] = ConfigHash(results.config);
  manifest["config"] = json::parse(ExperimentConfigToJson(results.config));
  manifest["runs"] = json::array();
  for (const RunLog& log : results.logs) {
    const std::string name = RunLogFileName(log);
    WriteFile(root / "runs" / name, RunLogCsv(log));
    manifest["runs"].push_back({{"env", log.env},
                                {"agent", log.agent},
                                {"seed", log.seed},
                                {"total_steps", log.total_steps},
                                {"file", "runs/" + name}});
  }
  WriteFile(root / "manifest.json", manifest.dump(2) + "\n");
  WriteReportFiles(dir, results, plots);
}

ExperimentResults LoadResults(const std::string& dir) {
  const fs::path root(dir);
  if (!fs::is_directory(root)) {
    throw Error(ErrorCode::kIo, dir + ": no such directory");
  }
  const fs::path manifest_path = root / "manifest.json";
  if (!fs::exists(manifest_path)) {
    bool any_csv = false;
    if (fs::is_directory(root / "runs")) {
      for (const auto& entry : fs::directory_iterator(root / "runs")) {
        any_csv = any_csv || entry.path().extension() == ".csv";
      }
    }
    throw Error(ErrorCode::kIo,
                any_csv ? dir + ": run logs present but manifest.json is missing"
                        : dir + ": no run logs found");
  }
  json manifest;
  try {
    manifest = json::parse(ReadFile(manifest_path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, manifest_path.string() + ": " + e.what());
  }
  if (!manifest.is_object() || manifest.value("format", "") != "committee-rl-results") {
    throw Error(ErrorCode::kParse, manifest_path.string() + ": not a results manifest");
  }
  if (manifest.value("version", 0) != kManifestVersion) {
    throw Error(ErrorCode::kParse, manifest_path.string() +
                                       ": unsupported manifest version " +
                                       manifest.value("version", json()).dump());
  }
  ExperimentResults results;
  results.config = ParseExperimentConfig(manifest.at("config").dump(),
                                         manifest_path.string());
  const std::string hash = ConfigHash(results.config);
  if (manifest.value("config_hash", "") != hash) {
    throw Error(ErrorCode::kParse, manifest_path.string() +
                                       ": config hash mismatch (manifest edited?)");
  }
  const json& runs = manifest.at("runs");
  if (!runs.is_array() || runs.empty()) {
    throw Error(ErrorCode::kIo, dir + ": no run logs found");
  }
  for (const json& run : runs) {
    RunLog log;
    log.env = run.at("env").get<std::string>();
    log.agent = run.at("agent").get<std::string>();
    log.seed = run.at("seed").get<std::uint64_t>();
    log.total_steps = run.at("total_steps").get<std::uint64_t>();
    log.config_hash = hash;
    const fs::path file = root / run.at("file").get<std::string>();
    if (!fs::exists(file)) {
      throw Error(ErrorCode::kIo, file.string() + ": run log missing");
    }
    log.episodes = ParseRunLogCsv(ReadFile(file), file.string(), log.env,
                                  log.agent, log.seed);
    log.Validate();
    results.logs.push_back(std::move(log));
  }
  results.report = BuildMetricReport(results.config, results.logs);
  return results;
}

}  // namespace crl::harness
