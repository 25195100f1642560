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

#include "harness/report.h"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "common/error.h"
#include "common/format.h"

namespace crl::harness {
namespace {

std::string Pad(const std::string& text, std::size_t width) {
  return text.size() >= width ? text : text + std::string(width - text.size(), ' ');
}

std::string Cell(double score, double err) {
  return FormatDouble(score) + " +- " + FormatDouble(err);
}

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                "#bcbd22", "#17becf"};

}  // namespace

std::vector<std::size_t> RankAgents(std::span<const double> scores,
                                    std::span<const std::string> names) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return names[a] < names[b];
  });
  return order;
}

CompareTable CompareReport(const MetricReport& report) {
  if (report.agents.size() < 2) {
    ThrowConfig("a comparison needs at least two agents");
  }
  CompareTable table;
  table.envs = report.envs;
  table.agents = report.agents;
  for (std::size_t e = 0; e < report.envs.size(); ++e) {
    std::vector<double> scores;
    std::vector<double> errs;
    for (std::size_t a = 0; a < report.agents.size(); ++a) {
      scores.push_back(report.at(e, a).score);
      errs.push_back(report.at(e, a).stderr_at_best);
    }
    table.ranking.push_back(RankAgents(scores, report.agents));
    table.score.push_back(std::move(scores));
    table.stderr_.push_back(std::move(errs));
  }
  return table;
}

std::string RenderReportText(const MetricReport& report, bool color) {
  std::ostringstream out;
  const auto& s = report.settings;
  const std::size_t runs = report.entries.empty() ? 0 : report.entries.front().runs;
  out << "EMA metric (max over the seed-mean curve): ema_coeff=" << FormatDouble(s.ema_coeff)
      << " per episode, sample_interval=" << s.sample_interval
      << ", sample_count=" << s.sample_count << ", seeds=" << runs
      << ", config=" << report.config_hash << "\n\n";

  if (report.agents.size() < 2) {
    for (std::size_t e = 0; e < report.envs.size(); ++e) {
      const auto& entry = report.at(e, 0);
      out << entry.env << "  " << entry.agent << "  "
          << Cell(entry.score, entry.stderr_at_best) << "\n";
    }
    return out.str();
  }

  const CompareTable table = CompareReport(report);
  std::vector<std::size_t> widths;
  std::size_t env_width = 3;
  for (const auto& e : table.envs) env_width = std::max(env_width, e.size());
  for (std::size_t a = 0; a < table.agents.size(); ++a) {
    std::size_t w = table.agents[a].size();
    for (std::size_t e = 0; e < table.envs.size(); ++e) {
      w = std::max(w, Cell(table.score[e][a], table.stderr_[e][a]).size() + 1);
    }
    widths.push_back(w);
  }
  out << Pad("env", env_width);
  for (std::size_t a = 0; a < table.agents.size(); ++a) {
    out << "  " << Pad(table.agents[a], widths[a]);
  }
  out << "\n";
  for (std::size_t e = 0; e < table.envs.size(); ++e) {
    out << Pad(table.envs[e], env_width);
    for (std::size_t a = 0; a < table.agents.size(); ++a) {
      const std::string cell = Cell(table.score[e][a], table.stderr_[e][a]);
      out << "  ";
      if (table.is_best(e, a)) {
        if (color) {
          out << "\x1b[1m" << cell << "\x1b[0m" << std::string(widths[a] - cell.size(), ' ');
        } else {
          out << Pad(cell + "*", widths[a]);
        }
      } else {
        out << Pad(cell, widths[a]);
      }
    }
    out << "\n";
  }
  out << "\n";
  for (std::size_t e = 0; e < table.envs.size(); ++e) {
    out << "ranking " << table.envs[e] << ":";
    for (std::size_t r = 0; r < table.ranking[e].size(); ++r) {
      const std::size_t a = table.ranking[e][r];
      out << (r == 0 ? " " : " > ") << table.agents[a] << " ("
          << FormatDouble(table.score[e][a]) << ")";
    }
    out << "\n";
  }
  return out.str();
}

std::string CompareCsv(const CompareTable& table) {
  std::ostringstream out;
  out << "env,rank,agent,score,stderr,best\n";
  for (std::size_t e = 0; e < table.envs.size(); ++e) {
    for (std::size_t r = 0; r < table.ranking[e].size(); ++r) {
      const std::size_t a = table.ranking[e][r];
      out << table.envs[e] << ',' << r + 1 << ',' << table.agents[a] << ','
          << FormatDouble(table.score[e][a]) << ','
          << FormatDouble(table.stderr_[e][a]) << ','
          << (table.is_best(e, a) ? 1 : 0) << '\n';
    }
  }
  return out.str();
}

std::string MetricsCsv(const MetricReport& report) {
  std::ostringstream out;
  out << "env,agent,score,stderr,best_step,runs,ema_coeff,sample_interval,"
         "sample_count\n";
  for (const auto& entry : report.entries) {
    out << entry.env << ',' << entry.agent << ',' << FormatDouble(entry.score)
        << ',' << FormatDouble(entry.stderr_at_best) << ','
        << report.sample_steps.at(entry.best_sample) << ',' << entry.runs << ','
        << FormatDouble(report.settings.ema_coeff) << ','
        << report.settings.sample_interval << ','
        << report.settings.sample_count << '\n';
  }
  return out.str();
}

std::string CurvesCsv(const MetricReport& report) {
  std::ostringstream out;
  out << "env,agent,step,mean_ema\n";
  for (const auto& entry : report.entries) {
    for (std::size_t j = 0; j < entry.curve.size(); ++j) {
      out << entry.env << ',' << entry.agent << ',' << report.sample_steps[j]
          << ',' << FormatDouble(entry.curve[j]) << '\n';
    }
  }
  return out.str();
}

std::string LearningCurveSvg(const MetricReport& report, std::size_t env) {
  constexpr double kWidth = 720.0;
  constexpr double kHeight = 420.0;
  constexpr double kLeft = 64.0;
  constexpr double kRight = 180.0;
  constexpr double kTop = 36.0;
  constexpr double kBottom = 48.0;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  double lo = 0.0;
  double hi = 0.0;
  for (std::size_t a = 0; a < report.agents.size(); ++a) {
    for (double v : report.at(env, a).curve) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (hi <= lo) hi = lo + 1.0;
  const double x_max = static_cast<double>(report.sample_steps.back());
  auto x_of = [&](double step) { return kLeft + plot_w * step / x_max; };
  auto y_of = [&](double v) { return kTop + plot_h * (1.0 - (v - lo) / (hi - lo)); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kLeft << "\" y=\"20\" font-size=\"14\">" << report.envs[env]
      << ": mean EMA of episode return (ema_coeff "
      << FormatDouble(report.settings.ema_coeff) << ")</text>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\""
      << kLeft + plot_w << "\" y2=\"" << kTop + plot_h << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
      << "\" y2=\"" << kTop + plot_h << "\" stroke=\"black\"/>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    const double v = lo + (hi - lo) * tick / 4.0;
    const double step = x_max * tick / 4.0;
    out << "<text x=\"" << kLeft - 6 << "\" y=\"" << y_of(v) + 4
        << "\" text-anchor=\"end\">" << FormatDouble(std::round(v * 1000) / 1000)
        << "</text>\n";
    out << "<text x=\"" << x_of(step) << "\" y=\"" << kTop + plot_h + 16
        << "\" text-anchor=\"middle\">" << static_cast<std::uint64_t>(step)
        << "</text>\n";
  }
  out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 10
      << "\" text-anchor=\"middle\">step</text>\n";
  for (std::size_t a = 0; a < report.agents.size(); ++a) {
    const char* color = kPalette[a % std::size(kPalette)];
    const auto& curve = report.at(env, a).curve;
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    out << x_of(0) << ',' << y_of(0.0);
    for (std::size_t j = 0; j < curve.size(); ++j) {
      out << ' ' << x_of(static_cast<double>(report.sample_steps[j])) << ','
          << y_of(curve[j]);
    }
    out << "\"/>\n";
    const double ly = kTop + 14.0 + 18.0 * a;
    out << "<line x1=\"" << kLeft + plot_w + 12 << "\" y1=\"" << ly - 4
        << "\" x2=\"" << kLeft + plot_w + 32 << "\" y2=\"" << ly - 4
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kLeft + plot_w + 38 << "\" y=\"" << ly << "\">"
        << report.agents[a] << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace crl::harness
