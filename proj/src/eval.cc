// Copyright 2026 The Triplerank Authors.
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

#include "triplerank/eval.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <json.hpp>

#include "triplerank/text.h"

namespace triplerank {

namespace {

std::string DescribeMismatch(const std::vector<LabelPair> &missing,
                             const std::vector<LabelPair> &extra) {
  constexpr size_t kShown = 10;
  std::string out = "prediction and gold keys differ";
  auto list = [&](const char *what, const std::vector<LabelPair> &keys) {
    if (keys.empty()) return;
    out += "; " + std::to_string(keys.size()) + " " + what + ":";
    for (size_t i = 0; i < keys.size() && i < kShown; ++i) {
      out += " (" + keys[i].first + ", " + keys[i].second + ")";
    }
    if (keys.size() > kShown) out += " ...";
  };
  list("missing predictions", missing);
  list("extra predictions", extra);
  return out;
}

}  // namespace

KeyMismatchError::KeyMismatchError(std::vector<LabelPair> missing,
                                   std::vector<LabelPair> extra)
    : ValidationError(DescribeMismatch(missing, extra)),
      missing_(std::move(missing)),
      extra_(std::move(extra)) {}

void CheckKeys(const ScoreMap &pred, const ScoreMap &gold) {
  std::vector<LabelPair> missing, extra;
  for (const auto &[key, score] : gold) {
    if (pred.count(key) == 0) missing.push_back(key);
  }
  for (const auto &[key, score] : pred) {
    if (gold.count(key) == 0) extra.push_back(key);
  }
  if (!missing.empty() || !extra.empty()) {
    throw KeyMismatchError(std::move(missing), std::move(extra));
  }
}

double Accuracy(const ScoreMap &pred, const ScoreMap &gold, int window) {
  CheckKeys(pred, gold);
  if (gold.empty()) return 0.0;
  size_t hits = 0;
  for (const auto &[key, g] : gold) {
    if (std::abs(pred.at(key) - g) <= window) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(gold.size());
}

double AverageScoreDiff(const ScoreMap &pred, const ScoreMap &gold) {
  CheckKeys(pred, gold);
  if (gold.empty()) return 0.0;
  long total = 0;
  for (const auto &[key, g] : gold) total += std::abs(pred.at(key) - g);
  return static_cast<double>(total) / static_cast<double>(gold.size());
}

std::optional<double> KendallTau(std::span<const int> x, std::span<const int> y,
                                 bool tau_b) {
  const size_t n = x.size();
  if (n < 2 || y.size() != n) return std::nullopt;
  long concordant = 0, discordant = 0, ties_x = 0, ties_y = 0;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      int dx = x[i] - x[j];
      int dy = y[i] - y[j];
      if (dx == 0) ++ties_x;
      if (dy == 0) ++ties_y;
      if (dx == 0 || dy == 0) continue;
      if ((dx > 0) == (dy > 0)) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2;
  const double diff = static_cast<double>(concordant - discordant);
  if (!tau_b) return diff / pairs;
  double denom = (pairs - static_cast<double>(ties_x)) *
                 (pairs - static_cast<double>(ties_y));
  if (denom <= 0) return std::nullopt;
  return diff / std::sqrt(denom);
}

TauResult MeanKendallTau(const ScoreMap &pred, const ScoreMap &gold,
                         const TauOptions &options) {
  CheckKeys(pred, gold);
  // Keys are ordered by person, so each person's candidates are adjacent.
  std::vector<std::vector<int>> xs, ys;
  std::string current;
  for (const auto &[key, g] : gold) {
    if (xs.empty() || (!options.pooled && key.first != current)) {
      xs.emplace_back();
      ys.emplace_back();
      current = key.first;
    }
    xs.back().push_back(pred.at(key));
    ys.back().push_back(g);
  }
  TauResult result;
  double sum = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    auto tau = KendallTau(xs[i], ys[i], options.tau_b);
    if (tau) {
      sum += *tau;
      ++result.groups;
    } else if (options.include_singletons) {
      ++result.groups;
    } else {
      ++result.skipped;
    }
  }
  result.mean = result.groups == 0 ? 0.0 : sum / result.groups;
  return result;
}

EvalRow Evaluate(std::string name, const ScoreMap &pred, const ScoreMap &gold,
                 const EvalOptions &options) {
  EvalRow row;
  row.name = std::move(name);
  row.triples = gold.size();
  row.accuracy = Accuracy(pred, gold, options.accuracy_window);
  row.asd = AverageScoreDiff(pred, gold);
  TauResult tau = MeanKendallTau(pred, gold, options.tau);
  row.tau = tau.mean;
  row.tau_groups = tau.groups;
  return row;
}

EvalRow WeightedSummary(std::span<const EvalRow> rows, std::string name) {
  EvalRow out;
  out.name = std::move(name);
  double acc = 0, asd = 0, tau = 0;
  for (const auto &r : rows) {
    double n = static_cast<double>(r.triples);
    acc += r.accuracy * n;
    asd += r.asd * n;
    tau += r.tau * n;
    out.triples += r.triples;
    out.tau_groups += r.tau_groups;
  }
  if (out.triples == 0) {
    throw ValidationError("weighted summary over zero triples");
  }
  double total = static_cast<double>(out.triples);
  out.accuracy = acc / total;
  out.asd = asd / total;
  out.tau = tau / total;
  return out;
}

ConfusionMatrix Confusion(const ScoreMap &pred, const ScoreMap &gold) {
  CheckKeys(pred, gold);
  ConfusionMatrix m{};
  for (const auto &[key, g] : gold) {
    int p = pred.at(key);
    if (g < 0 || g > 7 || p < 0 || p > 7) {
      throw ValidationError("score outside 0..7 for (" + key.first + ", " +
                            key.second + ")");
    }
    ++m[g][p];
  }
  return m;
}

std::string FormatConfusion(const ConfusionMatrix &m) {
  std::string out = "true\\pred";
  for (int p = 0; p < 8; ++p) out += "\t" + std::to_string(p);
  out += "\n";
  for (int t = 0; t < 8; ++t) {
    out += std::to_string(t);
    for (int p = 0; p < 8; ++p) out += "\t" + std::to_string(m[t][p]);
    out += "\n";
  }
  return out;
}

std::optional<ReportFormat> ParseReportFormat(std::string_view s) {
  if (s == "table") return ReportFormat::kTable;
  if (s == "tsv") return ReportFormat::kTsv;
  if (s == "json-lines") return ReportFormat::kJsonLines;
  return std::nullopt;
}

std::string FormatReport(std::span<const EvalRow> rows, ReportFormat format) {
  std::string out;
  switch (format) {
    case ReportFormat::kTable: {
      char buf[128];
      std::snprintf(buf, sizeof(buf), "%-12s %8s %8s %8s %8s\n", "relation",
                    "triples", "accuracy", "asd", "tau");
      out += buf;
      for (const auto &r : rows) {
        std::snprintf(buf, sizeof(buf), "%-12s %8zu %8.2f %8.2f %8.2f\n",
                      r.name.c_str(), r.triples, r.accuracy, r.asd, r.tau);
        out += buf;
      }
      break;
    }
    case ReportFormat::kTsv:
      out += "relation\ttriples\taccuracy\tasd\ttau\n";
      for (const auto &r : rows) {
        out += r.name + "\t" + std::to_string(r.triples) + "\t" +
               FormatDouble(r.accuracy) + "\t" + FormatDouble(r.asd) + "\t" +
               FormatDouble(r.tau) + "\n";
      }
      break;
    case ReportFormat::kJsonLines:
      for (const auto &r : rows) {
        nlohmann::ordered_json j;
        j["relation"] = r.name;
        j["triples"] = r.triples;
        j["accuracy"] = r.accuracy;
        j["asd"] = r.asd;
        j["kendall_tau"] = r.tau;
        j["tau_groups"] = r.tau_groups;
        out += j.dump() + "\n";
      }
      break;
  }
  return out;
}

std::vector<std::pair<LabelPair, int>> ParseScoreLines(
    std::string_view contents, const std::string &source) {
  std::vector<std::pair<LabelPair, int>> out;
  size_t line_no = 0, start = 0;
  while (start < contents.size()) {
    size_t end = contents.find('\n', start);
    if (end == std::string_view::npos) end = contents.size();
    std::string_view line = StripCr(contents.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    auto f = Split(line, '\t');
    if (f.size() < 3) {
      throw ParseError("expected <person>\\t<value>\\t<score>", source,
                       line_no);
    }
    auto score = ParseInt64(f[2]);
    if (!score) {
      throw ParseError("non-integer score '" + std::string(f[2]) + "'",
                       source, line_no);
    }
    if (*score < 0 || *score > 7) {
      throw ValidationError(source + ":" + std::to_string(line_no) +
                            ": score " + std::to_string(*score) +
                            " outside 0..7");
    }
    out.push_back({{std::string(f[0]), std::string(f[1])},
                   static_cast<int>(*score)});
  }
  return out;
}

}  // namespace triplerank
