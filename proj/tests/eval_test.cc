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

#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "triplerank/eval.h"

namespace triplerank {
namespace {

ScoreMap Scores(std::initializer_list<std::tuple<const char *, const char *, int>>
                    rows) {
  ScoreMap m;
  for (const auto &[p, v, s] : rows) m[{p, v}] = s;
  return m;
}

// Tau-b from the sign matrix: sum sgn(dx) sgn(dy) over the product of the
// per-variable sums of sgn^2, all over ordered pairs.
std::optional<double> SignMatrixTauB(const std::vector<int> &x,
                                     const std::vector<int> &y) {
  auto sgn = [](int v) { return (v > 0) - (v < 0); };
  double num = 0, sx = 0, sy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    for (size_t j = 0; j < x.size(); ++j) {
      int a = sgn(x[i] - x[j]), b = sgn(y[i] - y[j]);
      num += a * b;
      sx += a * a;
      sy += b * b;
    }
  }
  if (sx == 0 || sy == 0) return std::nullopt;
  return num / std::sqrt(sx * sy);
}

TEST_CASE("accuracy and average score difference") {
  auto gold = Scores({{"p", "a", 0}, {"p", "b", 3}, {"q", "c", 7}, {"q", "d", 5}});
  auto pred = Scores({{"p", "a", 2}, {"p", "b", 6}, {"q", "c", 7}, {"q", "d", 0}});
  CHECK(Accuracy(pred, gold) == 0.5);
  CHECK(Accuracy(pred, gold, 3) == 0.75);
  CHECK(Accuracy(pred, gold, 0) == 0.25);
  CHECK(AverageScoreDiff(pred, gold) == 2.5);
  CHECK(Accuracy(gold, gold) == 1.0);
  CHECK(AverageScoreDiff(gold, gold) == 0.0);
}

TEST_CASE("accuracy window boundary") {
  auto gold = Scores({{"p", "a", 3}});
  CHECK(Accuracy(Scores({{"p", "a", 5}}), gold) == 1.0);
  CHECK(Accuracy(Scores({{"p", "a", 1}}), gold) == 1.0);
  CHECK(Accuracy(Scores({{"p", "a", 6}}), gold) == 0.0);
  CHECK(Accuracy(Scores({{"p", "a", 0}}), gold) == 0.0);
}

TEST_CASE("worst case difference") {
  auto gold = Scores({{"p", "a", 0}, {"p", "b", 7}});
  auto pred = Scores({{"p", "a", 7}, {"p", "b", 0}});
  CHECK(AverageScoreDiff(pred, gold) == 7.0);
  CHECK(Accuracy(pred, gold) == 0.0);
  CHECK(MeanKendallTau(pred, gold).mean == -1.0);
}

TEST_CASE("key mismatch is reported both ways") {
  auto gold = Scores({{"p", "a", 1}, {"p", "b", 2}});
  auto pred = Scores({{"p", "a", 1}, {"p", "z", 2}});
  try {
    CheckKeys(pred, gold);
    FAIL("expected KeyMismatchError");
  } catch (const KeyMismatchError &e) {
    CHECK(e.missing() == std::vector<LabelPair>{{"p", "b"}});
    CHECK(e.extra() == std::vector<LabelPair>{{"p", "z"}});
  }
  CHECK_THROWS_AS(Accuracy(pred, gold), ValidationError);
}

TEST_CASE("kendall tau on a single group") {
  std::vector<int> x{1, 2, 2, 3}, y{1, 3, 2, 4};
  auto t = KendallTau(x, y);
  REQUIRE(t);
  CHECK(*t == doctest::Approx(5.0 / std::sqrt(30.0)).epsilon(1e-12));
  CHECK(*t == doctest::Approx(*SignMatrixTauB(x, y)).epsilon(1e-12));
  auto a = KendallTau(x, y, false);
  CHECK(*a == doctest::Approx(5.0 / 6.0).epsilon(1e-12));

  std::vector<int> up{1, 2, 3}, down{3, 2, 1};
  CHECK(*KendallTau(up, up) == 1.0);
  CHECK(*KendallTau(up, down) == -1.0);
}

TEST_CASE("degenerate tau groups") {
  std::vector<int> one{4};
  CHECK_FALSE(KendallTau(one, one));
  std::vector<int> flat{2, 2, 2}, some{1, 2, 3};
  CHECK_FALSE(KendallTau(flat, some));
  CHECK(KendallTau(flat, some, false) == 0.0);

  auto gold = Scores({{"p", "a", 1}, {"p", "b", 2}, {"q", "c", 5}});
  auto pred = Scores({{"p", "a", 1}, {"p", "b", 2}, {"q", "c", 0}});
  auto skipped = MeanKendallTau(pred, gold);
  CHECK(skipped.mean == 1.0);
  CHECK(skipped.groups == 1);
  CHECK(skipped.skipped == 1);
  TauOptions with;
  with.include_singletons = true;
  auto counted = MeanKendallTau(pred, gold, with);
  CHECK(counted.mean == 0.5);
  CHECK(counted.groups == 2);

  auto lonely = Scores({{"p", "a", 3}});
  CHECK(MeanKendallTau(lonely, lonely).mean == 0.0);
  CHECK(MeanKendallTau(lonely, lonely).groups == 0);
}

TEST_CASE("pooled tau uses one group") {
  auto gold = Scores({{"p", "a", 1}, {"q", "b", 2}, {"r", "c", 3}});
  auto pred = Scores({{"p", "a", 3}, {"q", "b", 5}, {"r", "c", 7}});
  TauOptions pooled;
  pooled.pooled = true;
  auto t = MeanKendallTau(pred, gold, pooled);
  CHECK(t.mean == 1.0);
  CHECK(t.groups == 1);
  CHECK(MeanKendallTau(pred, gold).groups == 0);
}

TEST_CASE("metrics agree with brute-force oracles") {
  std::mt19937_64 rng(71);
  for (int round = 0; round < 300; ++round) {
    ScoreMap gold, pred;
    int persons = 1 + static_cast<int>(rng() % 12);
    for (int p = 0; p < persons; ++p) {
      int n = 1 + static_cast<int>(rng() % 6);
      for (int v = 0; v < n; ++v) {
        LabelPair key{"p" + std::to_string(p), "v" + std::to_string(v)};
        gold[key] = static_cast<int>(rng() % 8);
        pred[key] = static_cast<int>(rng() % 8);
      }
    }
    double hits = 0, diff = 0, tau_sum = 0;
    int tau_n = 0;
    std::map<std::string, std::pair<std::vector<int>, std::vector<int>>> groups;
    for (const auto &[k, g] : gold) {
      hits += std::abs(pred[k] - g) <= 2;
      diff += std::abs(pred[k] - g);
      groups[k.first].first.push_back(pred[k]);
      groups[k.first].second.push_back(g);
    }
    for (const auto &[p, xy] : groups) {
      if (auto t = SignMatrixTauB(xy.first, xy.second)) {
        tau_sum += *t;
        ++tau_n;
      }
    }
    auto row = Evaluate("r", pred, gold);
    CHECK(row.triples == gold.size());
    CHECK(row.accuracy == doctest::Approx(hits / gold.size()).epsilon(1e-12));
    CHECK(row.asd == doctest::Approx(diff / gold.size()).epsilon(1e-12));
    CHECK(row.tau ==
          doctest::Approx(tau_n ? tau_sum / tau_n : 0.0).epsilon(1e-12));
    CHECK(row.tau_groups == static_cast<size_t>(tau_n));
    CHECK(row.accuracy >= 0.0);
    CHECK(row.accuracy <= 1.0);
    CHECK(row.asd <= 7.0);
    CHECK(row.tau >= -1.0 - 1e-12);
    CHECK(row.tau <= 1.0 + 1e-12);
  }
}

TEST_CASE("weighted summary") {
  EvalRow prof{"profession", 513, 0.62, 2.03, 0.34, 0};
  EvalRow nat{"nationality", 197, 0.66, 1.82, 0.38, 0};
  std::vector<EvalRow> rows{prof, nat};
  auto all = WeightedSummary(rows);
  CHECK(all.name == "overall");
  CHECK(all.triples == 710);
  CHECK(all.accuracy == doctest::Approx(0.6311).epsilon(1e-4));
  CHECK(all.asd == doctest::Approx(1.9718).epsilon(1e-4));
  CHECK(all.tau == doctest::Approx(0.3511).epsilon(1e-4));

  std::vector<EvalRow> single{prof};
  auto same = WeightedSummary(single);
  CHECK(same.accuracy == doctest::Approx(0.62).epsilon(1e-12));
  CHECK(same.asd == doctest::Approx(2.03).epsilon(1e-12));

  std::vector<EvalRow> none;
  CHECK_THROWS_AS(WeightedSummary(none), ValidationError);
}

TEST_CASE("confusion matrix properties") {
  std::mt19937_64 rng(73);
  for (int round = 0; round < 100; ++round) {
    ScoreMap gold, pred;
    int n = static_cast<int>(rng() % 200);
    for (int i = 0; i < n; ++i) {
      LabelPair key{"p" + std::to_string(i / 4), "v" + std::to_string(i)};
      gold[key] = static_cast<int>(rng() % 8);
      pred[key] = rng() % 3 == 0 ? gold[key] : static_cast<int>(rng() % 8);
    }
    auto m = Confusion(pred, gold);
    uint64_t total = 0, diagonal = 0, within = 0;
    for (int t = 0; t < 8; ++t) {
      uint64_t row = 0;
      for (int p = 0; p < 8; ++p) {
        total += m[t][p];
        row += m[t][p];
        if (t == p) diagonal += m[t][p];
        if (std::abs(t - p) <= 2) within += m[t][p];
      }
      uint64_t expected_row = 0;
      for (const auto &[k, g] : gold) expected_row += g == t;
      CHECK(row == expected_row);
    }
    CHECK(total == gold.size());
    if (n > 0) {
      CHECK(static_cast<double>(within) / n ==
            doctest::Approx(Accuracy(pred, gold)).epsilon(1e-12));
      CHECK(static_cast<double>(diagonal) / n ==
            doctest::Approx(Accuracy(pred, gold, 0)).epsilon(1e-12));
    }
  }
}

TEST_CASE("confusion output format") {
  auto gold = Scores({{"p", "a", 7}, {"p", "b", 0}});
  auto pred = Scores({{"p", "a", 7}, {"p", "b", 3}});
  auto text = FormatConfusion(Confusion(pred, gold));
  CHECK(text.rfind("true\\pred\t0\t1\t2\t3\t4\t5\t6\t7\n0\t0\t0\t0\t1\t0\t0\t0\t0\n",
                   0) == 0);
  CHECK(text.find("\n7\t0\t0\t0\t0\t0\t0\t0\t1\n") != std::string::npos);
}

TEST_CASE("report formats") {
  std::vector<EvalRow> rows{{"profession", 2, 1.0, 0.0, 1.0, 1},
                            {"overall", 2, 0.5, 1.25, 0.1, 1}};
  CHECK(FormatReport(rows, ReportFormat::kTsv) ==
        "relation\ttriples\taccuracy\tasd\ttau\n"
        "profession\t2\t1\t0\t1\n"
        "overall\t2\t0.5\t1.25\t0.1\n");
  auto table = FormatReport(rows, ReportFormat::kTable);
  CHECK(table.find("    1.00     0.00     1.00") != std::string::npos);
  auto lines = FormatReport(rows, ReportFormat::kJsonLines);
  auto first = nlohmann::json::parse(lines.substr(0, lines.find('\n')));
  CHECK(first["relation"] == "profession");
  CHECK(first["kendall_tau"] == 1.0);
  CHECK(ParseReportFormat("json-lines") == ReportFormat::kJsonLines);
  CHECK_FALSE(ParseReportFormat("xml"));
}

TEST_CASE("score line parsing") {
  auto rows = ParseScoreLines("# c\nA\tB\t3\nA\tC\t0\textra\n\n", "s.tsv");
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].first == LabelPair{"A", "C"});
  CHECK_THROWS_AS(ParseScoreLines("A\tB\n", "s.tsv"), ParseError);
  CHECK_THROWS_AS(ParseScoreLines("A\tB\tx\n", "s.tsv"), ParseError);
  CHECK_THROWS_AS(ParseScoreLines("A\tB\t8\n", "s.tsv"), ValidationError);
}

}  // namespace
}  // namespace triplerank
