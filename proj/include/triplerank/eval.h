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

#ifndef TRIPLERANK_EVAL_H_
#define TRIPLERANK_EVAL_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "triplerank/errors.h"
#include "triplerank/model.h"

namespace triplerank {

// (person, value) -> score for one relation.
using ScoreMap = std::map<LabelPair, int>;

class KeyMismatchError : public ValidationError {
 public:
  KeyMismatchError(std::vector<LabelPair> missing, std::vector<LabelPair> extra);

  // Gold keys without a prediction / predictions without a gold key.
  const std::vector<LabelPair> &missing() const { return missing_; }
  const std::vector<LabelPair> &extra() const { return extra_; }

 private:
  std::vector<LabelPair> missing_;
  std::vector<LabelPair> extra_;
};

// Throws KeyMismatchError unless both maps have the same keys.
void CheckKeys(const ScoreMap &pred, const ScoreMap &gold);

// Fraction of triples with |pred - gold| <= window.
double Accuracy(const ScoreMap &pred, const ScoreMap &gold, int window = 2);

double AverageScoreDiff(const ScoreMap &pred, const ScoreMap &gold);

struct TauOptions {
  bool tau_b = true;  // tie-corrected; tau-a otherwise
  // Degenerate groups (one candidate, or no tau-b denominator) count as 0
  // instead of being skipped.
  bool include_singletons = false;
  // One group over all triples instead of per-person groups.
  bool pooled = false;
};

struct TauResult {
  double mean = 0;
  size_t groups = 0;   // groups contributing to the mean
  size_t skipped = 0;  // degenerate groups left out
};

// Tau of two paired score lists; nullopt when undefined (fewer than two
// items, or a zero tau-b denominator).
std::optional<double> KendallTau(std::span<const int> x, std::span<const int> y,
                                 bool tau_b = true);

// Mean per-person tau. With no contributing group the mean is 0.
TauResult MeanKendallTau(const ScoreMap &pred, const ScoreMap &gold,
                         const TauOptions &options = {});

struct EvalOptions {
  int accuracy_window = 2;
  TauOptions tau;
};

struct EvalRow {
  std::string name;
  size_t triples = 0;
  double accuracy = 0;
  double asd = 0;
  double tau = 0;
  size_t tau_groups = 0;
};

EvalRow Evaluate(std::string name, const ScoreMap &pred, const ScoreMap &gold,
                 const EvalOptions &options = {});

// Triple-count weighted mean of each metric. Throws ValidationError when the
// total count is zero.
EvalRow WeightedSummary(std::span<const EvalRow> rows,
                        std::string name = "overall");

// entry[true][predicted].
using ConfusionMatrix = std::array<std::array<uint64_t, 8>, 8>;

ConfusionMatrix Confusion(const ScoreMap &pred, const ScoreMap &gold);

// Tab-separated 8x8 layout: a header of predicted scores, one row per true
// score.
std::string FormatConfusion(const ConfusionMatrix &m);

enum class ReportFormat { kTable, kTsv, kJsonLines };
std::optional<ReportFormat> ParseReportFormat(std::string_view s);
std::string FormatReport(std::span<const EvalRow> rows, ReportFormat format);

// Reads "<person>\t<value>\t<score>[\t...]" lines; extra columns are
// ignored. Scores must be integers in 0..7.
std::vector<std::pair<LabelPair, int>> ParseScoreLines(
    std::string_view contents, const std::string &source);

}  // namespace triplerank

#endif  // TRIPLERANK_EVAL_H_
