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

#ifndef TRIPLERANK_STRATEGIES_H_
#define TRIPLERANK_STRATEGIES_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "triplerank/cooccur.h"
#include "triplerank/model.h"

namespace triplerank {

inline constexpr int kMaxScore = 7;

// A candidate value for one person and relation. Nationalities carry their
// lexicon aliases; professions match on the label only.
struct Candidate {
  std::string label;
  std::vector<std::string> aliases;
};

struct Mention {
  size_t offset = 0;
  size_t length = 0;
};

// Earliest case-insensitive, word-bounded occurrence of any of `terms` in
// `text`; at equal offsets the longest term wins.
std::optional<Mention> FirstMention(std::string_view text,
                                    std::span<const std::string> terms);

// Awards 7 to the candidate mentioned first in the abstract and 0 to all
// others (all 0 without a mention). Ties at the same offset go to the longer
// match, then to the lexicographically smaller label.
std::map<std::string, int> AbstractScore(std::string_view abstract,
                                         std::span<const Candidate> candidates);

// Log-scaled 0..7 score of count `c` relative to the largest count `max_count`
// of the same (person, relation): round-half-up(7 ln(1+c) / ln(1+max)), with
// 0 for c = 0.
int ScaleCount(uint64_t count, uint64_t max_count);

std::map<std::string, int> CountScore(
    const std::map<std::string, uint64_t> &counts);

enum class Strategy { kAbstracts, kCounts, kBoth };

std::string_view StrategyName(Strategy s);
std::optional<Strategy> ParseStrategy(std::string_view s);

struct ScoringConfig {
  int default_score = 4;
  Strategy strategy = Strategy::kBoth;
  std::vector<Relation> relations = {Relation::kProfession,
                                     Relation::kNationality};
  int workers = 1;
};

struct FusedScore {
  int score = 0;
  bool defaulted = false;

  friend bool operator==(const FusedScore &, const FusedScore &) = default;
};

// max(a, b), or the configured default when both are 0.
FusedScore Fuse(int abstract_score, int count_score, int default_score);

struct ScoredTriple {
  std::string person;
  Relation relation = Relation::kProfession;
  std::string value;
  int score = 0;
  int abstract_score = 0;
  int count_score = 0;
  bool defaulted = false;

  friend bool operator==(const ScoredTriple &, const ScoredTriple &) = default;
};

struct ScoreResult {
  std::vector<ScoredTriple> triples;  // sorted by person, relation, value
  std::vector<std::string> warnings;
};

// Scores every KB pair of the configured relations.
ScoreResult ScoreAll(const KnowledgeBase &kb, const EntityCatalog &catalog,
                     const AbstractStore &abstracts,
                     const CooccurrenceIndex &index,
                     const ScoringConfig &config);

// "<person>\t<value>\t<score>" per triple, plus
// "\t<abstract>\t<count>\t<defaulted 0|1>" with provenance.
std::string FormatPredictions(std::span<const ScoredTriple> triples,
                              bool provenance);

}  // namespace triplerank

#endif  // TRIPLERANK_STRATEGIES_H_
