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

#include "triplerank/strategies.h"

#include <algorithm>
#include <cmath>
#include <thread>

#include "triplerank/text.h"

namespace triplerank {

namespace {

bool IsWordByte(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z') || c == '_' || c >= 0x80;
}

bool WordBounded(std::string_view text, size_t offset, size_t length) {
  if (offset > 0 && IsWordByte(text[offset - 1])) return false;
  size_t end = offset + length;
  if (end < text.size() && IsWordByte(text[end])) return false;
  return true;
}

std::optional<Mention> FirstMentionLowered(std::string_view lowered,
                                           std::span<const std::string> terms) {
  std::optional<Mention> best;
  for (const auto &term : terms) {
    if (term.empty()) continue;
    std::string needle = AsciiLower(term);
    for (size_t pos = lowered.find(needle); pos != std::string_view::npos;
         pos = lowered.find(needle, pos + 1)) {
      if (best && pos > best->offset) break;
      if (!WordBounded(lowered, pos, needle.size())) continue;
      if (!best || pos < best->offset ||
          (pos == best->offset && needle.size() > best->length)) {
        best = Mention{pos, needle.size()};
      }
      break;
    }
  }
  return best;
}

}  // namespace

std::optional<Mention> FirstMention(std::string_view text,
                                    std::span<const std::string> terms) {
  return FirstMentionLowered(AsciiLower(text), terms);
}

std::map<std::string, int> AbstractScore(
    std::string_view abstract, std::span<const Candidate> candidates) {
  std::map<std::string, int> scores;
  const std::string lowered = AsciiLower(abstract);
  const Candidate *winner = nullptr;
  Mention winning;
  for (const auto &c : candidates) {
    scores[c.label] = 0;
    std::vector<std::string> terms{c.label};
    terms.insert(terms.end(), c.aliases.begin(), c.aliases.end());
    auto m = FirstMentionLowered(lowered, terms);
    if (!m) continue;
    bool better = winner == nullptr || m->offset < winning.offset ||
                  (m->offset == winning.offset &&
                   (m->length > winning.length ||
                    (m->length == winning.length && c.label < winner->label)));
    if (better) {
      winner = &c;
      winning = *m;
    }
  }
  if (winner != nullptr) scores[winner->label] = kMaxScore;
  return scores;
}

int ScaleCount(uint64_t count, uint64_t max_count) {
  if (count == 0 || max_count == 0) return 0;
  if (count >= max_count) return kMaxScore;
  double ratio = std::log1p(static_cast<double>(count)) /
                 std::log1p(static_cast<double>(max_count));
  int score = static_cast<int>(std::floor(kMaxScore * ratio + 0.5));
  return std::clamp(score, 0, kMaxScore);
}

std::map<std::string, int> CountScore(
    const std::map<std::string, uint64_t> &counts) {
  uint64_t max_count = 0;
  for (const auto &[label, c] : counts) max_count = std::max(max_count, c);
  std::map<std::string, int> scores;
  for (const auto &[label, c] : counts) scores[label] = ScaleCount(c, max_count);
  return scores;
}

std::string_view StrategyName(Strategy s) {
  switch (s) {
    case Strategy::kAbstracts: return "abstracts";
    case Strategy::kCounts: return "counts";
    case Strategy::kBoth: return "both";
  }
  return "both";
}

std::optional<Strategy> ParseStrategy(std::string_view s) {
  if (s == "abstracts") return Strategy::kAbstracts;
  if (s == "counts") return Strategy::kCounts;
  if (s == "both") return Strategy::kBoth;
  return std::nullopt;
}

FusedScore Fuse(int abstract_score, int count_score, int default_score) {
  int best = std::max(abstract_score, count_score);
  if (best > 0) return {best, false};
  return {default_score, true};
}

namespace {

struct PersonResult {
  std::vector<ScoredTriple> triples;
  std::vector<std::string> warnings;
};

PersonResult ScorePerson(const std::string &person, const KnowledgeBase &kb,
                         const EntityCatalog &catalog,
                         const AbstractStore &abstracts,
                         const CooccurrenceIndex &index,
                         const ScoringConfig &config) {
  PersonResult out;
  const CatalogEntry *person_entry = catalog.persons.Find(person);
  const bool use_abstracts = config.strategy != Strategy::kCounts;
  const bool use_counts = config.strategy != Strategy::kAbstracts;
  bool warned = false;

  for (Relation relation : config.relations) {
    std::vector<std::string> values = kb.ValuesFor(person, relation);
    if (values.empty()) continue;
    const EntityTable &table = catalog.ValuesFor(relation);

    std::map<std::string, int> abstract_scores;
    if (use_abstracts) {
      std::vector<Candidate> candidates;
      for (const auto &v : values) {
        candidates.push_back({v, catalog.AliasesFor(relation, v)});
      }
      abstract_scores = AbstractScore(abstracts.Get(person), candidates);
    }

    std::map<std::string, int> count_scores;
    if (use_counts) {
      std::map<std::string, uint64_t> counts;
      bool has_id = person_entry != nullptr && person_entry->id.has_value();
      if (!has_id && !warned) {
        out.warnings.push_back("person '" + person +
                               "' has no entity id; co-occurrence counts "
                               "treated as zero");
        warned = true;
      }
      for (const auto &v : values) {
        const CatalogEntry *entry = table.Find(v);
        uint64_t n = 0;
        if (has_id && entry != nullptr && entry->id) {
          n = index.Count(*person_entry->id, *entry->id);
        }
        counts[v] = n;
      }
      count_scores = CountScore(counts);
    }

    for (const auto &v : values) {
      ScoredTriple t;
      t.person = person;
      t.relation = relation;
      t.value = v;
      t.abstract_score = use_abstracts ? abstract_scores[v] : 0;
      t.count_score = use_counts ? count_scores[v] : 0;
      FusedScore fused =
          Fuse(t.abstract_score, t.count_score, config.default_score);
      t.score = fused.score;
      t.defaulted = fused.defaulted;
      out.triples.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace

ScoreResult ScoreAll(const KnowledgeBase &kb, const EntityCatalog &catalog,
                     const AbstractStore &abstracts,
                     const CooccurrenceIndex &index,
                     const ScoringConfig &config) {
  const std::vector<std::string> persons = kb.Persons();
  std::vector<PersonResult> results(persons.size());
  auto run = [&](size_t begin, size_t step) {
    for (size_t i = begin; i < persons.size(); i += step) {
      results[i] =
          ScorePerson(persons[i], kb, catalog, abstracts, index, config);
    }
  };
  size_t workers = std::clamp<size_t>(config.workers, 1, persons.size() + 1);
  if (workers <= 1) {
    run(0, 1);
  } else {
    std::vector<std::thread> threads;
    for (size_t w = 0; w < workers; ++w) threads.emplace_back(run, w, workers);
    for (auto &t : threads) t.join();
  }

  ScoreResult out;
  for (auto &r : results) {
    std::move(r.triples.begin(), r.triples.end(),
              std::back_inserter(out.triples));
    std::move(r.warnings.begin(), r.warnings.end(),
              std::back_inserter(out.warnings));
  }
  std::sort(out.triples.begin(), out.triples.end(),
            [](const ScoredTriple &a, const ScoredTriple &b) {
              if (a.person != b.person) return a.person < b.person;
              if (a.relation != b.relation) {
                return RelationName(a.relation) < RelationName(b.relation);
              }
              return a.value < b.value;
            });
  return out;
}

std::string FormatPredictions(std::span<const ScoredTriple> triples,
                              bool provenance) {
  std::string out;
  for (const auto &t : triples) {
    out += t.person + "\t" + t.value + "\t" + std::to_string(t.score);
    if (provenance) {
      out += "\t" + std::to_string(t.abstract_score) + "\t" +
             std::to_string(t.count_score) + "\t" + (t.defaulted ? "1" : "0");
    }
    out += "\n";
  }
  return out;
}

}  // namespace triplerank
