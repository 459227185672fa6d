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
#include <regex>
#include <string>
#include <vector>

#include "triplerank/cooccur.h"
#include "triplerank/model.h"
#include "triplerank/strategies.h"

namespace triplerank {
namespace {

std::vector<Candidate> Nationalities() {
  return {{"Germany", {"German"}},
          {"Netherlands", {"Dutch"}},
          {"United States of America", {"American", "US"}}};
}

TEST_CASE("first mention honours case and word boundaries") {
  std::vector<std::string> terms{"German"};
  CHECK(FirstMention("a GERMAN poet", terms)->offset == 2);
  CHECK_FALSE(FirstMention("a Germanic tribe", terms));
  CHECK_FALSE(FirstMention("the_german way", terms));
  CHECK(FirstMention("Germanic, then German.", terms)->offset == 15);
  CHECK_FALSE(FirstMention("", terms));
  // Non-ASCII letters count as part of a word.
  CHECK_FALSE(FirstMention("\xc3\xa9german", terms));
}

TEST_CASE("abstract scoring picks the earliest candidate") {
  SUBCASE("alias match") {
    auto s = AbstractScore("Piet Mondriaan was a Dutch painter who lived in "
                           "Germany and the US.",
                           Nationalities());
    CHECK(s.at("Netherlands") == 7);
    CHECK(s.at("Germany") == 0);
    CHECK(s.at("United States of America") == 0);
  }
  SUBCASE("profession label match") {
    std::vector<Candidate> profs{
        {"Businessperson", {}}, {"Computer scientist", {}}, {"Entrepreneur", {}}};
    auto s = AbstractScore(
        "An American computer scientist, entrepreneur and businessperson.",
        profs);
    CHECK(s.at("Computer scientist") == 7);
    CHECK(s.at("Entrepreneur") == 0);
    CHECK(s.at("Businessperson") == 0);
  }
  SUBCASE("empty abstract scores zero everywhere") {
    auto s = AbstractScore("", Nationalities());
    CHECK(s.size() == 3);
    for (const auto &[label, score] : s) CHECK(score == 0);
  }
  SUBCASE("no candidates") {
    CHECK(AbstractScore("anything", {}).empty());
  }
  SUBCASE("longer match wins at the same offset") {
    std::vector<Candidate> profs{{"Film", {}}, {"Film editor", {}}};
    auto s = AbstractScore("She was a film editor.", profs);
    CHECK(s.at("Film editor") == 7);
    CHECK(s.at("Film") == 0);
  }
  SUBCASE("identical match goes to the smaller label") {
    std::vector<Candidate> c{{"Zeta", {"Dutch"}}, {"Alpha", {"Dutch"}}};
    auto s = AbstractScore("Dutch", c);
    CHECK(s.at("Alpha") == 7);
    CHECK(s.at("Zeta") == 0);
  }
}

// Independent matcher: std::regex with \b and icase. ASCII text only, since
// std::regex word characters are [A-Za-z0-9_].
std::optional<std::pair<size_t, size_t>> RegexFirst(
    const std::string &text, const std::vector<std::string> &terms) {
  std::optional<std::pair<size_t, size_t>> best;
  for (const auto &t : terms) {
    std::string quoted = std::regex_replace(
        t, std::regex(R"([.^$|()\[\]{}*+?\\])"), R"(\$&)");
    std::regex re("\\b" + quoted + "\\b", std::regex::icase);
    std::smatch m;
    if (!std::regex_search(text, m, re)) continue;
    std::pair<size_t, size_t> here{static_cast<size_t>(m.position(0)),
                                   t.size()};
    if (!best || here.first < best->first ||
        (here.first == best->first && here.second > best->second)) {
      best = here;
    }
  }
  return best;
}

TEST_CASE("abstract scoring agrees with a regex oracle") {
  const std::vector<std::string> words{
      "Dutch",  "dutch",   "German",  "Germany", "Germanic", "american",
      "US",     "us",      "usa",     "Actor",   "actors",   "film",
      "editor", "Film editor", "the",  "a",      "_dutch",   "Dutch_",
      "2German", "poet",   "Netherlands", "netherlandish"};
  const std::vector<std::string> seps{" ", ", ", ". ", "-", "\n", "(", ")"};
  std::vector<Candidate> cands = Nationalities();
  cands.push_back({"Actor", {}});
  cands.push_back({"Film editor", {}});
  cands.push_back({"Editor", {}});
  std::mt19937_64 rng(61);
  for (int round = 0; round < 3000; ++round) {
    std::string text;
    for (int k = static_cast<int>(rng() % 12); k > 0; --k) {
      text += words[rng() % words.size()] + seps[rng() % seps.size()];
    }
    auto scores = AbstractScore(text, cands);
    std::optional<std::tuple<size_t, size_t, std::string>> winner;
    for (const auto &c : cands) {
      std::vector<std::string> terms{c.label};
      terms.insert(terms.end(), c.aliases.begin(), c.aliases.end());
      auto m = RegexFirst(text, terms);
      if (!m) continue;
      std::tuple<size_t, size_t, std::string> key{m->first, SIZE_MAX - m->second,
                                                  c.label};
      if (!winner || key < *winner) winner = key;
    }
    int sevens = 0;
    for (const auto &c : cands) {
      int expected = winner && std::get<2>(*winner) == c.label ? 7 : 0;
      CHECK_MESSAGE(scores.at(c.label) == expected, text);
      sevens += scores.at(c.label) == 7;
    }
    CHECK(sevens <= 1);
  }
}

TEST_CASE("count scaling examples") {
  auto s = CountScore({{"a", 100}, {"b", 10}, {"c", 0}});
  CHECK(s.at("a") == 7);
  CHECK(s.at("b") == 4);  // 7 ln 11 / ln 101 = 3.637
  CHECK(s.at("c") == 0);
  CHECK(CountScore({}).empty());
  auto zeros = CountScore({{"a", 0}, {"b", 0}});
  CHECK(zeros.at("a") == 0);
  CHECK(zeros.at("b") == 0);
  auto single = CountScore({{"only", 1}});
  CHECK(single.at("only") == 7);
  CHECK(ScaleCount(1, 3) == 4);  // 7 ln 2 / ln 4 = 3.5, rounds up
  CHECK(ScaleCount(0, 0) == 0);
}

TEST_CASE("count scaling properties") {
  std::mt19937_64 rng(67);
  for (int round = 0; round < 2000; ++round) {
    std::map<std::string, uint64_t> counts;
    int n = 1 + static_cast<int>(rng() % 8);
    uint64_t cap = rng() % 2 ? 20 : 1000000;
    for (int i = 0; i < n; ++i) counts["v" + std::to_string(i)] = rng() % cap;
    auto s = CountScore(counts);
    uint64_t top = 0;
    for (const auto &[k, c] : counts) top = std::max(top, c);
    for (const auto &[k, c] : counts) {
      int v = s.at(k);
      CHECK(v >= 0);
      CHECK(v <= 7);
      if (c == 0) CHECK(v == 0);
      if (c > 0 && c == top) CHECK(v == 7);
      for (const auto &[k2, c2] : counts) {
        if (c <= c2) CHECK(v <= s.at(k2));
      }
      if (c > 0) {
        long double x = 7.0L * std::log1p(static_cast<long double>(c)) /
                        std::log1p(static_cast<long double>(top));
        if (std::fabs(x - std::floor(x) - 0.5L) > 1e-9L) {
          CHECK(v == static_cast<int>(std::floor(x + 0.5L)));
        }
      }
    }
  }
}

TEST_CASE("fuse truth table") {
  for (int d = 0; d <= 7; ++d) {
    for (int a = 0; a <= 7; ++a) {
      for (int c = 0; c <= 7; ++c) {
        FusedScore f = Fuse(a, c, d);
        if (a == 0 && c == 0) {
          CHECK(f == FusedScore{d, true});
        } else {
          CHECK(f == FusedScore{std::max(a, c), false});
        }
      }
    }
  }
}

TEST_CASE("strategy names") {
  for (auto s : {Strategy::kAbstracts, Strategy::kCounts, Strategy::kBoth}) {
    CHECK(ParseStrategy(StrategyName(s)) == s);
  }
  CHECK_FALSE(ParseStrategy("average"));
}

struct World {
  EntityCatalog catalog;
  KnowledgeBase kb;
  AbstractStore abstracts;
  CooccurrenceIndex index;
};

World MakeWorld() {
  World w;
  auto id = [](const char *s) { return EntityId::Parse(s); };
  w.catalog.persons.Add({"Anna", id("/m/0a")});
  w.catalog.persons.Add({"Bert", id("/m/0b")});
  w.catalog.persons.Add({"Cleo", std::nullopt});
  w.catalog.professions.Add({"Actor", id("/m/0actor")});
  w.catalog.professions.Add({"Singer", id("/m/0singer")});
  w.catalog.professions.Add({"Harpsichordist", std::nullopt});
  w.catalog.nationalities.Add({"Germany", id("/m/0de")});
  w.catalog.nationalities.Add({"Netherlands", id("/m/0nl")});
  w.catalog.nationality_lexicon["Netherlands"] = {"Dutch"};
  w.kb.profession_pairs = {{"Anna", "Actor"}, {"Anna", "Singer"},
                           {"Bert", "Harpsichordist"}, {"Cleo", "Actor"}};
  w.kb.nationality_pairs = {{"Anna", "Germany"}, {"Anna", "Netherlands"},
                            {"Bert", "Germany"}};
  w.abstracts.Set("Anna", "Anna is a Dutch singer.");
  w.index.Add(id("/m/0a"), id("/m/0actor"), 100);
  w.index.Add(id("/m/0a"), id("/m/0singer"), 10);
  w.index.Add(id("/m/0a"), id("/m/0de"), 3);
  return w;
}

TEST_CASE("score_all fuses both strategies") {
  auto w = MakeWorld();
  ScoringConfig config;
  auto result = ScoreAll(w.kb, w.catalog, w.abstracts, w.index, config);
  std::vector<std::string> got;
  for (const auto &t : result.triples) {
    got.push_back(t.person + "|" + std::string(RelationName(t.relation)) + "|" +
                  t.value + "|" + std::to_string(t.abstract_score) + "/" +
                  std::to_string(t.count_score) + "=" +
                  std::to_string(t.score) + (t.defaulted ? "*" : ""));
  }
  CHECK(got == std::vector<std::string>{
                   "Anna|nationality|Germany|0/7=7",
                   "Anna|nationality|Netherlands|7/0=7",
                   "Anna|profession|Actor|0/7=7",
                   "Anna|profession|Singer|7/4=7",
                   "Bert|nationality|Germany|0/0=4*",
                   "Bert|profession|Harpsichordist|0/0=4*",
                   "Cleo|profession|Actor|0/0=4*",
               });
  REQUIRE(result.warnings.size() == 1);
  CHECK(result.warnings[0].find("Cleo") != std::string::npos);
}

TEST_CASE("score_all with a single strategy") {
  auto w = MakeWorld();
  ScoringConfig config;
  config.strategy = Strategy::kCounts;
  config.default_score = 0;
  config.relations = {Relation::kProfession};
  auto result = ScoreAll(w.kb, w.catalog, w.abstracts, w.index, config);
  REQUIRE(result.triples.size() == 4);
  CHECK(result.triples[1].value == "Singer");
  CHECK(result.triples[1].score == 4);
  CHECK(result.triples[1].abstract_score == 0);
  CHECK(result.triples[2].score == 0);
  CHECK(result.triples[2].defaulted);

  config.strategy = Strategy::kAbstracts;
  result = ScoreAll(w.kb, w.catalog, w.abstracts, w.index, config);
  CHECK(result.triples[0].score == 0);
  CHECK(result.triples[1].score == 7);
  CHECK(result.warnings.empty());
}

TEST_CASE("score_all is independent of the worker count") {
  auto w = MakeWorld();
  ScoringConfig one, many;
  many.workers = 5;
  auto a = ScoreAll(w.kb, w.catalog, w.abstracts, w.index, one);
  auto b = ScoreAll(w.kb, w.catalog, w.abstracts, w.index, many);
  CHECK(a.triples == b.triples);
  CHECK(a.warnings == b.warnings);
}

TEST_CASE("prediction output") {
  ScoredTriple t{"Anna", Relation::kProfession, "Singer", 7, 7, 4, false};
  ScoredTriple d{"Bert", Relation::kNationality, "Germany", 4, 0, 0, true};
  std::vector<ScoredTriple> v{t, d};
  CHECK(FormatPredictions(v, false) == "Anna\tSinger\t7\nBert\tGermany\t4\n");
  CHECK(FormatPredictions(v, true) ==
        "Anna\tSinger\t7\t7\t4\t0\nBert\tGermany\t4\t0\t0\t1\n");
}

}  // namespace
}  // namespace triplerank
