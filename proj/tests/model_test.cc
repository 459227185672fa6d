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

#include <map>
#include <random>
#include <string>

#include "test_util.h"
#include "triplerank/errors.h"
#include "triplerank/facc1.h"
#include "triplerank/model.h"
#include "triplerank/verify_ids.h"

namespace triplerank {
namespace {

using testing::DataPath;
using testing::TempDir;

EntityCatalog SmallCatalog() {
  EntityCatalog c;
  c.persons.Add({"Barack Obama", EntityId::Parse("/m/02mjmr")});
  c.persons.Add({"George Clooney", EntityId::Parse("/m/014zcr")});
  c.persons.Add({"Nobody Known", std::nullopt});
  c.professions.Add({"Politician", EntityId::Parse("/m/0fj9f")});
  c.professions.Add({"Actor", EntityId::Parse("/m/02hrh1q"), Provenance::kAuto});
  c.professions.Add({"Harpsichordist", std::nullopt});
  c.nationalities.Add({"Netherlands", EntityId::Parse("/m/059j2")});
  c.nationalities.Add(
      {"United States of America", EntityId::Parse("/m/09c7w0")});
  c.nationality_lexicon["Netherlands"] = {"Dutch"};
  return c;
}

TEST_CASE("EntityId accepts only well-formed mids") {
  CHECK(EntityId::IsValid("/m/014zcr"));
  CHECK(EntityId::IsValid("/m/0dgd_"));
  CHECK_FALSE(EntityId::IsValid("/m/"));
  CHECK_FALSE(EntityId::IsValid("m/014zcr"));
  CHECK_FALSE(EntityId::IsValid("/m/014ZCR"));
  CHECK_FALSE(EntityId::IsValid("/m/01 4"));
  CHECK_THROWS_AS(EntityId::Parse("/x/1"), ValidationError);
  CHECK(EntityId::Parse("/m/0a") < EntityId::Parse("/m/0b"));
}

TEST_CASE("provenance and relation names round-trip") {
  for (auto p : {Provenance::kAuto, Provenance::kRedirect, Provenance::kManual,
                 Provenance::kShared}) {
    CHECK(ParseProvenance(ProvenanceName(p)) == p);
  }
  for (auto r : kRelations) CHECK(ParseRelation(RelationName(r)) == r);
  CHECK_FALSE(ParseProvenance("guessed"));
  CHECK_FALSE(ParseRelation("religion"));
}

TEST_CASE("entity table parsing") {
  SUBCASE("one to three fields, comments and blank lines") {
    auto t = ParseEntityTable(
        "# professions\nPolitician\t/m/0fj9f\tmanual\n\nActor\t/m/02hrh1q\n"
        "Harpsichordist\n",
        "professions.tsv");
    REQUIRE(t.size() == 3);
    CHECK(t.Find("Actor")->provenance == Provenance::kManual);
    CHECK_FALSE(t.Find("Harpsichordist")->id);
    CHECK(t.Find("Politician")->id->str() == "/m/0fj9f");
    CHECK(t.Find("Singer") == nullptr);
  }
  SUBCASE("empty file gives empty table") {
    CHECK(ParseEntityTable("", "professions.tsv").empty());
  }
  SUBCASE("duplicate label is a validation error") {
    CHECK_THROWS_AS(ParseEntityTable("Actor\t/m/01\nActor\t/m/02\n", "p.tsv"),
                    ValidationError);
  }
  SUBCASE("bad mid is a parse error carrying the line") {
    try {
      ParseEntityTable("Actor\t/m/01\nSinger\tnot-a-mid\n", "p.tsv");
      FAIL("expected ParseError");
    } catch (const ParseError &e) {
      CHECK(e.line() == 2);
      CHECK(std::string(e.what()).find("p.tsv:2") != std::string::npos);
    }
  }
  SUBCASE("unknown provenance") {
    CHECK_THROWS_AS(ParseEntityTable("Actor\t/m/01\tguess\n", "p.tsv"),
                    ParseError);
  }
}

TEST_CASE("lexicon parsing") {
  auto lex = ParseLexicon("Netherlands\tDutch\n", "lexicon.tsv");
  REQUIRE(lex.count("Netherlands") == 1);
  CHECK(lex["Netherlands"] == std::vector<std::string>{"Dutch"});
  auto dup = ParseLexicon(
      "United States of America\tAmerican\nUnited States of America\tUS\n"
      "United States of America\tAmerican\n",
      "lexicon.tsv");
  CHECK(dup["United States of America"].size() == 2);
  CHECK_THROWS_AS(ParseLexicon("Netherlands\n", "lexicon.tsv"), ParseError);
}

TEST_CASE("catalog aliases apply to nationalities only") {
  auto c = SmallCatalog();
  CHECK(c.AliasesFor(Relation::kNationality, "Netherlands") ==
        std::vector<std::string>{"Dutch"});
  CHECK(c.AliasesFor(Relation::kNationality, "Germany").empty());
  CHECK(c.AliasesFor(Relation::kProfession, "Netherlands").empty());
}

TEST_CASE("shared ids need the shared provenance") {
  EntityCatalog c;
  c.professions.Add({"Editor", EntityId::Parse("/m/0edit")});
  c.professions.Add(
      {"Film editor", EntityId::Parse("/m/0edit"), Provenance::kShared});
  CHECK_NOTHROW(c.Validate());
  c.professions.Add({"Book editor", EntityId::Parse("/m/0edit")});
  CHECK_THROWS_AS(c.Validate(), ValidationError);
}

TEST_CASE("catalog save then load is the identity") {
  TempDir dir;
  auto original = LoadCatalogDir(DataPath("mini/catalog"));
  CHECK(original.persons.size() == 15);
  CHECK(original.professions.size() == 8);
  CHECK(original.nationalities.size() == 5);
  SaveCatalogDir(original, dir.File("copy"));
  auto reloaded = LoadCatalogDir(dir.File("copy"));
  CHECK(reloaded == original);
  // And serialising again is byte-stable.
  CHECK(SerializeEntityTable(reloaded.professions) ==
        SerializeEntityTable(original.professions));
  CHECK(SerializeLexicon(reloaded.nationality_lexicon) ==
        SerializeLexicon(original.nationality_lexicon));
}

TEST_CASE("random catalogs round-trip") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 50; ++round) {
    EntityTable t;
    int n = static_cast<int>(rng() % 20);
    for (int i = 0; i < n; ++i) {
      CatalogEntry e;
      e.label = "Label " + std::to_string(i) + (rng() % 2 ? " x" : "");
      if (rng() % 4 != 0) e.id = EntityId::Parse("/m/0" + std::to_string(rng() % 1000));
      e.provenance = static_cast<Provenance>(rng() % 4);
      t.Add(e);
    }
    CHECK(ParseEntityTable(SerializeEntityTable(t), "t.tsv") == t);
  }
}

TEST_CASE("knowledge base parsing") {
  auto c = SmallCatalog();
  const std::string prof = "Barack Obama\tPolitician\nGeorge Clooney\tActor\n";
  const std::string nat =
      "Barack Obama\tUnited States of America\nGeorge Clooney\tNetherlands\n";

  SUBCASE("pairs and candidate lists") {
    auto kb = ParseKnowledgeBase(prof, nat, std::nullopt, c);
    CHECK(kb.profession_pairs.size() == 2);
    CHECK(kb.ValuesFor("Barack Obama", Relation::kProfession) ==
          std::vector<std::string>{"Politician"});
    CHECK(kb.Persons() ==
          std::vector<std::string>{"Barack Obama", "George Clooney"});
    CHECK(kb.Contains({"George Clooney", Relation::kNationality, "Netherlands"}));
    CHECK_FALSE(kb.Contains({"George Clooney", Relation::kProfession, "Netherlands"}));
  }
  SUBCASE("gold score 7 parses and lands on the right relation") {
    auto kb = ParseKnowledgeBase(prof, nat, "Barack Obama\tPolitician\t7\n", c);
    CHECK(kb.gold.at({"Barack Obama", Relation::kProfession, "Politician"}) == 7);
  }
  SUBCASE("gold score 9 is out of range") {
    CHECK_THROWS_AS(
        ParseKnowledgeBase(prof, nat, "Barack Obama\tPolitician\t9\n", c),
        ValidationError);
  }
  SUBCASE("non-integer gold score") {
    CHECK_THROWS_AS(
        ParseKnowledgeBase(prof, nat, "Barack Obama\tPolitician\t6.5\n", c),
        ParseError);
  }
  SUBCASE("unknown labels") {
    CHECK_THROWS_AS(
        ParseKnowledgeBase("Nobody\tPolitician\n", nat, std::nullopt, c),
        ValidationError);
    CHECK_THROWS_AS(
        ParseKnowledgeBase("Barack Obama\tAstronaut\n", nat, std::nullopt, c),
        ValidationError);
  }
  SUBCASE("gold triple outside the knowledge base") {
    CHECK_THROWS_AS(
        ParseKnowledgeBase(prof, nat, "Barack Obama\tActor\t3\n", c),
        ValidationError);
  }
  SUBCASE("conflicting duplicate gold rows") {
    CHECK_THROWS_AS(
        ParseKnowledgeBase(prof, nat,
                           "Barack Obama\tPolitician\t7\n"
                           "Barack Obama\tPolitician\t5\n",
                           c),
        ValidationError);
  }
}

TEST_CASE("abstract store") {
  auto c = SmallCatalog();
  auto store = ParseAbstracts(
      "Barack Obama\tAmerican politician.\\nSecond line.\n", c, "abs.tsv");
  CHECK(store.size() == 1);
  CHECK(store.Get("Barack Obama") == "American politician.\nSecond line.");
  CHECK(store.Get("George Clooney").empty());
  CHECK_THROWS_AS(ParseAbstracts("Stranger\ttext\n", c, "abs.tsv"),
                  ValidationError);
}

TEST_CASE("mini fixture loads with partial gold") {
  auto c = LoadCatalogDir(DataPath("mini/catalog"));
  auto kb = LoadKnowledgeBaseDir(DataPath("mini/kb"), c);
  CHECK(kb.profession_pairs.size() == 45);
  CHECK(kb.nationality_pairs.size() == 21);
  CHECK(kb.gold.size() == 48);
}

// ---- id verification ----

std::string CommaLine(const std::string &doc, const std::string &surface,
                      const std::string &mid) {
  return doc + ",UTF-8," + surface + ",10651,10665,0.995516,0.000126," + mid;
}

TEST_CASE("verify-ids counts annotations per catalog id") {
  auto c = SmallCatalog();
  auto corpus = ParseCorpus(
      CommaLine("clueweb12-0000tw-00-00013", "George Clooney", "/m/014zcr") +
          "\n" + CommaLine("clueweb12-0000tw-00-00013", "Clooney", "/m/014zcr") +
          "\n" + CommaLine("clueweb12-0000tw-00-00014", "actor", "/m/02hrh1q") +
          "\n",
      {',', OnParseError::kAbort});
  auto rows = VerifyIds(c, corpus);
  std::map<std::string, uint64_t> counts;
  for (const auto &r : rows) counts[r.label] = r.count;
  CHECK(counts["George Clooney"] == 2);
  CHECK(counts["Actor"] == 1);
  CHECK(counts["Barack Obama"] == 0);
  CHECK(counts["Harpsichordist"] == 0);
  for (const auto &r : rows) CHECK(r.flagged() == (r.count == 0));

  auto report = FormatIdReport(rows);
  CHECK(report.rfind("#table\tlabel\tid\tcount\tstatus\n", 0) == 0);
  CHECK(report.find("person\tGeorge Clooney\t/m/014zcr\t2\tok\n") !=
        std::string::npos);
  CHECK(report.find("profession\tHarpsichordist\t\t0\tmissing\n") !=
        std::string::npos);
}

TEST_CASE("verify-ids over an empty corpus flags everything") {
  auto c = SmallCatalog();
  auto rows = VerifyIds(c, {});
  CHECK(rows.size() == 8);
  for (const auto &r : rows) CHECK(r.flagged());
}

TEST_CASE("verify-ids agrees with brute-force substring counting") {
  auto c = SmallCatalog();
  std::vector<std::string> mids;
  for (const auto *t : {&c.persons, &c.professions, &c.nationalities}) {
    for (const auto &e : t->entries()) {
      if (e.id) mids.push_back(e.id->str());
    }
  }
  mids.push_back("/m/0other");
  std::mt19937_64 rng(99);
  std::string text;
  for (int i = 0; i < 10000; ++i) {
    text += testing::AnnotationLine("doc" + std::to_string(i / 7),
                                    mids[rng() % mids.size()]) +
            "\n";
  }
  TempDir dir;
  testing::WriteText(dir.File("corpus.tsv"), text);
  auto rows = VerifyIdsFile(c, dir.File("corpus.tsv"), {});
  for (const auto &r : rows) {
    uint64_t expected = 0;
    if (!r.id.empty()) {
      // Each line ends in "\t<mid>\n"; count those suffixes.
      const std::string needle = "\t" + r.id + "\n";
      for (size_t pos = text.find(needle); pos != std::string::npos;
           pos = text.find(needle, pos + 1)) {
        ++expected;
      }
    }
    CHECK_MESSAGE(r.count == expected, r.label);
  }
}

}  // namespace
}  // namespace triplerank
