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

#include "triplerank/model.h"

#include <algorithm>
#include <filesystem>
#include <unordered_map>

#include "triplerank/errors.h"
#include "triplerank/line_io.h"
#include "triplerank/text.h"

namespace triplerank {

namespace {

// Calls fn(fields, line_number) for every non-blank, non-comment line.
template <typename Fn>
void ForEachRecord(std::string_view contents, Fn &&fn) {
  size_t line_no = 0;
  size_t start = 0;
  while (start < contents.size()) {
    size_t end = contents.find('\n', start);
    if (end == std::string_view::npos) end = contents.size();
    std::string_view line = StripCr(contents.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    fn(Split(line, '\t'), line_no);
  }
}

std::string JoinPath(const std::string &dir, const char *name) {
  return (std::filesystem::path(dir) / name).string();
}

const std::string kEmpty;

}  // namespace

bool EntityId::IsValid(std::string_view mid) {
  if (mid.size() <= 3 || mid.substr(0, 3) != "/m/") return false;
  for (char c : mid.substr(3)) {
    bool ok = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || c == '_';
    if (!ok) return false;
  }
  return true;
}

EntityId EntityId::Parse(std::string_view mid) {
  if (!IsValid(mid)) {
    throw ValidationError("malformed entity id '" + std::string(mid) + "'");
  }
  return EntityId(std::string(mid));
}

std::string_view ProvenanceName(Provenance p) {
  switch (p) {
    case Provenance::kAuto: return "auto";
    case Provenance::kRedirect: return "redirect";
    case Provenance::kManual: return "manual";
    case Provenance::kShared: return "shared";
  }
  return "manual";
}

std::optional<Provenance> ParseProvenance(std::string_view s) {
  if (s == "auto") return Provenance::kAuto;
  if (s == "redirect") return Provenance::kRedirect;
  if (s == "manual") return Provenance::kManual;
  if (s == "shared") return Provenance::kShared;
  return std::nullopt;
}

std::string_view RelationName(Relation r) {
  return r == Relation::kProfession ? "profession" : "nationality";
}

std::optional<Relation> ParseRelation(std::string_view s) {
  if (s == "profession") return Relation::kProfession;
  if (s == "nationality") return Relation::kNationality;
  return std::nullopt;
}

void EntityTable::Add(CatalogEntry entry) {
  if (by_label_.count(entry.label) > 0) {
    throw ValidationError("duplicate label '" + entry.label + "'");
  }
  by_label_.emplace(entry.label, entries_.size());
  entries_.push_back(std::move(entry));
}

const CatalogEntry *EntityTable::Find(std::string_view label) const {
  auto it = by_label_.find(label);
  return it == by_label_.end() ? nullptr : &entries_[it->second];
}

const EntityTable &EntityCatalog::ValuesFor(Relation r) const {
  return r == Relation::kProfession ? professions : nationalities;
}

std::vector<std::string> EntityCatalog::AliasesFor(
    Relation r, std::string_view label) const {
  if (r != Relation::kNationality) return {};
  auto it = nationality_lexicon.find(label);
  if (it == nationality_lexicon.end()) return {};
  return it->second;
}

void EntityCatalog::Validate() const {
  struct Use {
    std::string where;
    bool shared;
  };
  std::unordered_map<std::string, std::vector<Use>> uses;
  auto collect = [&](const EntityTable &table, const char *kind) {
    for (const auto &e : table.entries()) {
      if (!e.id) continue;
      uses[e.id->str()].push_back(
          {std::string(kind) + " '" + e.label + "'",
           e.provenance == Provenance::kShared});
    }
  };
  collect(persons, "person");
  collect(professions, "profession");
  collect(nationalities, "nationality");

  std::vector<std::string> ids;
  for (const auto &[id, list] : uses) ids.push_back(id);
  std::sort(ids.begin(), ids.end());
  for (const auto &id : ids) {
    const auto &list = uses[id];
    size_t owners = std::count_if(list.begin(), list.end(),
                                  [](const Use &u) { return !u.shared; });
    if (owners > 1) {
      std::string who;
      for (const auto &u : list) {
        if (!who.empty()) who += ", ";
        who += u.where;
      }
      throw ValidationError("id " + id + " is used by " + who +
                            "; all but one must have provenance 'shared'");
    }
  }
  for (const auto &[country, aliases] : nationality_lexicon) {
    for (const auto &alias : aliases) {
      if (alias.empty()) {
        throw ValidationError("empty alias for '" + country + "'");
      }
    }
  }
}

EntityTable ParseEntityTable(std::string_view contents,
                             const std::string &source) {
  EntityTable table;
  ForEachRecord(contents, [&](const std::vector<std::string_view> &fields,
                              size_t line) {
    if (fields.size() > 3) {
      throw ParseError("expected 1 to 3 tab-separated fields, got " +
                           std::to_string(fields.size()),
                       source, line);
    }
    CatalogEntry entry;
    entry.label = std::string(fields[0]);
    if (entry.label.empty()) throw ParseError("empty label", source, line);
    if (fields.size() >= 2 && !fields[1].empty()) {
      if (!EntityId::IsValid(fields[1])) {
        throw ParseError("malformed entity id '" + std::string(fields[1]) + "'",
                         source, line);
      }
      entry.id = EntityId::Parse(fields[1]);
    }
    if (fields.size() == 3) {
      auto p = ParseProvenance(fields[2]);
      if (!p) {
        throw ParseError("unknown provenance '" + std::string(fields[2]) + "'",
                         source, line);
      }
      entry.provenance = *p;
    }
    try {
      table.Add(std::move(entry));
    } catch (const ValidationError &e) {
      throw ValidationError(source + ":" + std::to_string(line) + ": " +
                            e.what());
    }
  });
  return table;
}

std::map<std::string, std::vector<std::string>, std::less<>> ParseLexicon(
    std::string_view contents, const std::string &source) {
  std::map<std::string, std::vector<std::string>, std::less<>> lexicon;
  ForEachRecord(contents, [&](const std::vector<std::string_view> &fields,
                              size_t line) {
    if (fields.size() != 2) {
      throw ParseError("expected <country>\\t<alias>", source, line);
    }
    if (fields[0].empty() || fields[1].empty()) {
      throw ParseError("empty country or alias", source, line);
    }
    auto &aliases = lexicon[std::string(fields[0])];
    if (std::find(aliases.begin(), aliases.end(), fields[1]) == aliases.end()) {
      aliases.emplace_back(fields[1]);
    }
  });
  return lexicon;
}

std::string SerializeEntityTable(const EntityTable &table) {
  std::string out;
  for (const auto &e : table.entries()) {
    out += e.label;
    out += '\t';
    if (e.id) out += e.id->str();
    out += '\t';
    out += ProvenanceName(e.provenance);
    out += '\n';
  }
  return out;
}

std::string SerializeLexicon(
    const std::map<std::string, std::vector<std::string>, std::less<>>
        &lexicon) {
  std::string out;
  for (const auto &[country, aliases] : lexicon) {
    for (const auto &alias : aliases) {
      out += country + '\t' + alias + '\n';
    }
  }
  return out;
}

EntityCatalog LoadCatalog(const std::string &persons_file,
                          const std::string &professions_file,
                          const std::string &nationalities_file,
                          const std::optional<std::string> &lexicon_file) {
  EntityCatalog catalog;
  catalog.persons = ParseEntityTable(ReadFile(persons_file), persons_file);
  catalog.professions =
      ParseEntityTable(ReadFile(professions_file), professions_file);
  catalog.nationalities =
      ParseEntityTable(ReadFile(nationalities_file), nationalities_file);
  if (lexicon_file) {
    catalog.nationality_lexicon =
        ParseLexicon(ReadFile(*lexicon_file), *lexicon_file);
  }
  catalog.Validate();
  return catalog;
}

EntityCatalog LoadCatalogDir(const std::string &dir) {
  std::string lexicon = JoinPath(dir, "lexicon.tsv");
  std::optional<std::string> lexicon_file;
  if (std::filesystem::exists(lexicon)) lexicon_file = lexicon;
  return LoadCatalog(JoinPath(dir, "persons.tsv"),
                     JoinPath(dir, "professions.tsv"),
                     JoinPath(dir, "nationalities.tsv"), lexicon_file);
}

void SaveCatalogDir(const EntityCatalog &catalog, const std::string &dir) {
  std::filesystem::create_directories(dir);
  WriteFile(JoinPath(dir, "persons.tsv"),
            SerializeEntityTable(catalog.persons));
  WriteFile(JoinPath(dir, "professions.tsv"),
            SerializeEntityTable(catalog.professions));
  WriteFile(JoinPath(dir, "nationalities.tsv"),
            SerializeEntityTable(catalog.nationalities));
  WriteFile(JoinPath(dir, "lexicon.tsv"),
            SerializeLexicon(catalog.nationality_lexicon));
}

const std::set<LabelPair> &KnowledgeBase::PairsFor(Relation r) const {
  return r == Relation::kProfession ? profession_pairs : nationality_pairs;
}

bool KnowledgeBase::Contains(const TripleKey &key) const {
  return PairsFor(key.relation).count({key.person, key.value}) > 0;
}

std::vector<std::string> KnowledgeBase::ValuesFor(std::string_view person,
                                                  Relation r) const {
  const auto &pairs = PairsFor(r);
  std::vector<std::string> values;
  std::string p(person);
  for (auto it = pairs.lower_bound({p, ""}); it != pairs.end() && it->first == p;
       ++it) {
    values.push_back(it->second);
  }
  return values;
}

std::vector<std::string> KnowledgeBase::Persons() const {
  std::set<std::string> persons;
  for (const auto &[p, v] : profession_pairs) persons.insert(p);
  for (const auto &[p, v] : nationality_pairs) persons.insert(p);
  return {persons.begin(), persons.end()};
}

namespace {

void ParsePairs(std::string_view contents, const std::string &source,
                Relation relation, const EntityCatalog &catalog,
                std::set<LabelPair> *out) {
  const EntityTable &values = catalog.ValuesFor(relation);
  ForEachRecord(contents, [&](const std::vector<std::string_view> &fields,
                              size_t line) {
    if (fields.size() != 2) {
      throw ParseError("expected <person>\\t<" +
                           std::string(RelationName(relation)) + ">",
                       source, line);
    }
    std::string where = source + ":" + std::to_string(line) + ": ";
    if (catalog.persons.Find(fields[0]) == nullptr) {
      throw ValidationError(where + "unknown person '" +
                            std::string(fields[0]) + "'");
    }
    if (values.Find(fields[1]) == nullptr) {
      throw ValidationError(where + "unknown " +
                            std::string(RelationName(relation)) + " '" +
                            std::string(fields[1]) + "'");
    }
    out->emplace(std::string(fields[0]), std::string(fields[1]));
  });
}

}  // namespace

KnowledgeBase ParseKnowledgeBase(std::string_view profession_kb,
                                 std::string_view nationality_kb,
                                 std::optional<std::string_view> gold,
                                 const EntityCatalog &catalog,
                                 const KbSources &names) {
  KnowledgeBase kb;
  ParsePairs(profession_kb, names.profession_kb, Relation::kProfession,
             catalog, &kb.profession_pairs);
  ParsePairs(nationality_kb, names.nationality_kb, Relation::kNationality,
             catalog, &kb.nationality_pairs);
  if (!gold) return kb;

  const std::string source = names.gold.value_or("");
  ForEachRecord(*gold, [&](const std::vector<std::string_view> &fields,
                           size_t line) {
    if (fields.size() != 3) {
      throw ParseError("expected <person>\\t<value>\\t<score>", source, line);
    }
    std::string where = source + ":" + std::to_string(line) + ": ";
    auto score = ParseInt64(fields[2]);
    if (!score) {
      throw ParseError("non-integer score '" + std::string(fields[2]) + "'",
                       source, line);
    }
    if (*score < 0 || *score > 7) {
      throw ValidationError(where + "score " + std::to_string(*score) +
                            " outside 0..7");
    }
    LabelPair pair{std::string(fields[0]), std::string(fields[1])};
    bool is_prof = kb.profession_pairs.count(pair) > 0;
    bool is_nat = kb.nationality_pairs.count(pair) > 0;
    if (is_prof && is_nat) {
      throw ValidationError(where + "'" + pair.first + "\t" + pair.second +
                            "' is both a profession and a nationality pair");
    }
    if (!is_prof && !is_nat) {
      throw ValidationError(where + "gold triple '" + pair.first + "\t" +
                            pair.second + "' is not in the knowledge base");
    }
    TripleKey key{pair.first,
                  is_prof ? Relation::kProfession : Relation::kNationality,
                  pair.second};
    auto [it, inserted] = kb.gold.emplace(key, static_cast<int>(*score));
    if (!inserted && it->second != *score) {
      throw ValidationError(where + "conflicting gold scores for '" +
                            pair.first + "\t" + pair.second + "'");
    }
  });
  return kb;
}

KnowledgeBase LoadKnowledgeBase(const KbSources &files,
                                const EntityCatalog &catalog) {
  std::string prof = ReadFile(files.profession_kb);
  std::string nat = ReadFile(files.nationality_kb);
  std::optional<std::string> gold;
  if (files.gold) gold = ReadFile(*files.gold);
  std::optional<std::string_view> gold_view;
  if (gold) gold_view = *gold;
  return ParseKnowledgeBase(prof, nat, gold_view, catalog, files);
}

KnowledgeBase LoadKnowledgeBaseDir(const std::string &dir,
                                   const EntityCatalog &catalog) {
  KbSources files{JoinPath(dir, "profession.kb"),
                  JoinPath(dir, "nationality.kb"), std::nullopt};
  std::string gold = JoinPath(dir, "gold.tsv");
  if (std::filesystem::exists(gold)) files.gold = gold;
  return LoadKnowledgeBase(files, catalog);
}

void AbstractStore::Set(std::string person, std::string text) {
  texts_[std::move(person)] = std::move(text);
}

const std::string &AbstractStore::Get(std::string_view person) const {
  auto it = texts_.find(person);
  return it == texts_.end() ? kEmpty : it->second;
}

AbstractStore ParseAbstracts(std::string_view contents,
                             const EntityCatalog &catalog,
                             const std::string &source) {
  AbstractStore store;
  ForEachRecord(contents, [&](const std::vector<std::string_view> &fields,
                              size_t line) {
    if (fields.size() > 2) {
      throw ParseError("unescaped tab in abstract text", source, line);
    }
    if (catalog.persons.Find(fields[0]) == nullptr) {
      throw ValidationError(source + ":" + std::to_string(line) +
                            ": unknown person '" + std::string(fields[0]) +
                            "'");
    }
    std::string text =
        fields.size() == 2 ? UnescapeField(fields[1]) : std::string();
    store.Set(std::string(fields[0]), std::move(text));
  });
  return store;
}

AbstractStore LoadAbstracts(const std::string &path,
                            const EntityCatalog &catalog) {
  return ParseAbstracts(ReadFile(path), catalog, path);
}

}  // namespace triplerank
