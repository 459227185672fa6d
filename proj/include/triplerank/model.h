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

#ifndef TRIPLERANK_MODEL_H_
#define TRIPLERANK_MODEL_H_

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace triplerank {

// A Freebase machine id such as "/m/014zcr".
class EntityId {
 public:
  // Throws ValidationError unless `mid` is "/m/" followed by one or more
  // characters from [0-9a-z_].
  static EntityId Parse(std::string_view mid);
  static bool IsValid(std::string_view mid);

  const std::string &str() const { return mid_; }

  friend bool operator==(const EntityId &, const EntityId &) = default;
  friend auto operator<=>(const EntityId &, const EntityId &) = default;

 private:
  explicit EntityId(std::string mid) : mid_(std::move(mid)) {}
  std::string mid_;
};

// How a catalog entry got its id. `kShared` marks labels that deliberately
// reuse another label's id (e.g. "film editor" mapped to generic "editor").
enum class Provenance { kAuto, kRedirect, kManual, kShared };

std::string_view ProvenanceName(Provenance p);
std::optional<Provenance> ParseProvenance(std::string_view s);

enum class Relation { kProfession, kNationality };

inline constexpr Relation kRelations[] = {Relation::kProfession,
                                          Relation::kNationality};

std::string_view RelationName(Relation r);
std::optional<Relation> ParseRelation(std::string_view s);

struct CatalogEntry {
  std::string label;
  std::optional<EntityId> id;  // absent when no id could be resolved
  Provenance provenance = Provenance::kManual;

  friend bool operator==(const CatalogEntry &, const CatalogEntry &) = default;
};

// Label-unique list of entries, kept in file order.
class EntityTable {
 public:
  // Throws ValidationError on a duplicate label.
  void Add(CatalogEntry entry);
  const CatalogEntry *Find(std::string_view label) const;

  const std::vector<CatalogEntry> &entries() const { return entries_; }
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  friend bool operator==(const EntityTable &a, const EntityTable &b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<CatalogEntry> entries_;
  std::map<std::string, size_t, std::less<>> by_label_;
};

struct EntityCatalog {
  EntityTable persons;
  EntityTable professions;
  EntityTable nationalities;
  // country label -> demonym aliases ("Netherlands" -> {"Dutch"}).
  std::map<std::string, std::vector<std::string>, std::less<>>
      nationality_lexicon;

  const EntityTable &ValuesFor(Relation r) const;
  // Aliases usable when matching a candidate of relation `r`. Professions
  // never carry aliases.
  std::vector<std::string> AliasesFor(Relation r,
                                      std::string_view label) const;

  // Checks cross-entry invariants; throws ValidationError.
  void Validate() const;

  friend bool operator==(const EntityCatalog &, const EntityCatalog &) =
      default;
};

// Catalog files: "<label>\t<mid>[\t<provenance>]", '#' comments, blank lines
// ignored. A line with only a label (or an empty mid) has no id.
EntityTable ParseEntityTable(std::string_view contents,
                             const std::string &source);
// Lexicon: "<country>\t<alias>", one alias per line.
std::map<std::string, std::vector<std::string>, std::less<>> ParseLexicon(
    std::string_view contents, const std::string &source);

std::string SerializeEntityTable(const EntityTable &table);
std::string SerializeLexicon(
    const std::map<std::string, std::vector<std::string>, std::less<>>
        &lexicon);

EntityCatalog LoadCatalog(const std::string &persons_file,
                          const std::string &professions_file,
                          const std::string &nationalities_file,
                          const std::optional<std::string> &lexicon_file);

// Directory layout: persons.tsv, professions.tsv, nationalities.tsv and an
// optional lexicon.tsv.
EntityCatalog LoadCatalogDir(const std::string &dir);
void SaveCatalogDir(const EntityCatalog &catalog, const std::string &dir);

struct TripleKey {
  std::string person;
  Relation relation = Relation::kProfession;
  std::string value;

  friend bool operator==(const TripleKey &, const TripleKey &) = default;
  friend auto operator<=>(const TripleKey &, const TripleKey &) = default;
};

using LabelPair = std::pair<std::string, std::string>;

struct KnowledgeBase {
  std::set<LabelPair> profession_pairs;
  std::set<LabelPair> nationality_pairs;
  std::map<TripleKey, int> gold;

  const std::set<LabelPair> &PairsFor(Relation r) const;
  bool Contains(const TripleKey &key) const;
  // Candidate values of `person` for `r`, sorted.
  std::vector<std::string> ValuesFor(std::string_view person,
                                     Relation r) const;
  // All persons appearing in any pair, sorted.
  std::vector<std::string> Persons() const;
};

struct KbSources {
  std::string profession_kb;
  std::string nationality_kb;
  std::optional<std::string> gold;
};

// Parses in-memory KB contents (used by LoadKnowledgeBase and tests). Source
// names only label error messages.
KnowledgeBase ParseKnowledgeBase(std::string_view profession_kb,
                                 std::string_view nationality_kb,
                                 std::optional<std::string_view> gold,
                                 const EntityCatalog &catalog,
                                 const KbSources &names = {});

KnowledgeBase LoadKnowledgeBase(const KbSources &files,
                                const EntityCatalog &catalog);

// Directory layout: profession.kb, nationality.kb and an optional gold.tsv.
KnowledgeBase LoadKnowledgeBaseDir(const std::string &dir,
                                   const EntityCatalog &catalog);

// Person label -> abstract text. Missing persons read as the empty string.
class AbstractStore {
 public:
  void Set(std::string person, std::string text);
  const std::string &Get(std::string_view person) const;
  size_t size() const { return texts_.size(); }

 private:
  std::map<std::string, std::string, std::less<>> texts_;
};

// "<person>\t<text with \t, \n and \\ escaped>"; persons must be catalogued.
AbstractStore ParseAbstracts(std::string_view contents,
                             const EntityCatalog &catalog,
                             const std::string &source);
AbstractStore LoadAbstracts(const std::string &path,
                            const EntityCatalog &catalog);

}  // namespace triplerank

template <>
struct std::hash<triplerank::EntityId> {
  size_t operator()(const triplerank::EntityId &id) const noexcept {
    return std::hash<std::string>()(id.str());
  }
};

#endif  // TRIPLERANK_MODEL_H_
