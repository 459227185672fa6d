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

#include "triplerank/verify_ids.h"

#include <unordered_map>

namespace triplerank {

namespace {

std::vector<IdCheck> Report(
    const EntityCatalog &catalog,
    const std::unordered_map<EntityId, uint64_t> &counts) {
  std::vector<IdCheck> rows;
  auto add = [&](const EntityTable &table, const char *name) {
    for (const auto &e : table.entries()) {
      IdCheck row{name, e.label, "", 0};
      if (e.id) {
        row.id = e.id->str();
        auto it = counts.find(*e.id);
        if (it != counts.end()) row.count = it->second;
      }
      rows.push_back(std::move(row));
    }
  };
  add(catalog.persons, "person");
  add(catalog.professions, "profession");
  add(catalog.nationalities, "nationality");
  return rows;
}

std::unordered_map<EntityId, uint64_t> CatalogIds(
    const EntityCatalog &catalog) {
  std::unordered_map<EntityId, uint64_t> counts;
  for (const EntityTable *t :
       {&catalog.persons, &catalog.professions, &catalog.nationalities}) {
    for (const auto &e : t->entries()) {
      if (e.id) counts.emplace(*e.id, 0);
    }
  }
  return counts;
}

}  // namespace

std::vector<IdCheck> VerifyIds(const EntityCatalog &catalog,
                               std::span<const Annotation> corpus) {
  auto counts = CatalogIds(catalog);
  for (const auto &a : corpus) {
    auto it = counts.find(a.record.entity);
    if (it != counts.end()) ++it->second;
  }
  return Report(catalog, counts);
}

std::vector<IdCheck> VerifyIdsFile(const EntityCatalog &catalog,
                                   const std::string &path,
                                   const ParseOptions &options,
                                   uint64_t *skipped) {
  auto counts = CatalogIds(catalog);
  uint64_t bad = ForEachAnnotation(path, options, [&](const Annotation &a) {
    auto it = counts.find(a.record.entity);
    if (it != counts.end()) ++it->second;
  });
  if (skipped != nullptr) *skipped = bad;
  return Report(catalog, counts);
}

std::string FormatIdReport(std::span<const IdCheck> rows) {
  std::string out = "#table\tlabel\tid\tcount\tstatus\n";
  for (const auto &r : rows) {
    out += r.table + "\t" + r.label + "\t" + r.id + "\t" +
           std::to_string(r.count) + "\t" + (r.flagged() ? "missing" : "ok") +
           "\n";
  }
  return out;
}

}  // namespace triplerank
