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

#ifndef TRIPLERANK_VERIFY_IDS_H_
#define TRIPLERANK_VERIFY_IDS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "triplerank/facc1.h"
#include "triplerank/model.h"

namespace triplerank {

// Corpus presence of one catalog entry's id.
struct IdCheck {
  std::string table;  // "person", "profession" or "nationality"
  std::string label;
  std::string id;     // empty when the entry has no id
  uint64_t count = 0;
  bool flagged() const { return count == 0; }

  friend bool operator==(const IdCheck &, const IdCheck &) = default;
};

// One row per catalog entry in table order (persons, professions,
// nationalities); count is the number of annotations with that entity id.
std::vector<IdCheck> VerifyIds(const EntityCatalog &catalog,
                               std::span<const Annotation> corpus);
std::vector<IdCheck> VerifyIdsFile(const EntityCatalog &catalog,
                                   const std::string &path,
                                   const ParseOptions &options,
                                   uint64_t *skipped = nullptr);

// "table\tlabel\tid\tcount\tstatus" rows, status "ok" or "missing".
std::string FormatIdReport(std::span<const IdCheck> rows);

}  // namespace triplerank

#endif  // TRIPLERANK_VERIFY_IDS_H_
