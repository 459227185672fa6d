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

#include "triplerank/cooccur.h"

#include <algorithm>
#include <unordered_set>
#include <vector>

#include "triplerank/errors.h"
#include "triplerank/line_io.h"
#include "triplerank/text.h"

namespace triplerank {

void CooccurrenceIndex::Add(const EntityId &person, const EntityId &entity,
                            uint64_t n) {
  if (n == 0) return;
  rows_[person][entity] += n;
}

void CooccurrenceIndex::AddMarginal(const EntityId &entity, uint64_t n) {
  if (n == 0) return;
  marginals_[entity] += n;
}

uint64_t CooccurrenceIndex::Count(const EntityId &person,
                                  const EntityId &entity) const {
  auto row = rows_.find(person);
  if (row == rows_.end()) return 0;
  auto it = row->second.find(entity);
  return it == row->second.end() ? 0 : it->second;
}

std::map<EntityId, uint64_t> CooccurrenceIndex::CountsFor(
    const EntityId &person, std::span<const EntityId> candidates) const {
  std::map<EntityId, uint64_t> out;
  for (const auto &c : candidates) out[c] = Count(person, c);
  return out;
}

void CooccurrenceIndex::MergeFrom(const CooccurrenceIndex &other) {
  for (const auto &[person, row] : other.rows_) {
    for (const auto &[entity, n] : row) Add(person, entity, n);
  }
  for (const auto &[entity, n] : other.marginals_) AddMarginal(entity, n);
  if (built_from_.empty()) {
    built_from_ = other.built_from_;
  } else if (!other.built_from_.empty()) {
    built_from_ += "+" + other.built_from_;
  }
}

CooccurrenceIndex Merge(const CooccurrenceIndex &a,
                        const CooccurrenceIndex &b) {
  CooccurrenceIndex out = a;
  out.MergeFrom(b);
  return out;
}

std::string CooccurrenceIndex::Serialize() const {
  std::string out = "#built_from=" + built_from_ + "\n";
  for (const auto &[entity, n] : marginals_) {
    out += "#marginal\t" + entity.str() + "\t" + std::to_string(n) + "\n";
  }
  for (const auto &[person, row] : rows_) {
    for (const auto &[entity, n] : row) {
      out += person.str() + "\t" + entity.str() + "\t" + std::to_string(n) +
             "\n";
    }
  }
  return out;
}

CooccurrenceIndex CooccurrenceIndex::Parse(std::string_view contents,
                                           const std::string &source) {
  CooccurrenceIndex index;
  size_t line_no = 0, start = 0;
  auto mid = [&](std::string_view s) {
    if (!EntityId::IsValid(s)) {
      throw ParseError("malformed entity id '" + std::string(s) + "'", source,
                       line_no);
    }
    return EntityId::Parse(s);
  };
  auto count = [&](std::string_view s) {
    auto n = ParseUint64(s);
    if (!n) throw ParseError("bad count '" + std::string(s) + "'", source, line_no);
    if (*n == 0) throw ParseError("zero count stored", source, line_no);
    return *n;
  };
  while (start < contents.size()) {
    size_t end = contents.find('\n', start);
    if (end == std::string_view::npos) end = contents.size();
    std::string_view line = StripCr(contents.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      constexpr std::string_view kBuiltFrom = "#built_from=";
      if (line.substr(0, kBuiltFrom.size()) == kBuiltFrom) {
        index.built_from_ = std::string(line.substr(kBuiltFrom.size()));
      } else if (line.substr(0, 10) == "#marginal\t") {
        auto f = Split(line, '\t');
        if (f.size() != 3) throw ParseError("bad marginal line", source, line_no);
        EntityId e = mid(f[1]);
        if (index.marginals_.count(e) > 0) {
          throw ParseError("duplicate marginal", source, line_no);
        }
        index.marginals_[e] = count(f[2]);
      }
      continue;
    }
    auto f = Split(line, '\t');
    if (f.size() != 3) {
      throw ParseError("expected <person>\\t<entity>\\t<count>", source,
                       line_no);
    }
    EntityId person = mid(f[0]);
    EntityId entity = mid(f[1]);
    uint64_t n = count(f[2]);
    auto [it, inserted] = index.rows_[person].emplace(entity, n);
    if (!inserted) throw ParseError("duplicate pair", source, line_no);
  }
  return index;
}

CooccurrenceIndex CooccurrenceIndex::Load(const std::string &path) {
  return Parse(ReadFile(path), path);
}

void CooccurrenceIndex::Save(const std::string &path) const {
  WriteFile(path, Serialize());
}

IndexBuilder::IndexBuilder(const FilterSpec &spec, CountMode mode)
    : spec_(spec), mode_(mode) {}

void IndexBuilder::AddDocument(
    std::span<const AnnotationRecord *const> document) {
  std::vector<const EntityId *> persons;
  std::unordered_map<EntityId, uint64_t> values;
  for (const AnnotationRecord *r : document) {
    if (spec_.IsPerson(r->entity)) {
      bool seen = std::any_of(persons.begin(), persons.end(),
                              [&](const EntityId *p) { return *p == r->entity; });
      if (!seen) persons.push_back(&r->entity);
    }
    if (spec_.IsValue(r->entity)) {
      ++marginals_[r->entity];
      uint64_t &n = values[r->entity];
      n = mode_ == CountMode::kDocument ? 1 : n + 1;
    }
  }
  if (values.empty()) return;
  for (const EntityId *p : persons) {
    auto &row = counts_[*p];
    for (const auto &[entity, n] : values) row[entity] += n;
  }
}

CooccurrenceIndex IndexBuilder::Finish(std::string built_from) {
  CooccurrenceIndex index;
  for (const auto &[person, row] : counts_) {
    for (const auto &[entity, n] : row) index.Add(person, entity, n);
  }
  for (const auto &[entity, n] : marginals_) index.AddMarginal(entity, n);
  index.set_built_from(std::move(built_from));
  counts_.clear();
  marginals_.clear();
  return index;
}

std::string ContentId(const Fnv1a64 &hash) {
  return "fnv1a64:" + hash.HexDigest();
}

namespace {

// Feeds runs of equal doc id to the builder; when `contiguity` is non-null a
// reappearing document is an error.
void AddRuns(std::span<const Annotation> corpus, IndexBuilder *builder,
             ContiguityChecker *contiguity) {
  std::vector<const AnnotationRecord *> doc;
  for (size_t i = 0; i < corpus.size(); ++i) {
    const AnnotationRecord &r = corpus[i].record;
    if (!doc.empty() && doc.front()->doc_id != r.doc_id) {
      builder->AddDocument(doc);
      doc.clear();
    }
    if (doc.empty() && contiguity != nullptr) contiguity->Observe(r.doc_id);
    doc.push_back(&r);
  }
  if (!doc.empty()) builder->AddDocument(doc);
}

void AddGrouped(std::span<const Annotation> corpus, IndexBuilder *builder) {
  std::vector<std::string_view> order;
  std::unordered_map<std::string_view, std::vector<const AnnotationRecord *>>
      docs;
  for (const auto &a : corpus) {
    auto [it, inserted] = docs.try_emplace(a.record.doc_id);
    if (inserted) order.push_back(a.record.doc_id);
    it->second.push_back(&a.record);
  }
  for (auto id : order) builder->AddDocument(docs[id]);
}

}  // namespace

CooccurrenceIndex BuildIndex(std::span<const Annotation> corpus,
                             const FilterSpec &spec,
                             const BuildOptions &options) {
  IndexBuilder builder(spec, options.mode);
  if (options.sorted) {
    ContiguityChecker contiguity;
    AddRuns(corpus, &builder, &contiguity);
  } else {
    AddGrouped(corpus, &builder);
  }
  Fnv1a64 hash;
  for (const auto &a : corpus) {
    hash.Update(a.raw);
    hash.Update("\n");
  }
  return builder.Finish(ContentId(hash));
}

CooccurrenceIndex BuildIndexFromFile(const std::string &path,
                                     const FilterSpec &spec,
                                     const BuildOptions &options,
                                     const StreamOptions &stream,
                                     IndexFileReport *report) {
  IndexFileReport local;
  if (!options.sorted) {
    Corpus corpus;
    Fnv1a64 hash;
    {
      LineReader reader(path);
      std::string line;
      while (reader.Next(&line)) {
        hash.Update(line);
        hash.Update("\n");
      }
    }
    local.skipped = ForEachAnnotation(
        path, stream.parse, [&](const Annotation &a) { corpus.push_back(a); });
    IndexBuilder builder(spec, options.mode);
    AddGrouped(corpus, &builder);
    if (report != nullptr) *report = local;
    return builder.Finish(ContentId(hash));
  }

  StreamOptions sorted_stream = stream;
  sorted_stream.sorted = true;
  CooccurrenceIndex index;
  auto work = [&](const ParsedBatch &batch) {
    IndexBuilder builder(spec, options.mode);
    AddRuns(batch.records, &builder, nullptr);
    return builder.Finish("");
  };
  auto consume = [&](CooccurrenceIndex &&part) { index.MergeFrom(part); };
  Fnv1a64 hash = RunBatched<CooccurrenceIndex>(path, sorted_stream, work,
                                               consume, &local.skipped);
  index.set_built_from(ContentId(hash));
  if (report != nullptr) *report = local;
  return index;
}

}  // namespace triplerank
