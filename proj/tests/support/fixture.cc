// Copyright 2026 The cqa Authors.
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


#include "fixture.h"

#include <stdexcept>

namespace cqa::testing {

std::string fixture_path(const std::string& name) {
  return std::string(CQA_FIXTURE_DIR) + "/" + name;
}

std::vector<AnnotatedQuestion> Fixture::all() const {
  std::vector<AnnotatedQuestion> out = table;
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

const AnnotatedQuestion& Fixture::question(const std::string& id) const {
  for (const auto* set : {&table, &extra})
    for (const auto& q : *set)
      if (q.id == id) return q;
  throw std::out_of_range("no fixture question " + id);
}

const Fixture& fixture() {
  static const Fixture f = [] {
    Fixture x;
    x.config = load_config(fixture_path("config.json"));
    x.kg = KnowledgeGraph::load(fixture_path("kg.tsv"));
    x.lexicon = KeywordLexicon::load(x.config.lexicon_path);
    x.embeddings = EmbeddingTable::load(x.config.embeddings_path);
    x.table = load_questions(fixture_path("questions.json"));
    x.extra = load_questions(fixture_path("extra_questions.json"));
    return x;
  }();
  return f;
}

}  // namespace cqa::testing
