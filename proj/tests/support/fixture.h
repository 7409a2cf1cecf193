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


#pragma once

#include <string>
#include <vector>

#include "cqa/config.h"
#include "cqa/kg_store.h"
#include "cqa/question_model.h"
#include "cqa/semantic_matching.h"

namespace cqa::testing {

// Absolute path of a file under data/fixture.
std::string fixture_path(const std::string& name);

// The fixture graph, lexicon, embeddings and both question files, loaded
// once per process.
struct Fixture {
  KnowledgeGraph kg;
  KeywordLexicon lexicon;
  EmbeddingTable embeddings;
  Config config;
  std::vector<AnnotatedQuestion> table;  // questions.json
  std::vector<AnnotatedQuestion> extra;  // extra_questions.json

  std::vector<AnnotatedQuestion> all() const;
  // Throws std::out_of_range for an unknown id.
  const AnnotatedQuestion& question(const std::string& id) const;
};

const Fixture& fixture();

}  // namespace cqa::testing
