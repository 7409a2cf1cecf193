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

#include <istream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cqa/question_model.h"

namespace cqa {

// Word vectors in the common text format: a `count dim` header line, then
// `word v1 ... vd` per line. A repeated word keeps its last vector.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  explicit EmbeddingTable(int dimension) : dimension_(dimension) {}

  static EmbeddingTable load(const std::string& path);
  static EmbeddingTable parse(std::istream& in, const std::string& source = "<input>");

  int dimension() const { return dimension_; }
  std::size_t size() const { return vectors_.size(); }
  const std::vector<double>* find(std::string_view word) const;
  // Throws std::invalid_argument on a dimension mismatch.
  void set(std::string word, std::vector<double> v);

  // Load-time warnings such as duplicate words.
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  int dimension_ = 0;
  std::unordered_map<std::string, std::vector<double>> vectors_;
  std::vector<std::string> warnings_;
};

// Mean of the in-vocabulary word vectors; zero vector if there are none.
std::vector<double> embed_tokens(const EmbeddingTable& table,
                                 const std::vector<std::string>& words);

// Cosine similarity; 0 when either vector is zero. Clamped to [-1, 1].
double cosine(const std::vector<double>& a, const std::vector<double>& b);

// Scores how well a relation matches a question, in [-1, 1].
class RelationScorer {
 public:
  virtual ~RelationScorer() = default;
  virtual double score(const AnnotatedQuestion& q, std::string_view relation) const = 0;
};

// Max over the question text and its paraphrases of the cosine between the
// mean question embedding and the mean relation-word embedding.
class EmbeddingScorer : public RelationScorer {
 public:
  explicit EmbeddingScorer(const EmbeddingTable& table) : table_(table) {}
  double score(const AnnotatedQuestion& q, std::string_view relation) const override;

 private:
  const EmbeddingTable& table_;
};

// Relations scoring at least tau, in input order. Throws
// std::invalid_argument unless tau is in [-1, 1].
std::vector<std::string> prune_relations(const RelationScorer& scorer,
                                         const AnnotatedQuestion& q,
                                         const std::vector<std::string>& relations,
                                         double tau);

}  // namespace cqa
