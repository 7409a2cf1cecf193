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

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cqa/config.h"
#include "cqa/constraint_detection.h"
#include "cqa/kg_store.h"
#include "cqa/lf_generation.h"
#include "cqa/metrics.h"
#include "cqa/question_model.h"
#include "cqa/ranking.h"
#include "cqa/semantic_matching.h"

namespace cqa {

enum class SelectionMode { kOracle, kRanker };

std::string_view to_string(SelectionMode m);

struct AnswerReport {
  std::string id;
  std::vector<std::string> answers;
  std::optional<std::string> chosen;  // serialized form
  std::size_t candidate_count = 0;
  FailureCategory category = FailureCategory::kSuccess;
  std::string detail;  // failure reason, if any
  std::vector<std::string> constraints;
  std::vector<TraceEvent> trace;
  GenerationStats stats;
  std::vector<Candidate> candidates;  // with ranker scores
  std::vector<std::string> warnings;
  std::optional<QuestionOutcome> outcome;  // set when gold answers exist
};

struct EvalReport {
  SelectionMode mode = SelectionMode::kRanker;
  Metrics metrics;
  std::vector<AnswerReport> questions;
  std::vector<std::string> warnings;
};

// End-to-end question answering over one graph. The pipeline keeps a
// reference to the graph, which must outlive it.
class Pipeline {
 public:
  Pipeline(const KnowledgeGraph& g, KeywordLexicon lexicon, EmbeddingTable embeddings,
           Config config);
  Pipeline(const Pipeline&) = delete;
  Pipeline& operator=(const Pipeline&) = delete;

  // Builds a pipeline from a config's lexicon and embedding paths.
  static std::unique_ptr<Pipeline> from_config(const KnowledgeGraph& g, const Config& config);

  ConstraintSet detect(const AnnotatedQuestion& q) const;
  GenerationResult generate(const AnnotatedQuestion& q, const ConstraintSet& cs) const;
  AnswerReport answer(const AnnotatedQuestion& q, SelectionMode mode) const;
  // Questions without gold answers are skipped with a warning.
  EvalReport evaluate(const std::vector<AnnotatedQuestion>& questions, SelectionMode mode) const;

  const RelationScorer& scorer() const { return scorer_; }
  const KeywordLexicon& lexicon() const { return lexicon_; }
  const Config& config() const { return config_; }
  const KnowledgeGraph& graph() const { return g_; }

 private:
  const KnowledgeGraph& g_;
  KeywordLexicon lexicon_;
  EmbeddingTable embeddings_;
  EmbeddingScorer scorer_;
  Config config_;
  BaselineRanker ranker_;
};

// Deterministic JSON renderings (sorted keys, no timestamps).
std::string to_json(const EvalReport& report);
std::string to_json(const AnswerReport& report, bool explain);

}  // namespace cqa
