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

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cqa/constraint_detection.h"
#include "cqa/kg_store.h"
#include "cqa/lf_execution.h"
#include "cqa/logical_form.h"
#include "cqa/question_model.h"
#include "cqa/semantic_matching.h"

namespace cqa {

struct GenerationConfig {
  double tau = 0.3;
  std::size_t candidate_cap = 512;
  std::vector<std::string> temporal_relations = {"as_of",   "birth_date", "death_date",
                                                 "end_date", "in_office", "publication_date",
                                                 "release_date", "start_date"};
  int ordering_fallback_k = 3;
};

// Where expansion starts.
struct TopicSeed {
  enum class Kind {
    kEntity,          // a linked E_topic entity
    kVirtualEntity,   // the single answer of a depth superlative
    kVariableRooted,  // the answers of a depth comparative, kept as a subgraph
    kTypeAnchored,    // no topic at all: instances of the expected type
  };
  Kind kind = Kind::kEntity;
  std::string entity;  // kEntity, kVirtualEntity
  double link_score = 0.0;
  int mention = -1;  // source mention for kEntity
  std::optional<std::string> result_type;
  // kVariableRooted / kTypeAnchored: the rooted subgraph; root is answer_var.
  LogicalForm subform;

  std::string describe() const;
};

struct DepthResolution {
  std::vector<TopicSeed> seeds;
  std::vector<std::string> failures;
};

// Step 1: executes each depth-position superlative/comparative as its own
// sub-question.
DepthResolution resolve_depth_operations(const AnnotatedQuestion& q, const ConstraintSet& cs,
                                         const KnowledgeGraph& g, const RelationScorer& scorer,
                                         const GenerationConfig& config);

// A partially built form plus the bookkeeping later steps need.
struct Skeleton {
  LogicalForm form;
  std::vector<std::string> topic_adjacent;  // variables sharing a pattern with the topic
  std::optional<TriplePattern> last_hop;    // pattern that produced the answer
  int next_var = 0;
};

// Step 2: one skeleton per pruned 1- and 2-hop relation path from the seed.
std::vector<Skeleton> expand_topic_entity(const TopicSeed& seed, const AnnotatedQuestion& q,
                                          const KnowledgeGraph& g, const RelationScorer& scorer,
                                          const GenerationConfig& config);

// How a terminal comparative finds the value it compares against.
struct PivotPlan {
  enum class Kind { kNone, kTopic, kEntity, kLiteral };
  Kind kind = Kind::kNone;
  std::string entity;  // kEntity
  int mention = -1;    // kEntity
};

// Step 3: entity constraints, explicit and implicit temporal constraints.
// Each alternative attachment yields its own skeleton.
std::vector<Skeleton> attach_constraints(const Skeleton& skeleton, const TopicSeed& seed,
                                         const PivotPlan& plan, const ConstraintSet& cs,
                                         const AnnotatedQuestion& q, const KnowledgeGraph& g,
                                         const RelationScorer& scorer,
                                         const GenerationConfig& config);

// Step 4: terminal comparative, terminal superlative, aggregation, then the
// type constraint on the final answer variable.
std::vector<LogicalForm> apply_terminal_operations(const Skeleton& skeleton,
                                                   const TopicSeed& seed, const PivotPlan& plan,
                                                   const ConstraintSet& cs,
                                                   const AnnotatedQuestion& q,
                                                   const KnowledgeGraph& g,
                                                   const RelationScorer& scorer,
                                                   const GenerationConfig& config);

// Ordering relations for a superlative/comparative: the keyword hints that
// exist for the type, else the best-scoring literal-valued relations.
std::vector<std::string> ordering_candidates(const std::vector<std::string>& hints,
                                             const std::optional<std::string>& type,
                                             const AnnotatedQuestion& q,
                                             const KnowledgeGraph& g,
                                             const RelationScorer& scorer, int fallback_k);

struct Candidate {
  LogicalForm form;  // canonical naming, answer ?v0
  std::string serialized;
  std::string topic;  // entity id, or a seed description
  double topic_link_score = 0.0;
  double min_relation_match = 0.0;
  AnswerSet answers;
  double score = 0.0;  // filled by a ranker
};

struct TraceEvent {
  int step = 0;
  std::string text;
};

struct GenerationStats {
  std::size_t seeds = 0;
  std::size_t skeletons = 0;
  std::size_t attached = 0;
  std::size_t forms = 0;
  std::size_t invalid = 0;
  std::size_t empty = 0;
  std::size_t tie_dropped = 0;
  std::size_t duplicates = 0;
  std::size_t truncated = 0;
};

struct GenerationResult {
  std::vector<Candidate> candidates;  // ascending serialization
  std::vector<TraceEvent> trace;
  GenerationStats stats;
  std::vector<std::string> warnings;
  std::optional<std::string> failure;
};

GenerationResult generate_candidates(const AnnotatedQuestion& q, const ConstraintSet& cs,
                                     const KnowledgeGraph& g, const RelationScorer& scorer,
                                     const GenerationConfig& config);

}  // namespace cqa
