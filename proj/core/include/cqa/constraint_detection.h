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

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cqa/entity_linking.h"
#include "cqa/kg_store.h"
#include "cqa/literal.h"
#include "cqa/question_model.h"

namespace cqa {

enum class Position { kDepth, kTerminal };

std::string_view to_string(Position p);

struct TypeConstraint {
  std::string type_id;
  friend bool operator==(const TypeConstraint&, const TypeConstraint&) = default;
};

struct Aggregation {
  int keyword_index = 0;
  friend bool operator==(const Aggregation&, const Aggregation&) = default;
};

struct Superlative {
  int keyword_index = 0;
  int depth = 0;
  int head_index = 0;  // 0 when the keyword is the root
  std::string direction;  // asc | desc
  std::vector<std::string> ordering_hints;
  int ordinal_k = 1;
  Position position = Position::kTerminal;
  std::optional<std::string> attached_entity;
  std::optional<int> attached_mention;
  std::optional<std::string> result_type;
  friend bool operator==(const Superlative&, const Superlative&) = default;
};

struct Comparative {
  int keyword_index = 0;
  int depth = 0;
  std::string direction;  // greater | less
  std::vector<std::string> ordering_hints;
  Position position = Position::kTerminal;
  std::optional<std::string> pivot_entity;
  std::optional<int> pivot_mention;
  // A numeric token under the keyword ("higher than 8600").
  std::optional<Literal> pivot_literal;
  // Type of the second parent, used to anchor depth sub-forms.
  std::optional<std::string> result_type;
  friend bool operator==(const Comparative&, const Comparative&) = default;
};

struct TemporalExplicit {
  int year = 0;
  int token_index = 0;
  friend bool operator==(const TemporalExplicit&, const TemporalExplicit&) = default;
};

struct TemporalImplicit {
  std::string event_entity;
  int event_mention = 0;
  int keyword_index = 0;
  friend bool operator==(const TemporalImplicit&, const TemporalImplicit&) = default;
};

struct EntityConstraint {
  std::string entity;
  double link_score = 0.0;
  int mention = 0;
  friend bool operator==(const EntityConstraint&, const EntityConstraint&) = default;
};

using Constraint = std::variant<TypeConstraint, Aggregation, Superlative, Comparative,
                                TemporalExplicit, TemporalImplicit, EntityConstraint>;

std::string describe(const Constraint& c);

struct ConstraintSet {
  std::vector<Constraint> constraints;
  // Links of every mention, keyed by mention index.
  std::map<int, std::vector<EntityLink>> links;
  std::vector<EntityLink> all;    // E
  std::vector<EntityLink> depth;  // E_depth: every link of a consumed mention
  std::vector<EntityLink> topic;  // E_topic = E - E_depth
  std::vector<std::string> warnings;
  // Set when detection cannot produce a usable set (conflicting depth ops).
  std::optional<std::string> failure;

  template <typename T>
  std::vector<T> all_of() const {
    std::vector<T> out;
    for (const auto& c : constraints)
      if (const auto* x = std::get_if<T>(&c)) out.push_back(*x);
    return out;
  }
};

struct DetectionConfig {
  int sup_threshold = 2;
  int cmp_threshold = 3;
  int year_min = 1000;
  int year_max = 2100;
};

// Case-insensitive match of a word against KG type ids and type labels.
std::optional<std::string> resolve_type(const KnowledgeGraph& g, std::string_view word);

std::optional<TypeConstraint> detect_type(const AnnotatedQuestion& q, const KnowledgeGraph& g,
                                          const KeywordLexicon& lexicon);

// The first aggregation keyword; later ones are reported through `warnings`.
std::optional<Aggregation> detect_aggregation(const AnnotatedQuestion& q,
                                              const KeywordLexicon& lexicon,
                                              std::vector<std::string>* warnings = nullptr);

std::vector<Superlative> detect_superlatives(const AnnotatedQuestion& q, const KnowledgeGraph& g,
                                             const std::map<int, std::vector<EntityLink>>& links,
                                             const KeywordLexicon& lexicon, int sup_threshold);

std::vector<Comparative> detect_comparatives(const AnnotatedQuestion& q, const KnowledgeGraph& g,
                                             const std::map<int, std::vector<EntityLink>>& links,
                                             const KeywordLexicon& lexicon, int cmp_threshold);

using TemporalConstraint = std::variant<TemporalExplicit, TemporalImplicit>;

// Tokens in `excluded` (e.g. comparative literal pivots) are never years.
std::vector<TemporalConstraint> detect_temporal(
    const AnnotatedQuestion& q, const std::map<int, std::vector<EntityLink>>& links,
    const KeywordLexicon& lexicon, const DetectionConfig& config,
    const std::vector<int>& excluded = {});

// Splits links by mention: a mention consumed by a depth-position
// superlative/comparative or an implicit temporal constraint sends all its
// links to E_depth, the rest go to E_topic.
std::pair<std::vector<EntityLink>, std::vector<EntityLink>> partition_entities(
    const std::map<int, std::vector<EntityLink>>& links,
    const std::vector<Constraint>& constraints);

ConstraintSet detect_constraints(const AnnotatedQuestion& q, const KnowledgeGraph& g,
                                 const std::map<int, std::vector<EntityLink>>& links,
                                 const KeywordLexicon& lexicon, const DetectionConfig& config);

}  // namespace cqa
