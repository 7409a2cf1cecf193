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
#include <vector>

#include "cqa/constraint_detection.h"
#include "cqa/lf_generation.h"
#include "cqa/question_model.h"
#include "cqa/semantic_matching.h"

namespace cqa {

// Question and candidate with linked entities replaced by shared dummy
// tokens ([E0], [E1], ...), numbered by mention order.
struct RankerInput {
  std::string question;
  std::string candidate;
  std::map<std::string, std::string> tokens;  // entity id -> dummy token
};

RankerInput make_ranker_input(const AnnotatedQuestion& q, const ConstraintSet& cs,
                              const Candidate& c);

struct RankerWeights {
  double relation = 0.5;
  double structure = 0.3;
  double link = 0.2;
  double penalty_scale = 2.0;
};

// Scores a candidate in [0, 1].
class Ranker {
 public:
  virtual ~Ranker() = default;
  virtual double score(const AnnotatedQuestion& q, const ConstraintSet& cs,
                       const Candidate& c) const = 0;
};

// relation * mean((s + 1) / 2 over non-reserved relation patterns)
//   + structure * (1 - min(1, unsupported / penalty_scale))
//   + link * topic_link_score.
// An operator is unsupported when no detected constraint calls for it
// (comparison, YEAR, ORDER BY, COUNT); a relation pattern is unsupported
// when none of its words occurs in the question or its paraphrases.
class BaselineRanker : public Ranker {
 public:
  BaselineRanker(const RelationScorer& scorer, RankerWeights weights = {})
      : scorer_(scorer), weights_(weights) {}
  double score(const AnnotatedQuestion& q, const ConstraintSet& cs,
               const Candidate& c) const override;

  int unsupported(const AnnotatedQuestion& q, const ConstraintSet& cs,
                  const LogicalForm& f) const;

 private:
  const RelationScorer& scorer_;
  RankerWeights weights_;
};

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Set precision/recall/F1 over answer strings. Two empty sets score 1.
Prf answer_prf(const std::vector<std::string>& predicted, const std::vector<std::string>& gold);

// Index of the candidate with the highest answer F1 against gold; ties go to
// the smallest serialization. Nothing for an empty list.
std::optional<std::size_t> oracle_select(const std::vector<Candidate>& candidates,
                                         const std::vector<std::string>& gold);

// Index of the highest `score`; ties go to the smallest serialization.
std::optional<std::size_t> select_best(const std::vector<Candidate>& candidates);

}  // namespace cqa
