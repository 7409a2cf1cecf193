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
#include <string>
#include <vector>

#include "cqa/kg_store.h"
#include "cqa/question_model.h"

namespace cqa {

struct EntityLink {
  Mention mention;
  std::string entity;
  double score = 0.0;
};

inline constexpr double kDefaultLinkFloor = 0.5;

// Score of a mention surface against one label: 1.0 exact, 0.9 equal after
// case folding and diacritic stripping, otherwise token-set Jaccard of the
// folded words.
double label_score(std::string_view mention, std::string_view label);

// Links sorted by score descending then entity id ascending; an entity's
// score is its best label score. Links below `floor` are dropped.
std::vector<EntityLink> link_mention(const KnowledgeGraph& g, const Mention& m,
                                     double floor = kDefaultLinkFloor);

// Keyed by mention index in q.mentions. Every mention gets an entry.
std::map<int, std::vector<EntityLink>> link_all(const KnowledgeGraph& g,
                                                const AnnotatedQuestion& q,
                                                double floor = kDefaultLinkFloor);

}  // namespace cqa
