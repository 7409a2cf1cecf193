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

#include "cqa/entity_linking.h"

#include <algorithm>
#include <set>

#include "cqa/text.h"

namespace cqa {

double label_score(std::string_view mention, std::string_view label) {
  if (mention == label) return 1.0;
  if (text::fold(mention) == text::fold(label)) return 0.9;
  const auto a_words = text::words(text::fold(mention));
  const auto b_words = text::words(text::fold(label));
  const std::set<std::string> a(a_words.begin(), a_words.end());
  const std::set<std::string> b(b_words.begin(), b_words.end());
  if (a.empty() || b.empty()) return 0.0;
  std::size_t common = 0;
  for (const auto& w : a) common += b.count(w);
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

std::vector<EntityLink> link_mention(const KnowledgeGraph& g, const Mention& m,
                                     double floor) {
  std::vector<EntityLink> out;
  for (const auto& [entity, labels] : g.label_map()) {
    double best = 0.0;
    for (const auto& label : labels) best = std::max(best, label_score(m.surface, label));
    if (best >= floor && best > 0.0) out.push_back({m, entity, best});
  }
  std::sort(out.begin(), out.end(), [](const EntityLink& a, const EntityLink& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.entity < b.entity;
  });
  return out;
}

std::map<int, std::vector<EntityLink>> link_all(const KnowledgeGraph& g,
                                                const AnnotatedQuestion& q, double floor) {
  std::map<int, std::vector<EntityLink>> out;
  for (std::size_t i = 0; i < q.mentions.size(); ++i)
    out[static_cast<int>(i)] = link_mention(g, q.mentions[i], floor);
  return out;
}

}  // namespace cqa
