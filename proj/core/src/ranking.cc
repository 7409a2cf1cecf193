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

#include "cqa/ranking.h"

#include <algorithm>
#include <set>

#include "cqa/sparql.h"
#include "cqa/text.h"

namespace cqa {

namespace {

void replace_all(std::string& s, const std::string& from, const std::string& to) {
  if (from.empty()) return;
  for (std::size_t pos = s.find(from); pos != std::string::npos;
       pos = s.find(from, pos + to.size()))
    s.replace(pos, from.size(), to);
}

}  // namespace

RankerInput make_ranker_input(const AnnotatedQuestion& q, const ConstraintSet& cs,
                              const Candidate& c) {
  std::set<std::string> in_form;
  for (const auto& p : c.form.patterns)
    for (const Term* t : {&p.subject, &p.object})
      if (const auto* e = std::get_if<Entity>(t)) in_form.insert(e->id);

  RankerInput out{q.text, c.serialized, {}};
  int next = 0;
  for (std::size_t m = 0; m < q.mentions.size(); ++m) {
    const auto it = cs.links.find(static_cast<int>(m));
    if (it == cs.links.end() || it->second.empty()) continue;
    // The mention's link used by the form, else its best link.
    std::string entity = it->second.front().entity;
    for (const auto& l : it->second)
      if (in_form.contains(l.entity)) {
        entity = l.entity;
        break;
      }
    if (out.tokens.contains(entity)) continue;
    const std::string token = "[E" + std::to_string(next++) + "]";
    out.tokens[entity] = token;
    replace_all(out.question, q.mentions[m].surface, token);
    if (in_form.contains(entity)) replace_all(out.candidate, "<" + entity + ">", token);
  }
  return out;
}

int BaselineRanker::unsupported(const AnnotatedQuestion& q, const ConstraintSet& cs,
                                const LogicalForm& f) const {
  auto has = [&](auto tag) {
    using T = decltype(tag);
    return !cs.all_of<T>().empty();
  };
  const bool temporal = has(TemporalExplicit{}) || has(TemporalImplicit{});
  int u = 0;
  for (const auto& flt : f.filters) {
    if (std::holds_alternative<Compare>(flt) && !has(Comparative{})) ++u;
    if (std::holds_alternative<YearEquals>(flt) && !temporal) ++u;
  }
  if (f.order && !has(Superlative{})) ++u;
  if (f.count && !has(Aggregation{})) ++u;

  std::set<std::string> words;
  for (const auto& w : text::words(q.text)) words.insert(w);
  for (const auto& p : q.paraphrases)
    for (const auto& w : text::words(p)) words.insert(w);
  for (const auto& p : f.patterns) {
    if (is_reserved_relation(p.relation)) continue;
    const auto rw = text::relation_words(p.relation);
    if (std::none_of(rw.begin(), rw.end(), [&](const auto& w) { return words.contains(w); }))
      ++u;
  }
  return u;
}

double BaselineRanker::score(const AnnotatedQuestion& q, const ConstraintSet& cs,
                             const Candidate& c) const {
  double sum = 0.0;
  int n = 0;
  for (const auto& p : c.form.patterns) {
    if (is_reserved_relation(p.relation)) continue;
    sum += (scorer_.score(q, p.relation) + 1.0) / 2.0;
    ++n;
  }
  const double relation = n == 0 ? 0.5 : sum / n;
  const double penalty =
      std::min(1.0, unsupported(q, cs, c.form) / std::max(weights_.penalty_scale, 1e-9));
  const double s = weights_.relation * relation + weights_.structure * (1.0 - penalty) +
                   weights_.link * c.topic_link_score;
  return std::clamp(s, 0.0, 1.0);
}

Prf answer_prf(const std::vector<std::string>& predicted, const std::vector<std::string>& gold) {
  const std::set<std::string> p(predicted.begin(), predicted.end());
  const std::set<std::string> g(gold.begin(), gold.end());
  if (p.empty() && g.empty()) return {1.0, 1.0, 1.0};
  std::size_t hit = 0;
  for (const auto& x : p) hit += g.count(x);
  Prf out;
  out.precision = p.empty() ? 0.0 : static_cast<double>(hit) / static_cast<double>(p.size());
  out.recall = g.empty() ? 1.0 : static_cast<double>(hit) / static_cast<double>(g.size());
  if (out.precision + out.recall > 0)
    out.f1 = 2 * out.precision * out.recall / (out.precision + out.recall);
  return out;
}

std::optional<std::size_t> oracle_select(const std::vector<Candidate>& candidates,
                                         const std::vector<std::string>& gold) {
  std::optional<std::size_t> best;
  double best_f1 = -1.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double f1 = answer_prf(candidates[i].answers.strings(), gold).f1;
    if (!best || f1 > best_f1 ||
        (f1 == best_f1 && candidates[i].serialized < candidates[*best].serialized)) {
      best = i;
      best_f1 = f1;
    }
  }
  return best;
}

std::optional<std::size_t> select_best(const std::vector<Candidate>& candidates) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& c = candidates[i];
    if (!best || c.score > candidates[*best].score ||
        (c.score == candidates[*best].score && c.serialized < candidates[*best].serialized))
      best = i;
  }
  return best;
}

}  // namespace cqa
