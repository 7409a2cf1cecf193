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

#include "cqa/constraint_detection.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "cqa/text.h"

namespace cqa {

std::string_view to_string(Position p) {
  return p == Position::kDepth ? "depth" : "terminal";
}

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ",") + s;
  return out;
}

// Linked mention whose head token is the shallowest inside subtree_of(root),
// leftmost on ties.
std::optional<int> mention_under(const AnnotatedQuestion& q,
                                 const std::map<int, std::vector<EntityLink>>& links,
                                 int root) {
  std::optional<int> best;
  int best_depth = 0;
  for (const auto& [m, ls] : links) {
    if (ls.empty()) continue;
    const int h = mention_head(q.tree, q.mentions[m]);
    if (!q.tree.in_subtree(h, root)) continue;
    const int d = q.tree.depth_of(h);
    if (!best || d < best_depth ||
        (d == best_depth && q.mentions[m].start < q.mentions[*best].start)) {
      best = m;
      best_depth = d;
    }
  }
  return best;
}

bool in_any_mention(const AnnotatedQuestion& q, int token) {
  return std::any_of(q.mentions.begin(), q.mentions.end(),
                     [&](const Mention& m) { return m.start <= token && token <= m.end; });
}

std::optional<Literal> numeric_literal(std::string_view s) {
  if (s.empty() || s.size() > 18) return std::nullopt;
  bool dot = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '.' && !dot && i > 0 && i + 1 < s.size()) {
      dot = true;
    } else if (s[i] < '0' || s[i] > '9') {
      return std::nullopt;
    }
  }
  return Literal::parse(dot ? LiteralKind::kDecimal : LiteralKind::kInteger, s);
}

std::optional<int> year_of(std::string_view s, const DetectionConfig& config) {
  if (s.size() < 3 || s.size() > 4) return std::nullopt;
  if (!std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return std::nullopt;
  const int y = std::stoi(std::string(s));
  if (y < config.year_min || y > config.year_max) return std::nullopt;
  return y;
}

}  // namespace

std::string describe(const Constraint& c) {
  std::ostringstream out;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, TypeConstraint>) {
          out << "type(" << x.type_id << ")";
        } else if constexpr (std::is_same_v<T, Aggregation>) {
          out << "count";
        } else if constexpr (std::is_same_v<T, Superlative>) {
          out << "superlative(token=" << x.keyword_index << ", depth=" << x.depth
              << ", head=" << x.head_index << ", " << x.direction << ", k=" << x.ordinal_k
              << ", " << to_string(x.position);
          if (x.attached_entity) out << ", attached=" << *x.attached_entity;
          if (x.result_type) out << ", result_type=" << *x.result_type;
          out << ", hints=[" << join(x.ordering_hints) << "])";
        } else if constexpr (std::is_same_v<T, Comparative>) {
          out << "comparative(token=" << x.keyword_index << ", depth=" << x.depth << ", "
              << x.direction << ", " << to_string(x.position);
          if (x.pivot_entity) out << ", pivot=" << *x.pivot_entity;
          if (x.pivot_literal) out << ", pivot=" << x.pivot_literal->serialize();
          if (x.result_type) out << ", result_type=" << *x.result_type;
          out << ", hints=[" << join(x.ordering_hints) << "])";
        } else if constexpr (std::is_same_v<T, TemporalExplicit>) {
          out << "year(" << x.year << ")";
        } else if constexpr (std::is_same_v<T, TemporalImplicit>) {
          out << "when(" << x.event_entity << ")";
        } else {
          out << "entity(" << x.entity << ", " << x.link_score << ")";
        }
      },
      c);
  return out.str();
}

std::optional<std::string> resolve_type(const KnowledgeGraph& g, std::string_view word) {
  const std::string key = text::fold(word);
  if (key.empty()) return std::nullopt;
  for (const auto& t : g.all_types()) {
    if (text::fold(t) == key) return t;
    for (const auto& label : g.labels(t))
      if (text::fold(label) == key) return t;
  }
  return std::nullopt;
}

std::optional<TypeConstraint> detect_type(const AnnotatedQuestion& q, const KnowledgeGraph& g,
                                          const KeywordLexicon& lexicon) {
  const auto qw = find_question_word(q.tree, lexicon);
  if (!qw) return std::nullopt;
  if (qw->intrinsic_type) return TypeConstraint{*qw->intrinsic_type};
  if (!qw->head_hint) return std::nullopt;
  const auto type = resolve_type(g, q.tree.token(*qw->head_hint).lemma);
  if (!type) return std::nullopt;
  return TypeConstraint{*type};
}

std::optional<Aggregation> detect_aggregation(const AnnotatedQuestion& q,
                                              const KeywordLexicon& lexicon,
                                              std::vector<std::string>* warnings) {
  std::optional<Aggregation> out;
  for (const auto& k : locate_keywords(q.tree, lexicon)) {
    if (k.cls != KeywordClass::kAggregation) continue;
    if (!out) {
      out = Aggregation{k.start};
    } else if (warnings != nullptr) {
      warnings->push_back("ignoring extra aggregation keyword at token " +
                          std::to_string(k.start));
    }
  }
  return out;
}

std::vector<Superlative> detect_superlatives(const AnnotatedQuestion& q, const KnowledgeGraph& g,
                                             const std::map<int, std::vector<EntityLink>>& links,
                                             const KeywordLexicon& lexicon, int sup_threshold) {
  const auto keywords = locate_keywords(q.tree, lexicon);
  std::vector<Superlative> out;
  for (std::size_t i = 0; i < keywords.size(); ++i) {
    const auto& k = keywords[i];
    if (k.cls != KeywordClass::kSuperlative) continue;
    Superlative s;
    s.keyword_index = k.start;
    s.depth = q.tree.depth_of(k.start);
    s.head_index = q.tree.head_of(k.start).value_or(0);
    s.direction = k.payload.direction;
    s.ordering_hints = k.payload.relations;
    if (i > 0 && keywords[i - 1].cls == KeywordClass::kOrdinal &&
        keywords[i - 1].end + 1 == k.start && keywords[i - 1].payload.k >= 1)
      s.ordinal_k = keywords[i - 1].payload.k;
    if (s.head_index != 0) {
      s.result_type = resolve_type(g, q.tree.token(s.head_index).lemma);
      if (s.depth > sup_threshold) {
        if (const auto m = mention_under(q, links, s.head_index)) {
          s.position = Position::kDepth;
          s.attached_mention = *m;
          s.attached_entity = links.at(*m).front().entity;
        }
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Comparative> detect_comparatives(const AnnotatedQuestion& q, const KnowledgeGraph& g,
                                             const std::map<int, std::vector<EntityLink>>& links,
                                             const KeywordLexicon& lexicon, int cmp_threshold) {
  std::vector<Comparative> out;
  for (const auto& k : locate_keywords(q.tree, lexicon)) {
    if (k.cls != KeywordClass::kComparative) continue;
    Comparative c;
    c.keyword_index = k.start;
    c.depth = q.tree.depth_of(k.start);
    c.direction = k.payload.direction;
    c.ordering_hints = k.payload.relations;
    const auto head = q.tree.head_of(k.start);
    const auto second = head ? q.tree.head_of(*head) : std::nullopt;
    if (second) {
      c.result_type = resolve_type(g, q.tree.token(*second).lemma);
      if (c.depth > cmp_threshold) {
        if (const auto m = mention_under(q, links, *second)) {
          c.position = Position::kDepth;
          c.pivot_mention = *m;
          c.pivot_entity = links.at(*m).front().entity;
        }
      }
    } else if (head) {
      c.result_type = resolve_type(g, q.tree.token(*head).lemma);
    }
    if (c.position == Position::kTerminal) {
      for (const int t : q.tree.subtree_of(k.start)) {
        if (t == k.start || in_any_mention(q, t)) continue;
        if (auto lit = numeric_literal(q.tree.token(t).surface)) {
          c.pivot_literal = std::move(lit);
          break;
        }
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<TemporalConstraint> detect_temporal(
    const AnnotatedQuestion& q, const std::map<int, std::vector<EntityLink>>& links,
    const KeywordLexicon& lexicon, const DetectionConfig& config,
    const std::vector<int>& excluded) {
  std::vector<TemporalConstraint> out;
  for (int t = 1; t <= q.tree.size(); ++t) {
    if (in_any_mention(q, t) ||
        std::find(excluded.begin(), excluded.end(), t) != excluded.end())
      continue;
    if (const auto y = year_of(q.tree.token(t).surface, config))
      out.emplace_back(TemporalExplicit{*y, t});
  }
  for (const auto& k : locate_keywords(q.tree, lexicon)) {
    if (k.cls != KeywordClass::kTemporal || k.payload.kind != "subordinator") continue;
    const auto head = q.tree.head_of(k.start);
    if (!head || q.tree.token(*head).upos != "VERB") continue;
    if (const auto m = mention_under(q, links, *head))
      out.emplace_back(TemporalImplicit{links.at(*m).front().entity, *m, k.start});
  }
  return out;
}

std::pair<std::vector<EntityLink>, std::vector<EntityLink>> partition_entities(
    const std::map<int, std::vector<EntityLink>>& links,
    const std::vector<Constraint>& constraints) {
  std::set<int> consumed;
  for (const auto& c : constraints) {
    if (const auto* s = std::get_if<Superlative>(&c); s && s->attached_mention)
      consumed.insert(*s->attached_mention);
    if (const auto* p = std::get_if<Comparative>(&c); p && p->pivot_mention)
      consumed.insert(*p->pivot_mention);
    if (const auto* t = std::get_if<TemporalImplicit>(&c)) consumed.insert(t->event_mention);
  }
  std::pair<std::vector<EntityLink>, std::vector<EntityLink>> out;
  for (const auto& [m, ls] : links) {
    auto& bucket = consumed.contains(m) ? out.first : out.second;
    bucket.insert(bucket.end(), ls.begin(), ls.end());
  }
  return out;
}

ConstraintSet detect_constraints(const AnnotatedQuestion& q, const KnowledgeGraph& g,
                                 const std::map<int, std::vector<EntityLink>>& links,
                                 const KeywordLexicon& lexicon, const DetectionConfig& config) {
  ConstraintSet cs;
  cs.links = links;
  for (const auto& [m, ls] : links) cs.all.insert(cs.all.end(), ls.begin(), ls.end());

  if (auto t = detect_type(q, g, lexicon)) cs.constraints.emplace_back(std::move(*t));
  if (auto a = detect_aggregation(q, lexicon, &cs.warnings)) cs.constraints.emplace_back(*a);

  int depth_ops = 0;
  for (auto& s : detect_superlatives(q, g, links, lexicon, config.sup_threshold)) {
    depth_ops += s.position == Position::kDepth;
    cs.constraints.emplace_back(std::move(s));
  }
  std::vector<int> literal_tokens;
  for (auto& c : detect_comparatives(q, g, links, lexicon, config.cmp_threshold)) {
    depth_ops += c.position == Position::kDepth;
    if (c.pivot_literal) {
      for (const int t : q.tree.subtree_of(c.keyword_index))
        if (q.tree.token(t).surface == c.pivot_literal->lexical()) literal_tokens.push_back(t);
    }
    cs.constraints.emplace_back(std::move(c));
  }
  for (auto& t : detect_temporal(q, links, lexicon, config, literal_tokens))
    std::visit([&](auto& x) { cs.constraints.emplace_back(std::move(x)); }, t);

  auto [depth, topic] = partition_entities(links, cs.constraints);
  cs.depth = std::move(depth);
  cs.topic = std::move(topic);

  // With several topic-candidate mentions, each one not chosen as the topic
  // acts as an entity constraint; generation drops the chosen one.
  std::set<int> topic_mentions;
  for (const auto& [m, ls] : links) {
    if (ls.empty()) continue;
    const bool is_topic = std::any_of(cs.topic.begin(), cs.topic.end(), [&](const EntityLink& l) {
      return l.mention == q.mentions[m];
    });
    if (is_topic) topic_mentions.insert(m);
  }
  if (topic_mentions.size() > 1) {
    for (const int m : topic_mentions) {
      const auto& top = links.at(m).front();
      cs.constraints.emplace_back(EntityConstraint{top.entity, top.score, m});
    }
  }

  if (depth_ops > 1) cs.failure = "conflicting operational constraints";
  if (cs.topic.empty()) cs.warnings.push_back("no topic entity");
  return cs;
}

}  // namespace cqa
