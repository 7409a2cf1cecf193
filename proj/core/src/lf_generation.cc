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

#include "cqa/lf_generation.h"

#include <algorithm>
#include <functional>
#include <map>

#include "cqa/sparql.h"

namespace cqa {

namespace {

Term var(int i) { return Var{"v" + std::to_string(i)}; }
std::string var_name(int i) { return "v" + std::to_string(i); }

TriplePattern pattern(Term s, std::string r, Term o) {
  return TriplePattern{std::move(s), std::move(r), std::move(o)};
}

TriplePattern type_pattern(const std::string& v, const std::string& type) {
  return pattern(Var{v}, std::string(kTypeRelation), Entity{type});
}

// Memoizes relation scores for one question.
class ScoreCache {
 public:
  ScoreCache(const RelationScorer& scorer, const AnnotatedQuestion& q) : scorer_(scorer), q_(q) {}
  double operator()(const std::string& r) const {
    const auto it = cache_.find(r);
    if (it != cache_.end()) return it->second;
    return cache_[r] = scorer_.score(q_, r);
  }
  bool keep(const std::string& r, double tau) const { return (*this)(r) >= tau; }

 private:
  const RelationScorer& scorer_;
  const AnnotatedQuestion& q_;
  mutable std::map<std::string, double> cache_;
};

template <typename T>
std::optional<T> first_of(const ConstraintSet& cs) {
  for (const auto& c : cs.constraints)
    if (const auto* x = std::get_if<T>(&c)) return *x;
  return std::nullopt;
}

std::optional<std::string> question_type(const ConstraintSet& cs) {
  if (const auto t = first_of<TypeConstraint>(cs)) return t->type_id;
  return std::nullopt;
}

std::optional<Superlative> terminal_superlative(const ConstraintSet& cs) {
  for (const auto& s : cs.all_of<Superlative>())
    if (s.position == Position::kTerminal) return s;
  return std::nullopt;
}

std::optional<Comparative> terminal_comparative(const ConstraintSet& cs) {
  for (const auto& c : cs.all_of<Comparative>())
    if (c.position == Position::kTerminal) return c;
  return std::nullopt;
}

CompareOp op_for(const std::string& direction) {
  return direction == "less" ? CompareOp::kLess : CompareOp::kGreater;
}

std::vector<std::string> data_relations_for_type(const KnowledgeGraph& g,
                                                 const std::string& type) {
  std::vector<std::string> out;
  for (auto& r : g.relations_for_type(type))
    if (!is_reserved_relation(r)) out.push_back(std::move(r));
  return out;
}

}  // namespace

std::string TopicSeed::describe() const {
  switch (kind) {
    case Kind::kEntity:
      return entity;
    case Kind::kVirtualEntity:
      return entity + " (virtual)";
    case Kind::kVariableRooted:
      return "subquery " + render_sparql(subform);
    case Kind::kTypeAnchored:
      return "type " + result_type.value_or("?");
  }
  return "?";
}

std::vector<std::string> ordering_candidates(const std::vector<std::string>& hints,
                                             const std::optional<std::string>& type,
                                             const AnnotatedQuestion& q,
                                             const KnowledgeGraph& g,
                                             const RelationScorer& scorer, int fallback_k) {
  std::vector<std::string> pool;
  if (type) {
    pool = data_relations_for_type(g, *type);
  } else {
    for (auto& r : g.all_relations())
      if (!is_reserved_relation(r)) pool.push_back(std::move(r));
  }
  std::vector<std::string> out;
  for (const auto& h : hints)
    if (std::find(pool.begin(), pool.end(), h) != pool.end() &&
        std::find(out.begin(), out.end(), h) == out.end())
      out.push_back(h);
  if (!out.empty()) return out;

  // Fallback: literal-valued relations, best matcher score first.
  std::vector<std::pair<double, std::string>> scored;
  for (const auto& r : pool) {
    bool literal_valued = false;
    for (const auto i : g.with_relation(r)) {
      const Triple& t = g.triples()[i];
      if (std::holds_alternative<Literal>(t.object) &&
          (!type || g.entity_types(t.subject).contains(*type))) {
        literal_valued = true;
        break;
      }
    }
    if (literal_valued) scored.emplace_back(scorer.score(q, r), r);
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (int i = 0; i < fallback_k && i < static_cast<int>(scored.size()); ++i)
    out.push_back(scored[i].second);
  return out;
}

DepthResolution resolve_depth_operations(const AnnotatedQuestion& q, const ConstraintSet& cs,
                                         const KnowledgeGraph& g, const RelationScorer& scorer,
                                         const GenerationConfig& config) {
  DepthResolution out;
  const ScoreCache score(scorer, q);
  auto link_score = [&](int mention) {
    const auto it = cs.links.find(mention);
    return it == cs.links.end() || it->second.empty() ? 0.0 : it->second.front().score;
  };

  for (const auto& s : cs.all_of<Superlative>()) {
    if (s.position != Position::kDepth) continue;
    const std::string& anchor = *s.attached_entity;
    // Relations joining the sub-question's answer ?v0 to the anchor entity.
    std::set<std::pair<std::string, Direction>> links;
    for (const auto& t : g.incoming(anchor))
      if (score.keep(t.relation, config.tau)) links.insert({t.relation, Direction::kIn});
    for (const auto& t : g.outgoing(anchor))
      if (std::holds_alternative<Entity>(t.object) && score.keep(t.relation, config.tau))
        links.insert({t.relation, Direction::kOut});
    const auto orderings = ordering_candidates(s.ordering_hints, s.result_type, q, g, scorer,
                                               config.ordering_fallback_k);
    std::set<std::string> produced;
    for (const auto& [rel, dir] : links) {
      for (const auto& ord : orderings) {
        LogicalForm sub;
        sub.patterns.push_back(dir == Direction::kIn ? pattern(var(0), rel, Entity{anchor})
                                                     : pattern(Entity{anchor}, rel, var(0)));
        sub.patterns.push_back(pattern(var(0), ord, var(1)));
        if (s.result_type) sub.patterns.push_back(type_pattern("v0", *s.result_type));
        sub.order = OrderBy{"v1", s.direction == "desc", s.ordinal_k - 1, 1};
        const auto answers = execute(sub, g);
        if (answers.values.size() != 1 || !std::holds_alternative<Entity>(answers.values[0])) {
          out.failures.push_back("depth superlative sub-question " + render_sparql(sub) +
                                 " has no single entity answer");
          continue;
        }
        const std::string& entity = std::get<Entity>(answers.values[0]).id;
        if (!produced.insert(entity).second) continue;
        TopicSeed seed;
        seed.kind = TopicSeed::Kind::kVirtualEntity;
        seed.entity = entity;
        seed.link_score = s.attached_mention ? link_score(*s.attached_mention) : 0.0;
        seed.result_type = s.result_type;
        seed.subform = sub;
        out.seeds.push_back(std::move(seed));
      }
    }
  }

  for (const auto& c : cs.all_of<Comparative>()) {
    if (c.position != Position::kDepth) continue;
    const std::string& pivot = *c.pivot_entity;
    std::optional<std::string> type = c.result_type;
    if (!type) {
      const auto types = g.entity_types(pivot);
      if (!types.empty()) type = *types.begin();
    }
    for (const auto& ord : ordering_candidates(c.ordering_hints, type, q, g, scorer,
                                               config.ordering_fallback_k)) {
      LogicalForm sub;
      sub.patterns.push_back(pattern(var(0), ord, var(1)));
      sub.patterns.push_back(pattern(Entity{pivot}, ord, var(2)));
      if (type) sub.patterns.push_back(type_pattern("v0", *type));
      sub.filters.push_back(Compare{"v1", op_for(c.direction), Var{"v2"}});
      if (execute(sub, g).empty()) {
        out.failures.push_back("depth comparative sub-question " + render_sparql(sub) +
                               " has no answers");
        continue;
      }
      TopicSeed seed;
      seed.kind = TopicSeed::Kind::kVariableRooted;
      seed.link_score = c.pivot_mention ? link_score(*c.pivot_mention) : 0.0;
      seed.result_type = type;
      seed.subform = std::move(sub);
      out.seeds.push_back(std::move(seed));
    }
  }
  return out;
}

std::vector<Skeleton> expand_topic_entity(const TopicSeed& seed, const AnnotatedQuestion& q,
                                          const KnowledgeGraph& g, const RelationScorer& scorer,
                                          const GenerationConfig& config) {
  const ScoreCache score(scorer, q);
  std::vector<Skeleton> out;

  if (seed.kind == TopicSeed::Kind::kVariableRooted ||
      seed.kind == TopicSeed::Kind::kTypeAnchored) {
    const std::string root = seed.subform.answer_var;
    int next = 0;
    for (const auto& v : variables(seed.subform)) {
      const auto n = std::stoi(v.substr(1));
      next = std::max(next, n + 1);
    }
    Skeleton base{seed.subform, {root}, std::nullopt, next};
    out.push_back(base);
    if (!seed.result_type) return out;
    for (const auto& r : data_relations_for_type(g, *seed.result_type)) {
      if (!score.keep(r, config.tau)) continue;
      Skeleton s = base;
      s.last_hop = pattern(Var{root}, r, var(next));
      s.form.patterns.push_back(*s.last_hop);
      s.form.answer_var = var_name(next);
      s.next_var = next + 1;
      out.push_back(std::move(s));
    }
    return out;
  }

  std::optional<std::vector<std::string>> first_hop_allowed;
  if (seed.kind == TopicSeed::Kind::kVirtualEntity && seed.result_type)
    first_hop_allowed = data_relations_for_type(g, *seed.result_type);

  const Term topic = Entity{seed.entity};
  std::set<std::vector<std::pair<std::string, Direction>>> seen;
  for (const auto& path : g.expand_paths(seed.entity, 2)) {
    std::vector<std::pair<std::string, Direction>> key;
    bool ok = true;
    for (const auto& step : path.steps) {
      ok = ok && score.keep(step.relation, config.tau);
      key.emplace_back(step.relation, step.direction);
    }
    if (first_hop_allowed) {
      const auto& first = path.steps.front();
      ok = ok && first.direction == Direction::kOut &&
           std::find(first_hop_allowed->begin(), first_hop_allowed->end(), first.relation) !=
               first_hop_allowed->end();
    }
    if (!ok || !seen.insert(key).second) continue;

    Skeleton s;
    Term prev = topic;
    int next = 0;
    for (const auto& step : path.steps) {
      const Term cur = var(next);
      const auto p = step.direction == Direction::kOut ? pattern(prev, step.relation, cur)
                                                       : pattern(cur, step.relation, prev);
      s.form.patterns.push_back(p);
      s.last_hop = p;
      if (next == 0) s.topic_adjacent.push_back(var_name(0));
      prev = cur;
      ++next;
    }
    s.form.answer_var = var_name(next - 1);
    s.next_var = next;
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Skeleton> attach_constraints(const Skeleton& skeleton, const TopicSeed& seed,
                                         const PivotPlan& plan, const ConstraintSet& cs,
                                         const AnnotatedQuestion& q, const KnowledgeGraph& g,
                                         const RelationScorer& scorer,
                                         const GenerationConfig& config) {
  const ScoreCache score(scorer, q);
  std::vector<Skeleton> current{skeleton};

  auto extend = [&](const std::function<std::vector<Skeleton>(const Skeleton&)>& step) {
    std::vector<Skeleton> next;
    for (const auto& s : current) {
      auto more = step(s);
      next.insert(next.end(), std::make_move_iterator(more.begin()),
                  std::make_move_iterator(more.end()));
    }
    current = std::move(next);
  };

  for (const auto& ec : cs.all_of<EntityConstraint>()) {
    if (seed.kind == TopicSeed::Kind::kEntity && ec.mention == seed.mention) continue;
    if (plan.kind == PivotPlan::Kind::kEntity && ec.mention == plan.mention) continue;
    std::set<std::pair<std::string, Direction>> rels;
    for (const auto& t : g.outgoing(ec.entity))
      if (score.keep(t.relation, config.tau)) rels.insert({t.relation, Direction::kOut});
    for (const auto& t : g.incoming(ec.entity))
      if (score.keep(t.relation, config.tau)) rels.insert({t.relation, Direction::kIn});
    extend([&](const Skeleton& s) {
      std::vector<Skeleton> out;
      for (const auto& v : s.topic_adjacent) {
        for (const auto& [r, dir] : rels) {
          Skeleton x = s;
          x.form.patterns.push_back(dir == Direction::kIn ? pattern(Var{v}, r, Entity{ec.entity})
                                                          : pattern(Entity{ec.entity}, r, Var{v}));
          out.push_back(std::move(x));
        }
      }
      return out;
    });
  }

  std::vector<std::string> temporal;
  for (const auto& r : config.temporal_relations)
    if (g.has_relation(r)) temporal.push_back(r);

  for (const auto& te : cs.all_of<TemporalExplicit>()) {
    extend([&](const Skeleton& s) {
      std::vector<Skeleton> out;
      for (const auto& v : variables(s.form)) {
        for (const auto& r : temporal) {
          Skeleton x = s;
          const int t = x.next_var++;
          x.form.patterns.push_back(pattern(Var{v}, r, var(t)));
          x.form.filters.push_back(YearEquals{var_name(t), te.year});
          out.push_back(std::move(x));
        }
      }
      return out;
    });
  }

  for (const auto& ti : cs.all_of<TemporalImplicit>()) {
    std::vector<std::string> event_rels;
    for (const auto& t : g.outgoing(ti.event_entity))
      if (std::find(temporal.begin(), temporal.end(), t.relation) != temporal.end() &&
          std::find(event_rels.begin(), event_rels.end(), t.relation) == event_rels.end())
        event_rels.push_back(t.relation);
    extend([&](const Skeleton& s) {
      std::vector<Skeleton> out;
      for (const auto& v : s.topic_adjacent) {
        for (const auto& r : temporal) {
          for (const auto& re : event_rels) {
            Skeleton x = s;
            const int t1 = x.next_var++;
            const int t2 = x.next_var++;
            x.form.patterns.push_back(pattern(Var{v}, r, var(t1)));
            x.form.patterns.push_back(pattern(Entity{ti.event_entity}, re, var(t2)));
            x.form.filters.push_back(YearEquals{var_name(t1), Var{var_name(t2)}});
            out.push_back(std::move(x));
          }
        }
      }
      return out;
    });
  }
  return current;
}

std::vector<LogicalForm> apply_terminal_operations(const Skeleton& skeleton,
                                                   const TopicSeed& seed, const PivotPlan& plan,
                                                   const ConstraintSet& cs,
                                                   const AnnotatedQuestion& q,
                                                   const KnowledgeGraph& g,
                                                   const RelationScorer& scorer,
                                                   const GenerationConfig& config) {
  const auto qtype = question_type(cs);
  std::vector<Skeleton> current{skeleton};

  if (const auto cmp = terminal_comparative(cs); cmp && plan.kind != PivotPlan::Kind::kNone) {
    const CompareOp op = op_for(cmp->direction);
    std::optional<std::string> answer_type = qtype ? qtype : cmp->result_type;
    std::vector<Skeleton> next;
    for (const auto& s : current) {
      if (plan.kind == PivotPlan::Kind::kTopic) {
        // The skeleton reached a value of the topic; compare other things'
        // values of the same relation against it.
        if (!s.last_hop || s.last_hop->object != Term{Var{s.form.answer_var}}) continue;
        std::optional<std::string> type = answer_type;
        if (!type && seed.kind != TopicSeed::Kind::kTypeAnchored) {
          const auto types = g.entity_types(seed.entity);
          if (!types.empty()) type = *types.begin();
        }
        if (!type) type = seed.result_type;
        const auto ords = ordering_candidates(cmp->ordering_hints, type, q, g, scorer,
                                              config.ordering_fallback_k);
        const std::string& r = s.last_hop->relation;
        if (std::find(ords.begin(), ords.end(), r) == ords.end()) continue;
        Skeleton x = s;
        const int a = x.next_var++;
        const int v = x.next_var++;
        x.form.patterns.push_back(pattern(var(a), r, var(v)));
        if (type) x.form.patterns.push_back(type_pattern(var_name(a), *type));
        x.form.filters.push_back(Compare{var_name(v), op, Var{s.form.answer_var}});
        x.form.answer_var = var_name(a);
        x.last_hop.reset();
        next.push_back(std::move(x));
        continue;
      }
      for (const auto& r : ordering_candidates(cmp->ordering_hints, answer_type, q, g, scorer,
                                               config.ordering_fallback_k)) {
        Skeleton x = s;
        const int v = x.next_var++;
        x.form.patterns.push_back(pattern(Var{s.form.answer_var}, r, var(v)));
        if (plan.kind == PivotPlan::Kind::kLiteral) {
          x.form.filters.push_back(Compare{var_name(v), op, *cmp->pivot_literal});
        } else {
          const int p = x.next_var++;
          x.form.patterns.push_back(pattern(Entity{plan.entity}, r, var(p)));
          x.form.filters.push_back(Compare{var_name(v), op, Var{var_name(p)}});
        }
        next.push_back(std::move(x));
      }
    }
    current = std::move(next);
  }

  if (const auto sup = terminal_superlative(cs)) {
    const auto type = sup->result_type ? sup->result_type : qtype;
    std::vector<Skeleton> next;
    for (const auto& s : current) {
      for (const auto& r : ordering_candidates(sup->ordering_hints, type, q, g, scorer,
                                               config.ordering_fallback_k)) {
        Skeleton x = s;
        const int v = x.next_var++;
        x.form.patterns.push_back(pattern(Var{s.form.answer_var}, r, var(v)));
        if (sup->result_type)
          x.form.patterns.push_back(type_pattern(s.form.answer_var, *sup->result_type));
        x.form.order = OrderBy{var_name(v), sup->direction == "desc", sup->ordinal_k - 1, 1};
        next.push_back(std::move(x));
      }
    }
    current = std::move(next);
  }

  std::vector<LogicalForm> out;
  for (auto& s : current) {
    if (first_of<Aggregation>(cs)) s.form.count = true;
    if (qtype) s.form.patterns.push_back(type_pattern(s.form.answer_var, *qtype));
    dedupe(s.form);
    out.push_back(std::move(s.form));
  }
  return out;
}

GenerationResult generate_candidates(const AnnotatedQuestion& q, const ConstraintSet& cs,
                                     const KnowledgeGraph& g, const RelationScorer& scorer,
                                     const GenerationConfig& config) {
  GenerationResult res;
  if (cs.failure) {
    res.failure = *cs.failure;
    return res;
  }
  const ScoreCache score(scorer, q);

  // Step 1.
  std::vector<TopicSeed> seeds;
  const auto depth = resolve_depth_operations(q, cs, g, scorer, config);
  for (const auto& f : depth.failures) res.warnings.push_back(f);
  for (const auto& c : cs.constraints) {
    const bool is_depth =
        (std::holds_alternative<Superlative>(c) &&
         std::get<Superlative>(c).position == Position::kDepth) ||
        (std::holds_alternative<Comparative>(c) &&
         std::get<Comparative>(c).position == Position::kDepth);
    if (is_depth) res.trace.push_back({1, "apply " + describe(c)});
  }
  for (const auto& s : depth.seeds) {
    res.trace.push_back({1, "seed " + s.describe()});
    seeds.push_back(s);
  }

  // E_topic seeds, by mention then link order.
  for (const auto& [m, links] : cs.links) {
    for (const auto& l : links) {
      const bool is_topic = std::any_of(cs.topic.begin(), cs.topic.end(), [&](const EntityLink& t) {
        return t.entity == l.entity && t.mention == l.mention;
      });
      if (!is_topic) continue;
      TopicSeed seed;
      seed.kind = TopicSeed::Kind::kEntity;
      seed.entity = l.entity;
      seed.link_score = l.score;
      seed.mention = m;
      seeds.push_back(std::move(seed));
    }
  }

  if (seeds.empty()) {
    std::optional<std::string> type = question_type(cs);
    if (!type) {
      if (const auto s = terminal_superlative(cs)) type = s->result_type;
    }
    if (!type) {
      if (const auto c = terminal_comparative(cs)) type = c->result_type;
    }
    if (type) {
      TopicSeed seed;
      seed.kind = TopicSeed::Kind::kTypeAnchored;
      seed.result_type = type;
      seed.subform.patterns.push_back(type_pattern("v0", *type));
      seed.subform.answer_var = "v0";
      res.trace.push_back({2, "no topic entity; anchoring on type " + *type});
      seeds.push_back(std::move(seed));
    }
  }
  res.stats.seeds = seeds.size();
  if (seeds.empty()) {
    res.failure = "no topic entity";
    return res;
  }

  const auto cmp = terminal_comparative(cs);
  if (cmp) res.trace.push_back({4, "apply " + describe(*cmp)});
  if (const auto sup = terminal_superlative(cs)) res.trace.push_back({4, "apply " + describe(*sup)});

  struct Produced {
    std::size_t seed;
    LogicalForm form;
    AnswerSet answers;
  };
  std::vector<Produced> produced;
  for (std::size_t si = 0; si < seeds.size(); ++si) {
    const TopicSeed& seed = seeds[si];
    std::vector<PivotPlan> plans;
    if (!cmp) {
      plans.push_back({});
    } else if (cmp->pivot_literal) {
      plans.push_back({PivotPlan::Kind::kLiteral, "", -1});
    } else {
      plans.push_back({PivotPlan::Kind::kTopic, "", -1});
      for (const auto& [m, links] : cs.links) {
        if (links.empty() || m == seed.mention) continue;
        const bool in_topic = std::any_of(cs.topic.begin(), cs.topic.end(), [&](const EntityLink& t) {
          return t.mention == links.front().mention;
        });
        if (in_topic) plans.push_back({PivotPlan::Kind::kEntity, links.front().entity, m});
      }
    }

    const auto skeletons = expand_topic_entity(seed, q, g, scorer, config);
    res.stats.skeletons += skeletons.size();
    for (const auto& plan : plans) {
      for (const auto& sk : skeletons) {
        const auto attached = attach_constraints(sk, seed, plan, cs, q, g, scorer, config);
        res.stats.attached += attached.size();
        for (const auto& a : attached) {
          for (auto& form : apply_terminal_operations(a, seed, plan, cs, q, g, scorer, config)) {
            ++res.stats.forms;
            if (validate(form)) {
              ++res.stats.invalid;
              continue;
            }
            std::vector<std::string> warnings;
            auto answers = execute(form, g, &warnings);
            if (answers.empty()) {
              ++res.stats.empty;
              continue;
            }
            produced.push_back({si, std::move(form), std::move(answers)});
          }
        }
      }
    }
  }

  // Keep forms of the best-linked producing seeds only.
  double best = -1.0;
  for (const auto& p : produced) best = std::max(best, seeds[p.seed].link_score);
  std::map<std::string, Candidate> unique;
  for (auto& p : produced) {
    const TopicSeed& seed = seeds[p.seed];
    if (seed.link_score < best) {
      ++res.stats.tie_dropped;
      continue;
    }
    Candidate c;
    c.form = canonicalize(p.form);
    c.serialized = render_sparql(c.form);
    c.topic = seed.describe();
    c.topic_link_score = seed.link_score;
    c.min_relation_match = 1.0;
    for (const auto& pat : c.form.patterns)
      if (!is_reserved_relation(pat.relation))
        c.min_relation_match = std::min(c.min_relation_match, score(pat.relation));
    c.answers = std::move(p.answers);
    if (!unique.emplace(c.serialized, std::move(c)).second) ++res.stats.duplicates;
  }
  for (auto& [text, c] : unique) res.candidates.push_back(std::move(c));
  if (res.candidates.size() > config.candidate_cap) {
    res.stats.truncated = res.candidates.size() - config.candidate_cap;
    res.warnings.push_back("candidate list truncated from " +
                           std::to_string(res.candidates.size()) + " to " +
                           std::to_string(config.candidate_cap));
    res.candidates.resize(config.candidate_cap);
  }
  if (res.candidates.empty()) res.failure = "no candidates";
  return res;
}

}  // namespace cqa
