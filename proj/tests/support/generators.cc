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


#include "generators.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

#include "cqa/sparql.h"

namespace cqa::testing {

std::vector<Token> random_tree_tokens(Gen& gen, int n) {
  // Attach each token of a random order to an earlier one.
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i + 1;
  gen.shuffle(order);
  std::vector<Token> tokens(n);
  for (int k = 0; k < n; ++k) {
    Token& t = tokens[order[k] - 1];
    t.index = order[k];
    t.surface = "w" + std::to_string(order[k]);
    t.lemma = t.surface;
    t.upos = gen.chance(0.3) ? "VERB" : "NOUN";
    t.head = k == 0 ? 0 : order[gen.uniform(0, k - 1)];
    t.deprel = k == 0 ? "root" : "dep";
  }
  return tokens;
}

Literal random_literal(Gen& gen) {
  switch (gen.uniform(0, 3)) {
    case 0:
      return Literal::integer(gen.uniform(-5, 40));
    case 1: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%d.%d", gen.uniform(-5, 40), gen.uniform(0, 9));
      return Literal::parse(LiteralKind::kDecimal, buf);
    }
    case 2: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", gen.uniform(1990, 1995),
                    gen.uniform(1, 12), gen.uniform(1, 28));
      return Literal::parse(LiteralKind::kDate, buf);
    }
    default:
      return Literal::text(std::string(1, static_cast<char>('a' + gen.uniform(0, 4))));
  }
}

KnowledgeGraph random_graph(Gen& gen, int entities, int relations) {
  std::vector<Triple> triples;
  auto ent = [](int i) { return "e" + std::to_string(i); };
  const int edges = gen.uniform(entities, 3 * entities);
  for (int k = 0; k < edges; ++k) {
    Triple t;
    t.subject = ent(gen.uniform(0, entities - 1));
    t.relation = "r" + std::to_string(gen.uniform(0, relations - 1));
    if (gen.chance(0.6))
      t.object = Entity{ent(gen.uniform(0, entities - 1))};
    else
      t.object = random_literal(gen);
    triples.push_back(std::move(t));
  }
  for (int i = 0; i < entities; ++i)
    if (gen.chance(0.7))
      triples.push_back({ent(i), std::string(kTypeRelation),
                         Entity{"T" + std::to_string(gen.uniform(0, 2))}});
  return KnowledgeGraph::from_triples(std::move(triples));
}

namespace {

Term value_term(const Value& v) {
  if (const auto* e = std::get_if<Entity>(&v)) return *e;
  return std::get<Literal>(v);
}

Filter random_filter(Gen& gen, const std::vector<std::string>& vars) {
  const std::string& v = gen.pick(vars);
  if (gen.chance(0.3)) {
    YearEquals y{v, 0};
    if (vars.size() > 1 && gen.chance(0.4))
      y.other = Var{gen.pick(vars)};
    else
      y.other = gen.uniform(1990, 1995);
    return y;
  }
  Compare c;
  c.var = v;
  c.op = static_cast<CompareOp>(gen.uniform(0, 2));
  if (vars.size() > 1 && gen.chance(0.4))
    c.operand = Var{gen.pick(vars)};
  else
    c.operand = random_literal(gen);
  return c;
}

void add_modifiers(Gen& gen, LogicalForm& f, const std::vector<std::string>& vars) {
  const int filters = gen.uniform(0, 2);
  for (int i = 0; i < filters; ++i) f.filters.push_back(random_filter(gen, vars));
  f.answer_var = gen.pick(vars);
  if (gen.chance(0.3))
    f.order = OrderBy{gen.pick(vars), gen.chance(0.5), gen.uniform(0, 2), gen.uniform(1, 3)};
  f.count = gen.chance(0.2);
}

}  // namespace

LogicalForm random_valid_form(Gen& gen, const KnowledgeGraph& g, int max_vars) {
  const auto ents = g.all_entities();
  const auto rels = g.all_relations();
  for (;;) {
    LogicalForm f;
    std::map<std::string, std::string> var_of;  // node serialization -> var
    std::vector<std::string> vars;
    auto var_for = [&](const Value& node) {
      const std::string key = serialize(node);
      auto it = var_of.find(key);
      if (it != var_of.end()) return it->second;
      const std::string name = "v" + std::to_string(vars.size());
      vars.push_back(name);
      var_of.emplace(key, name);
      return name;
    };
    const std::string& anchor = gen.pick(ents);
    const auto paths = g.expand_paths(anchor, 2);
    if (paths.empty()) continue;
    const Path& path = gen.pick(paths);
    Term prev = Entity{anchor};
    for (const auto& step : path.steps) {
      // Keep an intermediate node as a constant now and then.
      Term next = Var{var_for(step.endpoint)};
      if (&step != &path.steps.back() && gen.chance(0.15)) next = value_term(step.endpoint);
      if (step.direction == Direction::kOut)
        f.patterns.push_back({prev, step.relation, next});
      else
        f.patterns.push_back({next, step.relation, prev});
      prev = next;
    }
    if (vars.empty()) continue;
    // Extra patterns on existing variables: a type, a second anchor, or a
    // fresh one-hop variable.
    const int extras = gen.uniform(0, 2);
    for (int i = 0; i < extras; ++i) {
      const std::string v = gen.pick(vars);
      const int kind = gen.uniform(0, 2);
      if (kind == 0) {
        const auto types = g.all_types();
        if (!types.empty())
          f.patterns.push_back({Var{v}, std::string(kTypeRelation), Entity{gen.pick(types)}});
      } else if (kind == 1) {
        f.patterns.push_back({Var{v}, gen.pick(rels), Entity{gen.pick(ents)}});
      } else if (static_cast<int>(vars.size()) < max_vars) {
        const std::string w = "v" + std::to_string(vars.size());
        vars.push_back(w);
        f.patterns.push_back({Var{v}, gen.chance(0.9) ? gen.pick(rels) : "no_such", Var{w}});
      }
    }
    if (static_cast<int>(vars.size()) > max_vars) continue;
    add_modifiers(gen, f, vars);
    if (!validate(f)) return f;
  }
}

LogicalForm random_raw_form(Gen& gen, const std::vector<std::string>& entities,
                            const std::vector<std::string>& relations, int max_vars) {
  LogicalForm f;
  const int nvars = gen.uniform(1, max_vars);
  std::vector<std::string> vars;
  for (int i = 0; i < nvars; ++i) vars.push_back("v" + std::to_string(i));
  auto term = [&]() -> Term {
    if (gen.chance(0.65)) return Var{gen.pick(vars)};
    if (gen.chance(0.8)) return Entity{gen.pick(entities)};
    return random_literal(gen);
  };
  const int n = gen.uniform(0, 4);
  for (int i = 0; i < n; ++i) {
    Term s = term();
    while (std::holds_alternative<Literal>(s)) s = term();
    f.patterns.push_back({s, gen.pick(relations), term()});
  }
  if (gen.chance(0.5)) add_modifiers(gen, f, vars);
  else f.answer_var = gen.pick(vars);
  return f;
}

std::vector<QuestionOutcome> random_outcomes(Gen& gen, int n) {
  std::vector<QuestionOutcome> out(n);
  for (int i = 0; i < n; ++i) {
    QuestionOutcome& o = out[i];
    o.id = "q" + std::to_string(i);
    o.generated = gen.chance(0.6);
    o.correct = o.generated && gen.chance(0.7);
    if (o.correct) {
      o.precision = o.recall = o.f1 = 1.0;
      o.category = FailureCategory::kSuccess;
    } else {
      o.precision = gen.real(0, 1);
      o.recall = gen.real(0, 1);
      const double s = o.precision + o.recall;
      o.f1 = s == 0 ? 0 : 2 * o.precision * o.recall / s;
      o.category = o.generated ? FailureCategory::kSelection : FailureCategory::kGeneration;
    }
  }
  return out;
}

}  // namespace cqa::testing
