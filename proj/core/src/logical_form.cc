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

#include "cqa/logical_form.h"

#include <algorithm>
#include <deque>
#include <map>

namespace cqa {

std::string render(const Term& t) {
  if (const auto* v = std::get_if<Var>(&t)) return "?" + v->name;
  if (const auto* e = std::get_if<Entity>(&t)) return "<" + e->id + ">";
  return std::get<Literal>(t).serialize();
}

std::string_view to_string(CompareOp op) {
  switch (op) {
    case CompareOp::kLess:
      return "<";
    case CompareOp::kGreater:
      return ">";
    case CompareOp::kEqual:
      return "=";
  }
  return "?";
}

CompareOp flip(CompareOp op) {
  switch (op) {
    case CompareOp::kLess:
      return CompareOp::kGreater;
    case CompareOp::kGreater:
      return CompareOp::kLess;
    case CompareOp::kEqual:
      return CompareOp::kEqual;
  }
  return op;
}

std::set<std::string> filter_variables(const Filter& f) {
  std::set<std::string> out;
  if (const auto* c = std::get_if<Compare>(&f)) {
    out.insert(c->var);
    if (const auto* v = std::get_if<Var>(&c->operand)) out.insert(v->name);
  } else {
    const auto& y = std::get<YearEquals>(f);
    out.insert(y.var);
    if (const auto* v = std::get_if<Var>(&y.other)) out.insert(v->name);
  }
  return out;
}

std::set<std::string> variables(const LogicalForm& f) {
  std::set<std::string> out;
  for (const auto& p : f.patterns) {
    if (const auto* v = std::get_if<Var>(&p.subject)) out.insert(v->name);
    if (const auto* v = std::get_if<Var>(&p.object)) out.insert(v->name);
  }
  for (const auto& flt : f.filters) {
    const auto vs = filter_variables(flt);
    out.insert(vs.begin(), vs.end());
  }
  if (f.order) out.insert(f.order->var);
  if (!f.answer_var.empty()) out.insert(f.answer_var);
  return out;
}

std::optional<std::string> validate(const LogicalForm& f) {
  if (f.patterns.empty()) return "unconstrained form";

  std::set<std::string> pattern_vars;
  // Undirected adjacency between pattern terms, keyed by rendered term.
  std::map<std::string, std::vector<std::string>> adj;
  std::set<std::string> sources;
  for (const auto& p : f.patterns) {
    const std::string s = render(p.subject), o = render(p.object);
    adj[s].push_back(o);
    adj[o].push_back(s);
    for (const Term* t : {&p.subject, &p.object}) {
      if (const auto* v = std::get_if<Var>(t)) pattern_vars.insert(v->name);
      if (std::holds_alternative<Entity>(*t)) sources.insert(render(*t));
    }
  }
  for (const auto& v : variables(f))
    if (!pattern_vars.contains(v)) return "variable ?" + v + " occurs in no pattern";

  std::map<std::string, int> dist;
  std::deque<std::string> queue;
  for (const auto& s : sources) {
    dist[s] = 0;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    const std::string cur = queue.front();
    queue.pop_front();
    // Literals end a hop; they do not relay connectivity.
    if (!cur.empty() && cur.front() == '"') continue;
    for (const auto& next : adj[cur]) {
      if (dist.contains(next)) continue;
      dist[next] = dist[cur] + 1;
      queue.push_back(next);
    }
  }
  for (const auto& v : pattern_vars) {
    const auto it = dist.find("?" + v);
    if (it == dist.end()) return "variable ?" + v + " is not connected to an entity";
    if (it->second > 2) return "variable ?" + v + " is more than two hops from an entity";
  }
  return std::nullopt;
}

void dedupe(LogicalForm& f) {
  std::vector<TriplePattern> patterns;
  for (auto& p : f.patterns)
    if (std::find(patterns.begin(), patterns.end(), p) == patterns.end())
      patterns.push_back(std::move(p));
  f.patterns = std::move(patterns);
  std::vector<Filter> filters;
  for (auto& x : f.filters)
    if (std::find(filters.begin(), filters.end(), x) == filters.end())
      filters.push_back(std::move(x));
  f.filters = std::move(filters);
}

}  // namespace cqa
