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

#include "cqa/lf_execution.h"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace cqa {

std::vector<std::string> AnswerSet::strings() const {
  if (is_count) return {std::to_string(count)};
  std::vector<std::string> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(answer_string(v));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

int kind_rank(const Value& v) {
  if (std::holds_alternative<Entity>(v)) return 3;
  const auto& lit = std::get<Literal>(v);
  if (lit.is_numeric()) return 0;
  return lit.kind() == LiteralKind::kDate ? 1 : 2;
}

// Total order for ORDER BY keys: numbers, then dates, then text, then
// entities; within a group by value.
std::weak_ordering order_key_compare(const Value& a, const Value& b) {
  const int ra = kind_rank(a), rb = kind_rank(b);
  if (ra != rb) return ra <=> rb;
  if (ra == 3) return std::get<Entity>(a).id <=> std::get<Entity>(b).id;
  return compare_values(std::get<Literal>(a), std::get<Literal>(b));
}

using Binding = std::vector<std::optional<Value>>;

struct Compiled {
  std::map<std::string, int> index;
  std::vector<std::string> names;
};

Compiled compile_vars(const LogicalForm& f) {
  Compiled c;
  for (const auto& v : variables(f)) {
    c.index[v] = static_cast<int>(c.names.size());
    c.names.push_back(v);
  }
  return c;
}

void require_pattern_vars(const LogicalForm& f) {
  if (f.patterns.empty()) throw std::invalid_argument("unconstrained form");
  std::set<std::string> in_patterns;
  for (const auto& p : f.patterns)
    for (const Term* t : {&p.subject, &p.object})
      if (const auto* v = std::get_if<Var>(t)) in_patterns.insert(v->name);
  for (const auto& v : variables(f))
    if (!in_patterns.contains(v))
      throw std::invalid_argument("variable ?" + v + " occurs in no pattern");
}

// Result of a filter on a complete enough binding: true/false, or an error
// message when the operands cannot be compared.
struct FilterOutcome {
  bool pass = false;
  std::string error;
};

FilterOutcome eval_filter(const Filter& flt, const std::map<std::string, int>& index,
                          const Binding& b) {
  auto get = [&](const std::string& name) -> const Value& { return *b[index.at(name)]; };
  if (const auto* c = std::get_if<Compare>(&flt)) {
    const Value& left = get(c->var);
    const Value right = std::holds_alternative<Var>(c->operand)
                            ? get(std::get<Var>(c->operand).name)
                            : Value{std::get<Literal>(c->operand)};
    const auto* ll = std::get_if<Literal>(&left);
    const auto* rl = std::get_if<Literal>(&right);
    if (ll == nullptr || rl == nullptr) {
      if (ll == nullptr && rl == nullptr && c->op == CompareOp::kEqual)
        return {std::get<Entity>(left) == std::get<Entity>(right), ""};
      return {false, "comparison involving an entity"};
    }
    try {
      const auto cmp = compare_values(*ll, *rl);
      switch (c->op) {
        case CompareOp::kLess:
          return {cmp < 0, ""};
        case CompareOp::kGreater:
          return {cmp > 0, ""};
        case CompareOp::kEqual:
          return {cmp == 0, ""};
      }
    } catch (const LiteralKindMismatch& e) {
      return {false, e.what()};
    }
    return {false, ""};
  }
  const auto& y = std::get<YearEquals>(flt);
  auto year = [](const Value& v) -> std::optional<int> {
    const auto* lit = std::get_if<Literal>(&v);
    if (lit == nullptr || lit->kind() != LiteralKind::kDate) return std::nullopt;
    return lit->year();
  };
  const auto a = year(get(y.var));
  const auto other = std::holds_alternative<int>(y.other)
                         ? std::optional<int>(std::get<int>(y.other))
                         : year(get(std::get<Var>(y.other).name));
  if (!a || !other) return {false, "YEAR() applied to a non-date value"};
  return {*a == *other, ""};
}

// Shared tail: ordering, projection, distinct, slicing, count.
AnswerSet finish(const LogicalForm& f, const std::map<std::string, int>& index,
                 std::vector<Binding> rows) {
  const int answer = index.at(f.answer_var);
  if (f.order) {
    const int key = index.at(f.order->var);
    const bool desc = f.order->descending;
    auto row_text = [](const Binding& r) {
      std::vector<std::string> out;
      for (const auto& v : r) out.push_back(v ? serialize(*v) : "");
      return out;
    };
    std::stable_sort(rows.begin(), rows.end(), [&](const Binding& a, const Binding& b) {
      auto cmp = order_key_compare(*a[key], *b[key]);
      if (cmp != 0) return desc ? cmp > 0 : cmp < 0;
      const auto sa = serialize(*a[answer]), sb = serialize(*b[answer]);
      if (sa != sb) return sa < sb;
      return row_text(a) < row_text(b);
    });
  }
  std::vector<Value> projected;
  std::set<std::string> seen;
  for (const auto& r : rows)
    if (seen.insert(serialize(*r[answer])).second) projected.push_back(*r[answer]);
  if (f.order) {
    const auto offset = static_cast<std::size_t>(std::max(0, f.order->offset));
    const auto limit = static_cast<std::size_t>(std::max(0, f.order->limit));
    if (offset >= projected.size()) {
      projected.clear();
    } else {
      projected.erase(projected.begin(), projected.begin() + static_cast<long>(offset));
      if (projected.size() > limit) projected.resize(limit);
    }
  }
  std::sort(projected.begin(), projected.end(),
            [](const Value& a, const Value& b) { return serialize(a) < serialize(b); });
  AnswerSet out;
  if (f.count) {
    out.is_count = true;
    out.count = static_cast<long long>(projected.size());
  } else {
    out.values = std::move(projected);
  }
  return out;
}

// Reference-side filter check written separately from eval_filter.
bool reference_filter(const Filter& flt, const std::map<std::string, int>& index,
                      const Binding& b) {
  auto get = [&](const std::string& name) { return *b[index.at(name)]; };
  if (const auto* y = std::get_if<YearEquals>(&flt)) {
    auto year = [](const Value& v) {
      const auto* lit = std::get_if<Literal>(&v);
      return lit != nullptr && lit->kind() == LiteralKind::kDate ? lit->year() : -100000;
    };
    const int a = year(get(y->var));
    const int other = std::holds_alternative<int>(y->other)
                          ? std::get<int>(y->other)
                          : year(get(std::get<Var>(y->other).name));
    return a != -100000 && other != -100000 && a == other;
  }
  const auto& c = std::get<Compare>(flt);
  const Value left = get(c.var);
  const Value right = std::holds_alternative<Var>(c.operand)
                          ? get(std::get<Var>(c.operand).name)
                          : Value{std::get<Literal>(c.operand)};
  if (std::holds_alternative<Entity>(left) || std::holds_alternative<Entity>(right))
    return c.op == CompareOp::kEqual && left == right &&
           std::holds_alternative<Entity>(left);
  const auto& a = std::get<Literal>(left);
  const auto& r = std::get<Literal>(right);
  const bool both_numeric = a.is_numeric() && r.is_numeric();
  if (!both_numeric && a.kind() != r.kind()) return false;
  int sign = 0;
  if (both_numeric) {
    sign = a.number() < r.number() ? -1 : (r.number() < a.number() ? 1 : 0);
  } else if (a.kind() == LiteralKind::kDate) {
    sign = a.day() < r.day() ? -1 : (r.day() < a.day() ? 1 : 0);
  } else {
    sign = a.lexical() < r.lexical() ? -1 : (r.lexical() < a.lexical() ? 1 : 0);
  }
  switch (c.op) {
    case CompareOp::kLess:
      return sign < 0;
    case CompareOp::kGreater:
      return sign > 0;
    case CompareOp::kEqual:
      return sign == 0;
  }
  return false;
}

// Reference-side modifiers: selection sort by the ORDER BY key, then a
// first-occurrence distinct pass and the slice.
AnswerSet reference_finish(const LogicalForm& f, const std::map<std::string, int>& index,
                           std::vector<Binding> rows) {
  const int answer = index.at(f.answer_var);
  std::vector<Binding> ordered;
  if (f.order) {
    const int key = index.at(f.order->var);
    auto rank = [](const Value& v) {
      if (std::holds_alternative<Entity>(v)) return 3;
      const auto& lit = std::get<Literal>(v);
      return lit.is_numeric() ? 0 : (lit.kind() == LiteralKind::kDate ? 1 : 2);
    };
    auto key_before = [&](const Value& a, const Value& b) {
      if (rank(a) != rank(b)) return rank(a) < rank(b);
      if (rank(a) == 3) return std::get<Entity>(a).id < std::get<Entity>(b).id;
      const auto& la = std::get<Literal>(a);
      const auto& lb = std::get<Literal>(b);
      if (rank(a) == 0) return la.number() < lb.number();
      if (rank(a) == 1) return la.day() < lb.day();
      return la.lexical() < lb.lexical();
    };
    auto text = [](const Binding& r) {
      std::string out;
      for (const auto& v : r) out += serialize(*v) + "\n";
      return out;
    };
    auto before = [&](const Binding& a, const Binding& b) {
      const Value& ka = *a[key];
      const Value& kb = *b[key];
      const bool lt = f.order->descending ? key_before(kb, ka) : key_before(ka, kb);
      const bool gt = f.order->descending ? key_before(ka, kb) : key_before(kb, ka);
      if (lt || gt) return lt;
      if (serialize(*a[answer]) != serialize(*b[answer]))
        return serialize(*a[answer]) < serialize(*b[answer]);
      return text(a) < text(b);
    };
    while (!rows.empty()) {
      std::size_t best = 0;
      for (std::size_t i = 1; i < rows.size(); ++i)
        if (before(rows[i], rows[best])) best = i;
      ordered.push_back(rows[best]);
      rows.erase(rows.begin() + static_cast<long>(best));
    }
  } else {
    ordered = std::move(rows);
  }
  std::vector<std::string> keys;
  std::map<std::string, Value> by_key;
  for (const auto& r : ordered) {
    const std::string k = serialize(*r[answer]);
    if (by_key.emplace(k, *r[answer]).second) keys.push_back(k);
  }
  if (f.order) {
    std::vector<std::string> sliced;
    for (std::size_t i = 0; i < keys.size(); ++i)
      if (static_cast<int>(i) >= f.order->offset &&
          static_cast<int>(sliced.size()) < f.order->limit)
        sliced.push_back(keys[i]);
    keys = std::move(sliced);
  }
  std::sort(keys.begin(), keys.end());
  AnswerSet out;
  out.is_count = f.count;
  if (f.count) {
    out.count = static_cast<long long>(keys.size());
  } else {
    for (const auto& k : keys) out.values.push_back(by_key.at(k));
  }
  return out;
}

class Executor {
 public:
  Executor(const LogicalForm& f, const KnowledgeGraph& g, const ExecutionOptions& options)
      : f_(f), g_(g), options_(options), vars_(compile_vars(f)) {}

  std::vector<Binding> run() {
    Binding b(vars_.names.size());
    std::vector<bool> used(f_.patterns.size(), false);
    search(b, used, 0);
    return std::move(rows_);
  }

  std::set<std::string> warnings;

 private:
  std::optional<Value> resolve(const Term& t, const Binding& b) const {
    if (const auto* v = std::get_if<Var>(&t)) return b[vars_.index.at(v->name)];
    if (const auto* e = std::get_if<Entity>(&t)) return Value{*e};
    return Value{std::get<Literal>(t)};
  }

  const std::vector<std::size_t>& candidates(const TriplePattern& p, const Binding& b) const {
    const auto s = resolve(p.subject, b);
    const auto o = resolve(p.object, b);
    const std::vector<std::size_t>* best = &g_.with_relation(p.relation);
    if (s) {
      static const std::vector<std::size_t> kNone;
      const auto* e = std::get_if<Entity>(&*s);
      const auto* list = e ? &g_.with_subject(e->id) : &kNone;
      if (list->size() < best->size()) best = list;
    }
    if (o) {
      const auto* list = &g_.with_object(*o);
      if (list->size() < best->size()) best = list;
    }
    return *best;
  }

  // Binds `t` to `v`; returns false on conflict. Records newly bound slots.
  bool unify(const Term& t, const Value& v, Binding& b, std::vector<int>& bound) const {
    if (const auto* var = std::get_if<Var>(&t)) {
      const int i = vars_.index.at(var->name);
      if (b[i]) return *b[i] == v;
      b[i] = v;
      bound.push_back(i);
      return true;
    }
    if (const auto* e = std::get_if<Entity>(&t)) return v == Value{*e};
    return v == Value{std::get<Literal>(t)};
  }

  bool filters_ok(const Binding& b) {
    for (const auto& flt : f_.filters) {
      bool ready = true;
      for (const auto& v : filter_variables(flt)) ready = ready && b[vars_.index.at(v)];
      if (!ready) continue;
      const auto r = eval_filter(flt, vars_.index, b);
      if (!r.error.empty()) warnings.insert(r.error);
      if (!r.pass) return false;
    }
    return true;
  }

  void search(Binding& b, std::vector<bool>& used, std::size_t depth) {
    if (depth == f_.patterns.size()) {
      if (rows_.size() >= options_.max_bindings)
        throw std::runtime_error("binding limit exceeded");
      rows_.push_back(b);
      return;
    }
    std::size_t pick = f_.patterns.size();
    std::size_t pick_size = 0;
    for (std::size_t i = 0; i < f_.patterns.size(); ++i) {
      if (used[i]) continue;
      const std::size_t n = candidates(f_.patterns[i], b).size();
      if (pick == f_.patterns.size() || n < pick_size) {
        pick = i;
        pick_size = n;
      }
    }
    const TriplePattern& p = f_.patterns[pick];
    used[pick] = true;
    for (const auto idx : candidates(p, b)) {
      const Triple& t = g_.triples()[idx];
      if (t.relation != p.relation) continue;
      std::vector<int> bound;
      if (unify(p.subject, Entity{t.subject}, b, bound) && unify(p.object, t.object, b, bound) &&
          (bound.empty() || filters_ok(b)))
        search(b, used, depth + 1);
      for (const int i : bound) b[i].reset();
    }
    used[pick] = false;
  }

  const LogicalForm& f_;
  const KnowledgeGraph& g_;
  const ExecutionOptions& options_;
  Compiled vars_;
  std::vector<Binding> rows_;
};

}  // namespace

AnswerSet execute(const LogicalForm& f, const KnowledgeGraph& g,
                  std::vector<std::string>* warnings, const ExecutionOptions& options) {
  require_pattern_vars(f);
  Executor ex(f, g, options);
  auto rows = ex.run();
  if (warnings != nullptr)
    warnings->insert(warnings->end(), ex.warnings.begin(), ex.warnings.end());
  return finish(f, compile_vars(f).index, std::move(rows));
}

AnswerSet brute_force_execute(const LogicalForm& f, const KnowledgeGraph& g,
                              std::size_t node_guard) {
  if (f.patterns.empty()) throw std::invalid_argument("unconstrained form");
  const auto nodes = g.all_nodes();
  if (nodes.size() > node_guard)
    throw std::runtime_error("graph has " + std::to_string(nodes.size()) +
                             " nodes, above the brute-force guard");
  require_pattern_vars(f);

  std::unordered_set<std::string> facts;
  for (const auto& t : g.triples())
    facts.insert(t.subject + "\t" + t.relation + "\t" + serialize(t.object));

  const Compiled vars = compile_vars(f);
  const int n = static_cast<int>(vars.names.size());
  auto term_value = [&](const Term& t, const Binding& b) -> Value {
    if (const auto* v = std::get_if<Var>(&t)) return *b[vars.index.at(v->name)];
    if (const auto* e = std::get_if<Entity>(&t)) return *e;
    return std::get<Literal>(t);
  };
  // Highest variable slot a pattern or filter depends on; -1 for none.
  auto last_slot = [&](const std::set<std::string>& names) {
    int m = -1;
    for (const auto& v : names) m = std::max(m, vars.index.at(v));
    return m;
  };
  std::vector<std::vector<const TriplePattern*>> patterns_at(n + 1);
  for (const auto& p : f.patterns) {
    std::set<std::string> names;
    for (const Term* t : {&p.subject, &p.object})
      if (const auto* v = std::get_if<Var>(t)) names.insert(v->name);
    patterns_at[last_slot(names) + 1].push_back(&p);
  }
  std::vector<std::vector<const Filter*>> filters_at(n + 1);
  for (const auto& flt : f.filters) filters_at[last_slot(filter_variables(flt)) + 1].push_back(&flt);

  auto holds = [&](const TriplePattern& p, const Binding& b) {
    const Value s = term_value(p.subject, b);
    const auto* e = std::get_if<Entity>(&s);
    return e != nullptr &&
           facts.contains(e->id + "\t" + p.relation + "\t" + serialize(term_value(p.object, b)));
  };
  auto level_ok = [&](int level, const Binding& b) {
    for (const auto* p : patterns_at[level])
      if (!holds(*p, b)) return false;
    for (const auto* flt : filters_at[level])
      if (!reference_filter(*flt, vars.index, b)) return false;
    return true;
  };

  std::vector<Binding> rows;
  Binding b(n);
  if (level_ok(0, b)) {
    // Iterative odometer over variable slots.
    std::vector<std::size_t> choice(n, 0);
    int level = 0;
    while (level >= 0) {
      if (level == n) {
        rows.push_back(b);
        --level;
        if (level >= 0) ++choice[level];
        continue;
      }
      if (choice[level] >= nodes.size()) {
        choice[level] = 0;
        b[level].reset();
        --level;
        if (level >= 0) ++choice[level];
        continue;
      }
      b[level] = nodes[choice[level]];
      if (level_ok(level + 1, b)) {
        ++level;
      } else {
        ++choice[level];
      }
    }
  }
  return reference_finish(f, vars.index, std::move(rows));
}

}  // namespace cqa
