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

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "cqa/literal.h"

namespace cqa {

// A query variable; `name` excludes the leading '?'.
struct Var {
  std::string name;
  friend auto operator<=>(const Var&, const Var&) = default;
};

using Term = std::variant<Var, Entity, Literal>;

std::string render(const Term& t);

struct TriplePattern {
  Term subject;
  std::string relation;
  Term object;

  friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
};

enum class CompareOp { kLess, kGreater, kEqual };

std::string_view to_string(CompareOp op);
CompareOp flip(CompareOp op);

struct Compare {
  std::string var;
  CompareOp op = CompareOp::kGreater;
  std::variant<Var, Literal> operand;

  friend bool operator==(const Compare&, const Compare&) = default;
};

// YEAR(?var) = year, or YEAR(?var) = YEAR(?other).
struct YearEquals {
  std::string var;
  std::variant<Var, int> other;

  friend bool operator==(const YearEquals&, const YearEquals&) = default;
};

using Filter = std::variant<Compare, YearEquals>;

struct OrderBy {
  std::string var;
  bool descending = false;
  int offset = 0;
  int limit = 1;

  friend bool operator==(const OrderBy&, const OrderBy&) = default;
};

struct LogicalForm {
  std::vector<TriplePattern> patterns;
  std::vector<Filter> filters;
  std::optional<OrderBy> order;
  bool count = false;
  std::string answer_var = "v0";

  friend bool operator==(const LogicalForm&, const LogicalForm&) = default;
};

// Variables of the patterns, filters and modifiers.
std::set<std::string> variables(const LogicalForm& f);
std::set<std::string> filter_variables(const Filter& f);

// Checks the form invariants: at least one pattern; answer, order and filter
// variables occur in some pattern; every variable is connected to an entity
// term through patterns; and every variable lies within two pattern hops of
// an entity term. Returns the first violation, or nothing if valid.
std::optional<std::string> validate(const LogicalForm& f);

// Removes duplicate patterns and filters, keeping first occurrences.
void dedupe(LogicalForm& f);

}  // namespace cqa
