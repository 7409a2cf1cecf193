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

#include <cstddef>
#include <string>
#include <vector>

#include "cqa/kg_store.h"
#include "cqa/logical_form.h"

namespace cqa {

struct AnswerSet {
  bool is_count = false;
  long long count = 0;
  std::vector<Value> values;  // distinct, sorted by serialization

  // A count of zero also counts as empty.
  bool empty() const { return is_count ? count == 0 : values.empty(); }
  // Answer strings (entity id or literal lexical form), sorted; a count
  // yields its decimal value.
  std::vector<std::string> strings() const;

  friend bool operator==(const AnswerSet&, const AnswerSet&) = default;
};

struct ExecutionOptions {
  // Cap on intermediate bindings; exceeding it throws std::runtime_error.
  std::size_t max_bindings = 1'000'000;
};

// Evaluates the form: join over patterns (most selective first), filters,
// ORDER BY, projection with DISTINCT, OFFSET/LIMIT, then COUNT. Bindings on
// which a filter compares incompatible values are dropped and a warning is
// appended. Throws std::invalid_argument for a form without patterns.
AnswerSet execute(const LogicalForm& f, const KnowledgeGraph& g,
                  std::vector<std::string>* warnings = nullptr,
                  const ExecutionOptions& options = {});

inline constexpr std::size_t kDefaultNodeGuard = 2000;

// Reference evaluator: enumerates variable assignments over every graph node
// against a plain set of serialized triples. Refuses graphs with more than
// `node_guard` nodes (std::runtime_error).
AnswerSet brute_force_execute(const LogicalForm& f, const KnowledgeGraph& g,
                              std::size_t node_guard = kDefaultNodeGuard);

}  // namespace cqa
