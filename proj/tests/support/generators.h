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

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cqa/kg_store.h"
#include "cqa/logical_form.h"
#include "cqa/metrics.h"
#include "cqa/question_model.h"

namespace cqa::testing {

// Thin wrapper over a seeded engine so every generator draws from one
// reproducible stream.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))];
  }
  template <typename T>
  void shuffle(std::vector<T>& v) {
    std::shuffle(v.begin(), v.end(), rng_);
  }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// A random well-formed dependency tree over n tokens ("w1".."wn").
std::vector<Token> random_tree_tokens(Gen& gen, int n);

// A small graph over entities e0..e{n-1} and relations r0..r{m-1}, with
// typed literal objects and `type` triples.
KnowledgeGraph random_graph(Gen& gen, int entities, int relations);

// A form accepted by validate(), anchored on walks through g. At most
// `max_vars` variables. Filters, ordering and counting are mixed in.
LogicalForm random_valid_form(Gen& gen, const KnowledgeGraph& g, int max_vars = 3);

// Patterns over random terms; often invalid.
LogicalForm random_raw_form(Gen& gen, const std::vector<std::string>& entities,
                            const std::vector<std::string>& relations, int max_vars);

Literal random_literal(Gen& gen);

std::vector<QuestionOutcome> random_outcomes(Gen& gen, int n);

}  // namespace cqa::testing
