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

#include "cqa/metrics.h"

#include <stdexcept>

namespace cqa {

std::string_view to_string(FailureCategory c) {
  switch (c) {
    case FailureCategory::kSuccess:
      return "success";
    case FailureCategory::kEntityLinking:
      return "entity-linking";
    case FailureCategory::kGeneration:
      return "generation";
    case FailureCategory::kSelection:
      return "selection";
    case FailureCategory::kEmptyExecution:
      return "empty-execution";
  }
  return "?";
}

Metrics compute_metrics(const std::vector<QuestionOutcome>& outcomes) {
  Metrics m;
  m.questions = outcomes.size();
  for (const auto c : {FailureCategory::kSuccess, FailureCategory::kEntityLinking,
                       FailureCategory::kGeneration, FailureCategory::kSelection,
                       FailureCategory::kEmptyExecution})
    m.failure_counts[std::string(to_string(c))] = 0;
  if (outcomes.empty()) return m;

  std::size_t generated = 0, correct = 0;
  for (const auto& o : outcomes) {
    if (o.correct && !o.generated)
      throw std::invalid_argument("outcome " + o.id + " is correct but not generated");
    m.precision += o.precision;
    m.recall += o.recall;
    m.f1 += o.f1;
    generated += o.generated;
    correct += o.correct;
    ++m.failure_counts[std::string(to_string(o.category))];
  }
  const auto n = static_cast<double>(outcomes.size());
  m.precision /= n;
  m.recall /= n;
  m.f1 /= n;
  m.total_accuracy = static_cast<double>(correct) / n;
  m.generation_accuracy = static_cast<double>(generated) / n;
  m.selection_accuracy =
      generated == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(generated);
  return m;
}

}  // namespace cqa
