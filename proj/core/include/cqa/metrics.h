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

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace cqa {

enum class FailureCategory { kSuccess, kEntityLinking, kGeneration, kSelection, kEmptyExecution };

std::string_view to_string(FailureCategory c);

// Per-question evaluation record.
struct QuestionOutcome {
  std::string id;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool generated = false;  // some candidate has F1 = 1
  bool correct = false;    // the selected candidate's answers equal gold
  FailureCategory category = FailureCategory::kSuccess;
};

struct Metrics {
  std::size_t questions = 0;
  double precision = 0.0;  // macro averages
  double recall = 0.0;
  double f1 = 0.0;
  double total_accuracy = 0.0;
  double generation_accuracy = 0.0;
  double selection_accuracy = 0.0;  // among generated; 0 when none were
  std::map<std::string, std::size_t> failure_counts;
};

// Aggregates outcomes. Throws std::invalid_argument for an inconsistent
// record (correct but not generated), since a selected exact form is itself
// a generated one.
Metrics compute_metrics(const std::vector<QuestionOutcome>& outcomes);

}  // namespace cqa
