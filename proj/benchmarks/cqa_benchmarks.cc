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


#include <benchmark/benchmark.h>

#include <string>

#include "cqa/config.h"
#include "cqa/kg_store.h"
#include "cqa/lf_execution.h"
#include "cqa/pipeline.h"
#include "cqa/question_model.h"
#include "cqa/sparql.h"

namespace {

std::string path(const std::string& name) { return std::string(CQA_FIXTURE_DIR) + "/" + name; }

const cqa::KnowledgeGraph& graph() {
  static const auto g = cqa::KnowledgeGraph::load(path("kg.tsv"));
  return g;
}

const std::vector<cqa::AnnotatedQuestion>& questions() {
  static const auto qs = cqa::load_questions(path("questions.json"));
  return qs;
}

void BM_LoadGraph(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cqa::KnowledgeGraph::load(path("kg.tsv")));
}
BENCHMARK(BM_LoadGraph);

void BM_ExecuteGoldForms(benchmark::State& state) {
  std::vector<cqa::LogicalForm> forms;
  for (const auto& q : questions()) forms.push_back(cqa::parse_sparql(*q.gold->sparql));
  for (auto _ : state)
    for (const auto& f : forms) benchmark::DoNotOptimize(cqa::execute(f, graph()));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(forms.size()));
}
BENCHMARK(BM_ExecuteGoldForms);

void BM_SerializeGoldForms(benchmark::State& state) {
  std::vector<cqa::LogicalForm> forms;
  for (const auto& q : questions()) forms.push_back(cqa::parse_sparql(*q.gold->sparql));
  for (auto _ : state)
    for (const auto& f : forms) benchmark::DoNotOptimize(cqa::serialize_sparql(f));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(forms.size()));
}
BENCHMARK(BM_SerializeGoldForms);

void BM_AnswerTable(benchmark::State& state) {
  const auto p = cqa::Pipeline::from_config(graph(), cqa::load_config(path("config.json")));
  for (auto _ : state)
    for (const auto& q : questions())
      benchmark::DoNotOptimize(p->answer(q, cqa::SelectionMode::kRanker));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(questions().size()));
}
BENCHMARK(BM_AnswerTable);

}  // namespace

BENCHMARK_MAIN();
