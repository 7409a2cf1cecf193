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

#include "cqa/pipeline.h"

#include <algorithm>
#include <memory>
#include <nlohmann/json.hpp>
#include <set>

#include "cqa/entity_linking.h"

namespace cqa {

using nlohmann::json;

std::string_view to_string(SelectionMode m) {
  return m == SelectionMode::kOracle ? "oracle" : "ranker";
}

Pipeline::Pipeline(const KnowledgeGraph& g, KeywordLexicon lexicon, EmbeddingTable embeddings,
                   Config config)
    : g_(g),
      lexicon_(std::move(lexicon)),
      embeddings_(std::move(embeddings)),
      scorer_(embeddings_),
      config_(std::move(config)),
      ranker_(scorer_, config_.ranker) {
  check_config(config_);
}

std::unique_ptr<Pipeline> Pipeline::from_config(const KnowledgeGraph& g, const Config& config) {
  if (config.lexicon_path.empty()) throw std::runtime_error("no keyword lexicon configured");
  if (config.embeddings_path.empty()) throw std::runtime_error("no embeddings configured");
  return std::make_unique<Pipeline>(g, KeywordLexicon::load(config.lexicon_path),
                                    EmbeddingTable::load(config.embeddings_path), config);
}

ConstraintSet Pipeline::detect(const AnnotatedQuestion& q) const {
  return detect_constraints(q, g_, link_all(g_, q, config_.link_floor), lexicon_,
                            config_.detection);
}

GenerationResult Pipeline::generate(const AnnotatedQuestion& q, const ConstraintSet& cs) const {
  return generate_candidates(q, cs, g_, scorer_, config_.generation);
}

AnswerReport Pipeline::answer(const AnnotatedQuestion& q, SelectionMode mode) const {
  AnswerReport r;
  r.id = q.id;
  const ConstraintSet cs = detect(q);
  for (const auto& c : cs.constraints) r.constraints.push_back(describe(c));
  r.warnings = cs.warnings;

  GenerationResult gen = generate(q, cs);
  r.trace = gen.trace;
  r.stats = gen.stats;
  r.warnings.insert(r.warnings.end(), gen.warnings.begin(), gen.warnings.end());
  for (auto& c : gen.candidates) c.score = ranker_.score(q, cs, c);
  r.candidates = std::move(gen.candidates);
  r.candidate_count = r.candidates.size();

  const bool unlinked = std::any_of(cs.links.begin(), cs.links.end(),
                                    [](const auto& kv) { return kv.second.empty(); });
  const bool has_gold = q.gold.has_value();

  std::optional<std::size_t> pick;
  if (mode == SelectionMode::kOracle && has_gold) {
    pick = oracle_select(r.candidates, q.gold->answers);
  } else {
    if (mode == SelectionMode::kOracle) r.warnings.push_back("no gold answers; using the ranker");
    pick = select_best(r.candidates);
  }

  if (!pick) {
    r.detail = gen.failure.value_or("no candidates");
    if (cs.failure) {
      r.category = FailureCategory::kGeneration;
    } else if (unlinked) {
      r.category = FailureCategory::kEntityLinking;
    } else if (gen.stats.empty > 0 && gen.stats.forms == gen.stats.empty + gen.stats.invalid) {
      r.category = FailureCategory::kEmptyExecution;
    } else {
      r.category = FailureCategory::kGeneration;
    }
  } else {
    const Candidate& c = r.candidates[*pick];
    r.chosen = c.serialized;
    r.answers = c.answers.strings();
  }

  if (has_gold) {
    QuestionOutcome o;
    o.id = q.id;
    const Prf prf = answer_prf(r.answers, q.gold->answers);
    o.precision = prf.precision;
    o.recall = prf.recall;
    o.f1 = prf.f1;
    o.generated = std::any_of(r.candidates.begin(), r.candidates.end(), [&](const Candidate& c) {
      return answer_prf(c.answers.strings(), q.gold->answers).f1 == 1.0;
    });
    std::set<std::string> gold(q.gold->answers.begin(), q.gold->answers.end());
    o.correct = pick && std::set<std::string>(r.answers.begin(), r.answers.end()) == gold;
    if (pick) {
      if (o.correct) {
        r.category = FailureCategory::kSuccess;
      } else if (unlinked) {
        r.category = FailureCategory::kEntityLinking;
      } else if (!o.generated) {
        r.category = FailureCategory::kGeneration;
      } else {
        r.category = FailureCategory::kSelection;
      }
    }
    o.category = r.category;
    r.outcome = o;
  }
  return r;
}

EvalReport Pipeline::evaluate(const std::vector<AnnotatedQuestion>& questions,
                              SelectionMode mode) const {
  EvalReport out;
  out.mode = mode;
  std::vector<const AnnotatedQuestion*> ordered;
  for (const auto& q : questions) ordered.push_back(&q);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto* a, const auto* b) { return a->id < b->id; });
  std::vector<QuestionOutcome> outcomes;
  for (const auto* q : ordered) {
    if (!q->gold) {
      out.warnings.push_back("question " + q->id + " has no gold answers; skipped");
      continue;
    }
    auto r = answer(*q, mode);
    outcomes.push_back(*r.outcome);
    out.questions.push_back(std::move(r));
  }
  out.metrics = compute_metrics(outcomes);
  return out;
}

namespace {

json stats_json(const GenerationStats& s) {
  return {{"seeds", s.seeds},         {"skeletons", s.skeletons}, {"attached", s.attached},
          {"forms", s.forms},         {"invalid", s.invalid},     {"empty", s.empty},
          {"tie_dropped", s.tie_dropped}, {"duplicates", s.duplicates},
          {"truncated", s.truncated}};
}

json report_json(const AnswerReport& r, bool explain) {
  json j;
  j["id"] = r.id;
  j["answers"] = r.answers;
  j["chosen"] = r.chosen ? json(*r.chosen) : json(nullptr);
  j["candidate_count"] = r.candidate_count;
  j["category"] = std::string(to_string(r.category));
  if (!r.detail.empty()) j["detail"] = r.detail;
  if (r.outcome) {
    j["precision"] = r.outcome->precision;
    j["recall"] = r.outcome->recall;
    j["f1"] = r.outcome->f1;
    j["generated"] = r.outcome->generated;
    j["correct"] = r.outcome->correct;
  }
  json trace = json::array();
  for (const auto& e : r.trace) trace.push_back({{"step", e.step}, {"text", e.text}});
  j["trace"] = trace;
  j["constraints"] = r.constraints;
  j["stats"] = stats_json(r.stats);
  j["warnings"] = r.warnings;
  if (explain) {
    json cands = json::array();
    for (const auto& c : r.candidates)
      cands.push_back({{"sparql", c.serialized},
                       {"score", c.score},
                       {"topic", c.topic},
                       {"topic_link_score", c.topic_link_score},
                       {"min_relation_match", c.min_relation_match},
                       {"answers", c.answers.strings()}});
    j["candidates"] = cands;
  }
  return j;
}

}  // namespace

std::string to_json(const AnswerReport& report, bool explain) {
  return report_json(report, explain).dump(2) + "\n";
}

std::string to_json(const EvalReport& report) {
  json j;
  j["mode"] = std::string(to_string(report.mode));
  const Metrics& m = report.metrics;
  j["metrics"] = {{"questions", m.questions},
                  {"precision", m.precision},
                  {"recall", m.recall},
                  {"f1", m.f1},
                  {"total_accuracy", m.total_accuracy},
                  {"generation_accuracy", m.generation_accuracy},
                  {"selection_accuracy", m.selection_accuracy},
                  {"failure_counts", m.failure_counts}};
  json qs = json::array();
  for (const auto& q : report.questions) qs.push_back(report_json(q, false));
  j["questions"] = qs;
  j["warnings"] = report.warnings;
  return j.dump(2) + "\n";
}

}  // namespace cqa
