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


// Acceptance checks over the fixture corpus. Prints one PASS/FAIL line per
// criterion and exits non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cqa/constraint_detection.h"
#include "cqa/entity_linking.h"
#include "cqa/lf_execution.h"
#include "cqa/metrics.h"
#include "cqa/pipeline.h"
#include "cqa/semantic_matching.h"
#include "cqa/sparql.h"
#include "fixture.h"
#include "generators.h"
#include "properties.h"

namespace cqa::testing {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail = what;
    pass = false;
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::unique_ptr<Pipeline> make_pipeline(const Config& config) {
  return std::make_unique<Pipeline>(fixture().kg, fixture().lexicon, fixture().embeddings, config);
}

// 1. Oracle end-to-end on the eight-question corpus.
Outcome fixture_oracle() {
  Outcome o;
  const auto t0 = Clock::now();
  const Fixture& fx = fixture();
  const auto p = make_pipeline(fx.config);
  const EvalReport report = p->evaluate(fx.table, SelectionMode::kOracle);
  const double elapsed = seconds_since(t0);
  o.expect(report.metrics.questions == 8, "expected 8 questions");
  o.expect(report.metrics.generation_accuracy == 1.0, "generation accuracy below 1");
  o.expect(report.metrics.total_accuracy == 1.0, "total accuracy below 1");
  for (const auto& q : fx.table) {
    const auto r = p->answer(q, SelectionMode::kOracle);
    const bool has_gold_form = std::any_of(r.candidates.begin(), r.candidates.end(),
                                           [&](const Candidate& c) { return c.serialized == *q.gold->sparql; });
    o.expect(has_gold_form, q.id + ": gold form not among candidates");
  }
  o.expect(elapsed < 5.0, "took " + std::to_string(elapsed) + " s");
  std::ostringstream d;
  d << "generation=" << report.metrics.generation_accuracy
    << " total=" << report.metrics.total_accuracy << " in " << elapsed << " s";
  if (o.pass) o.detail = d.str();
  return o;
}

// 2. Executor against the brute-force reference.
Outcome executor_equivalence() {
  Outcome o;
  const auto t0 = Clock::now();
  const Fixture& fx = fixture();
  int gold = 0;
  for (const auto& q : fx.all()) {
    if (!q.gold || !q.gold->sparql) continue;
    const LogicalForm f = parse_sparql(*q.gold->sparql);
    o.expect(execute(f, fx.kg) == brute_force_execute(f, fx.kg), q.id + ": gold form differs");
    ++gold;
  }
  Gen gen(7);
  for (int i = 0; i < 200; ++i) {
    const LogicalForm f = random_valid_form(gen, fx.kg, 3);
    o.expect(execute(f, fx.kg) == brute_force_execute(f, fx.kg),
             "random form differs: " + render_sparql(f));
  }
  const double elapsed = seconds_since(t0);
  o.expect(elapsed < 30.0, "took " + std::to_string(elapsed) + " s");
  if (o.pass)
    o.detail = std::to_string(gold) + " gold + 200 random forms agree in " +
               std::to_string(elapsed) + " s";
  return o;
}

// 3. Depth-rule discrimination on the two movie questions.
void expect_links(Outcome& o, const std::string& id, const std::string& what,
                  const std::vector<EntityLink>& got, const std::vector<std::string>& want) {
  std::vector<std::string> ids;
  for (const auto& l : got) ids.push_back(l.entity);
  o.expect(ids == want, id + ": " + what + " mismatch");
}

void expect_constraints(Outcome& o, const std::string& id, const ConstraintSet& cs,
                        const std::vector<Constraint>& want) {
  o.expect(cs.constraints.size() == want.size(), id + ": constraint count " +
                                                     std::to_string(cs.constraints.size()));
  for (std::size_t i = 0; i < std::min(want.size(), cs.constraints.size()); ++i)
    o.expect(cs.constraints[i] == want[i],
             id + ": got " + describe(cs.constraints[i]) + ", want " + describe(want[i]));
}

Outcome depth_rule() {
  Outcome o;
  const Fixture& fx = fixture();
  const auto p = make_pipeline(fx.config);
  o.expect(fx.config.detection.sup_threshold == 2 && fx.config.detection.cmp_threshold == 3,
           "fixture thresholds are not the defaults");
  const std::vector<std::string> date_hints = {"release_date", "birth_date", "publication_date"};
  const std::vector<std::string> length_hints = {"duration", "length"};

  // Superlative inside the complement: applied first.
  {
    const auto& q = fx.question("nolan_depth_superlative");
    const ConstraintSet cs = p->detect(q);
    Superlative s;
    s.keyword_index = 7;
    s.depth = 3;
    s.head_index = 8;
    s.direction = "asc";
    s.ordering_hints = date_hints;
    s.ordinal_k = 1;
    s.position = Position::kDepth;
    s.attached_entity = "ChristopherNolan";
    s.attached_mention = 0;
    s.result_type = "Movie";
    Comparative c;
    c.keyword_index = 4;
    c.depth = 1;
    c.direction = "greater";
    c.ordering_hints = length_hints;
    c.position = Position::kTerminal;
    expect_constraints(o, q.id, cs, {TypeConstraint{"Movie"}, s, c});
    expect_links(o, q.id, "E_depth", cs.depth, {"ChristopherNolan"});
    expect_links(o, q.id, "E_topic", cs.topic, {});
    o.expect(!cs.failure, q.id + ": unexpected failure");
  }
  // Comparative in the relative clause: applied first, superlative last.
  {
    const auto& q = fx.question("tenet_depth_comparative");
    const ConstraintSet cs = p->detect(q);
    Superlative s;
    s.keyword_index = 4;
    s.depth = 2;
    s.head_index = 5;
    s.direction = "asc";
    s.ordering_hints = date_hints;
    s.ordinal_k = 1;
    s.position = Position::kTerminal;
    s.result_type = "Movie";
    Comparative c;
    c.keyword_index = 10;
    c.depth = 4;
    c.direction = "greater";
    c.ordering_hints = length_hints;
    c.position = Position::kDepth;
    c.pivot_entity = "Tenet";
    c.pivot_mention = 0;
    c.result_type = "Movie";
    expect_constraints(o, q.id, cs, {s, c});
    expect_links(o, q.id, "E_depth", cs.depth, {"Tenet"});
    expect_links(o, q.id, "E_topic", cs.topic, {});
    o.expect(!cs.failure, q.id + ": unexpected failure");
  }
  if (o.pass) o.detail = "nolan: superlative=depth comparative=terminal; tenet: the reverse";
  return o;
}

// 4. Pruning monotonicity and candidate-set growth as tau drops.
Outcome pruning_monotonicity() {
  Outcome o;
  const Fixture& fx = fixture();
  const EmbeddingScorer scorer(fx.embeddings);
  const auto questions = fx.all();
  std::vector<std::string> relations;
  for (const auto& r : fx.kg.all_relations())
    if (!is_reserved_relation(r)) relations.push_back(r);
  const std::vector<double> taus = {-1, 0, 0.3, 0.7, 1};
  Gen gen(11);
  for (int i = 0; i < 50; ++i) {
    const auto& q = gen.pick(questions);
    std::vector<std::string> rels;
    for (const auto& r : relations)
      if (gen.chance(0.5)) rels.push_back(r);
    std::vector<std::string> prev = rels;
    for (const double tau : taus) {
      const auto kept = prune_relations(scorer, q, rels, tau);
      const std::set<std::string> a(prev.begin(), prev.end());
      o.expect(std::all_of(kept.begin(), kept.end(), [&](const auto& r) { return a.contains(r); }),
               q.id + ": prune set at tau=" + std::to_string(tau) + " not nested");
      prev = kept;
    }
  }
  Config loose = fx.config, tight = fx.config;
  loose.generation.tau = -1;
  tight.generation.tau = 0.3;
  const auto pl = make_pipeline(loose), pt = make_pipeline(tight);
  std::size_t grew = 0;
  for (const auto& q : questions) {
    std::set<std::string> wide;
    for (const auto& c : pl->generate(q, pl->detect(q)).candidates) wide.insert(c.serialized);
    const auto narrow = pt->generate(q, pt->detect(q)).candidates;
    for (const auto& c : narrow)
      o.expect(wide.contains(c.serialized), q.id + ": " + c.serialized + " lost at tau=-1");
    grew += wide.size() - narrow.size();
  }
  if (o.pass)
    o.detail = "50 pairs nested; tau=-1 covers tau=0.3 on " + std::to_string(questions.size()) +
               " questions (+" + std::to_string(grew) + " forms)";
  return o;
}

// 5. total = generation x selection.
Outcome metric_identity() {
  Outcome o;
  Gen gen(5);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const Metrics m = compute_metrics(random_outcomes(gen, gen.uniform(1, 200)));
    worst = std::max(worst, std::abs(m.total_accuracy - m.generation_accuracy * m.selection_accuracy));
  }
  // The reported decomposition: 7072 generated, 6275 of them selected.
  std::vector<QuestionOutcome> trace(10000);
  for (int i = 0; i < 10000; ++i) {
    trace[i].id = std::to_string(i);
    trace[i].generated = i < 7072;
    trace[i].correct = i < 6275;
    trace[i].category = trace[i].correct ? FailureCategory::kSuccess : FailureCategory::kSelection;
  }
  const Metrics m = compute_metrics(trace);
  worst = std::max(worst, std::abs(m.total_accuracy - m.generation_accuracy * m.selection_accuracy));
  o.expect(std::abs(m.generation_accuracy - 0.7072) < 1e-12, "generation accuracy");
  o.expect(std::abs(m.selection_accuracy - 0.8873) < 5e-5, "selection accuracy");
  o.expect(std::abs(m.total_accuracy - 0.6275) < 1e-12, "total accuracy");
  o.expect(worst <= 1e-12, "max deviation " + std::to_string(worst));
  if (o.pass) {
    std::ostringstream d;
    d << "1001 traces, max |total - gen*sel| = " << worst;
    o.detail = d.str();
  }
  return o;
}

// 6. Superlative and comparative answers through the full pipeline.
Outcome numerics() {
  Outcome o;
  const Fixture& fx = fixture();
  const auto p = make_pipeline(fx.config);
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases = {
      {"superlative", {"K2"}}, {"comparative", {"Everest", "K2", "Kangchenjunga"}}};
  for (const auto& [id, want] : cases) {
    for (const auto mode : {SelectionMode::kRanker, SelectionMode::kOracle}) {
      const auto r = p->answer(fx.question(id), mode);
      o.expect(r.answers == want, id + " (" + std::string(to_string(mode)) + "): wrong answers");
      if (!r.chosen) {
        o.expect(false, id + ": nothing selected");
        continue;
      }
      const LogicalForm f = parse_sparql(*r.chosen);
      const AnswerSet ref = brute_force_execute(f, fx.kg);
      o.expect(execute(f, fx.kg) == ref, id + ": executor differs from brute force");
      o.expect(ref.strings() == want, id + ": brute force disagrees");
    }
  }
  if (o.pass) o.detail = "second tallest -> K2; higher than Lhotse -> Everest, K2, Kangchenjunga";
  return o;
}

// 7. Two CLI eval runs give byte-identical reports.
std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism() {
  Outcome o;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("cqa_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::vector<std::string> reports;
  for (int run = 0; run < 2; ++run) {
    const fs::path out = dir / ("report" + std::to_string(run) + ".json");
    const std::string cmd = std::string("\"") + CQA_CLI_PATH + "\" --config \"" +
                            fixture_path("config.json") + "\" eval --kg \"" +
                            fixture_path("kg.tsv") + "\" --questions \"" +
                            fixture_path("questions.json") + "\" \"" +
                            fixture_path("extra_questions.json") +
                            "\" --mode ranker --report \"" + out.string() + "\" 2>/dev/null";
    o.expect(std::system(cmd.c_str()) == 0, "cqa eval exited non-zero");
    reports.push_back(slurp(out));
  }
  fs::remove_all(dir);
  o.expect(!reports[0].empty(), "empty report");
  o.expect(reports[0] == reports[1], "reports differ");
  if (o.pass) o.detail = std::to_string(reports[0].size()) + " identical bytes";
  return o;
}

// 8. The invariant suite.
Outcome invariants() {
  Outcome o;
  const auto t0 = Clock::now();
  constexpr int kCases = 1000;
  for (const auto& p : all_properties()) {
    const PropertyResult r = run_property(p, kCases);
    o.expect(r.failures == 0, r.name + ": " + r.first_failure);
  }
  const double elapsed = seconds_since(t0);
  o.expect(elapsed < 120.0, "took " + std::to_string(elapsed) + " s");
  if (o.pass)
    o.detail = std::to_string(all_properties().size()) + " properties x " +
               std::to_string(kCases) + " cases in " + std::to_string(elapsed) + " s";
  return o;
}

}  // namespace
}  // namespace cqa::testing

int main() {
  using namespace cqa::testing;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"fixture end-to-end, oracle mode", fixture_oracle},
      {"executor equals brute force", executor_equivalence},
      {"depth-rule discrimination", depth_rule},
      {"pruning monotonicity", pruning_monotonicity},
      {"metric identity", metric_identity},
      {"superlative/comparative numerics", numerics},
      {"determinism of cqa eval", determinism},
      {"invariant suite", invariants},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw: ") + e.what();
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first
              << ": " << o.detail << "\n";
  }
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
