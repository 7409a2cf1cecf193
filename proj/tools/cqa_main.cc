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

// Command-line front end: validate graphs, answer single questions, dump
// candidates and evaluate question sets.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>

#include "cqa/config.h"
#include "cqa/kg_store.h"
#include "cqa/pipeline.h"
#include "cqa/question_model.h"

namespace {

struct Options {
  std::string config_path;
  std::optional<int> sup_threshold;
  std::optional<int> cmp_threshold;
  std::optional<double> match_threshold;
  std::optional<double> link_floor;
  std::string embeddings;
  std::string lexicon;
  bool no_prune = false;

  std::string kg;
  std::vector<std::string> questions;
  std::string id;
  std::string mode = "ranker";
  bool explain = false;
  std::string report;
  std::string kg_file;
};

cqa::Config build_config(const Options& o) {
  cqa::Config c = o.config_path.empty() ? cqa::Config{} : cqa::load_config(o.config_path);
  if (o.sup_threshold) c.detection.sup_threshold = *o.sup_threshold;
  if (o.cmp_threshold) c.detection.cmp_threshold = *o.cmp_threshold;
  if (o.match_threshold) c.generation.tau = *o.match_threshold;
  if (o.link_floor) c.link_floor = *o.link_floor;
  if (!o.embeddings.empty()) c.embeddings_path = o.embeddings;
  if (!o.lexicon.empty()) c.lexicon_path = o.lexicon;
  if (o.no_prune) c.generation.tau = -1.0;
  cqa::check_config(c);
  return c;
}

std::vector<cqa::AnnotatedQuestion> load_all(const std::vector<std::string>& files) {
  std::vector<cqa::AnnotatedQuestion> out;
  for (const auto& f : files) {
    auto qs = cqa::load_questions(f);
    out.insert(out.end(), std::make_move_iterator(qs.begin()), std::make_move_iterator(qs.end()));
  }
  return out;
}

const cqa::AnnotatedQuestion& find_question(const std::vector<cqa::AnnotatedQuestion>& qs,
                                            const std::string& id) {
  for (const auto& q : qs)
    if (q.id == id) return q;
  throw std::runtime_error("no question with id '" + id + "'");
}

cqa::SelectionMode parse_mode(const std::string& m) {
  return m == "oracle" ? cqa::SelectionMode::kOracle : cqa::SelectionMode::kRanker;
}

int run_load_kg(const Options& o) {
  const auto g = cqa::KnowledgeGraph::load(o.kg_file);
  const auto s = g.stats();
  std::cout << "triples " << s.triples << "\n"
            << "data_triples " << s.data_triples << "\n"
            << "entities " << s.entities << "\n"
            << "relations " << s.relations << "\n"
            << "types " << s.types << "\n";
  return 0;
}

int run_answer(const Options& o) {
  const auto g = cqa::KnowledgeGraph::load(o.kg);
  const auto p = cqa::Pipeline::from_config(g, build_config(o));
  const auto qs = load_all(o.questions);
  const auto report = p->answer(find_question(qs, o.id), parse_mode(o.mode));
  std::cout << cqa::to_json(report, o.explain);
  return report.category == cqa::FailureCategory::kSuccess ? 0 : 3;
}

int run_candidates(const Options& o) {
  const auto g = cqa::KnowledgeGraph::load(o.kg);
  const auto p = cqa::Pipeline::from_config(g, build_config(o));
  const auto qs = load_all(o.questions);
  const auto report = p->answer(find_question(qs, o.id), cqa::SelectionMode::kRanker);
  for (const auto& c : report.candidates) std::printf("%.6f\t%s\n", c.score, c.serialized.c_str());
  if (report.candidates.empty()) std::cerr << "no candidates: " << report.detail << "\n";
  return 0;
}

int run_constraints(const Options& o) {
  const auto g = cqa::KnowledgeGraph::load(o.kg);
  const auto p = cqa::Pipeline::from_config(g, build_config(o));
  const auto qs = load_all(o.questions);
  const auto cs = p->detect(find_question(qs, o.id));
  for (const auto& c : cs.constraints) std::cout << cqa::describe(c) << "\n";
  for (const auto& l : cs.depth) std::cout << "E_depth " << l.entity << " " << l.score << "\n";
  for (const auto& l : cs.topic) std::cout << "E_topic " << l.entity << " " << l.score << "\n";
  for (const auto& w : cs.warnings) std::cout << "warning: " << w << "\n";
  if (cs.failure) std::cout << "failure: " << *cs.failure << "\n";
  return 0;
}

int run_eval(const Options& o) {
  const auto g = cqa::KnowledgeGraph::load(o.kg);
  const auto p = cqa::Pipeline::from_config(g, build_config(o));
  const auto report = p->evaluate(load_all(o.questions), parse_mode(o.mode));
  const std::string text = cqa::to_json(report);
  if (o.report.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(o.report);
    if (!out) throw std::runtime_error("cannot write " + o.report);
    out << text;
  }
  const auto& m = report.metrics;
  std::fprintf(stderr,
               "questions=%zu accuracy=%.4f generation=%.4f selection=%.4f "
               "precision=%.4f recall=%.4f f1=%.4f\n",
               m.questions, m.total_accuracy, m.generation_accuracy, m.selection_accuracy,
               m.precision, m.recall, m.f1);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Complex question answering over a knowledge graph"};
  app.require_subcommand(1);
  Options o;

  auto* global = app.add_option_group("global");
  global->add_option("--config", o.config_path, "JSON config file");
  global->add_option("--sup-threshold", o.sup_threshold, "superlative depth threshold");
  global->add_option("--cmp-threshold", o.cmp_threshold, "comparative depth threshold");
  global->add_option("--match-threshold", o.match_threshold, "relation pruning threshold")
      ->check(CLI::Range(-1.0, 1.0));
  global->add_option("--link-floor", o.link_floor, "minimum entity link score")
      ->check(CLI::Range(0.0, 1.0));
  global->add_option("--embeddings", o.embeddings, "word vector file");
  global->add_option("--lexicon", o.lexicon, "keyword lexicon file");
  global->add_flag("--no-prune", o.no_prune, "disable relation pruning");

  auto* load = app.add_subcommand("load-kg", "validate a graph file and print statistics");
  load->add_option("file", o.kg_file)->required();

  auto add_common = [&](CLI::App* sub, bool need_id) {
    sub->add_option("--kg", o.kg, "graph file")->required();
    sub->add_option("--questions", o.questions, "question file(s)")->required();
    if (need_id) sub->add_option("--id", o.id, "question id")->required();
    sub->fallthrough();
  };
  auto* answer = app.add_subcommand("answer", "answer one question");
  add_common(answer, true);
  answer->add_option("--mode", o.mode)->check(CLI::IsMember({"oracle", "ranker"}));
  answer->add_flag("--explain", o.explain, "include all candidates");

  auto* candidates = app.add_subcommand("candidates", "list candidate forms with scores");
  add_common(candidates, true);

  auto* constraints = app.add_subcommand("constraints", "show detected constraints");
  add_common(constraints, true);

  auto* eval = app.add_subcommand("eval", "evaluate a question set");
  add_common(eval, false);
  eval->add_option("--mode", o.mode)->check(CLI::IsMember({"oracle", "ranker"}));
  eval->add_option("--report", o.report, "write the JSON report here");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*load) return run_load_kg(o);
    if (*answer) return run_answer(o);
    if (*candidates) return run_candidates(o);
    if (*constraints) return run_constraints(o);
    if (*eval) return run_eval(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
