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

#include "cqa/config.h"

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace cqa {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string resolve(const std::string& base_dir, const std::string& p) {
  if (p.empty() || fs::path(p).is_absolute()) return p;
  return (fs::path(base_dir) / p).lexically_normal().string();
}

}  // namespace

Config parse_config(std::string_view json_text, const std::string& base_dir) {
  Config c;
  try {
    const json doc = json::parse(json_text);
    if (!doc.is_object()) throw std::runtime_error("config: top level must be an object");
    if (doc.contains("lexicon")) c.lexicon_path = resolve(base_dir, doc["lexicon"]);
    if (doc.contains("embeddings")) c.embeddings_path = resolve(base_dir, doc["embeddings"]);
    c.detection.sup_threshold = doc.value("sup_threshold", c.detection.sup_threshold);
    c.detection.cmp_threshold = doc.value("cmp_threshold", c.detection.cmp_threshold);
    if (doc.contains("year_range")) {
      const auto r = doc["year_range"].get<std::vector<int>>();
      if (r.size() != 2) throw std::runtime_error("config: year_range needs two values");
      c.detection.year_min = r[0];
      c.detection.year_max = r[1];
    }
    c.generation.tau = doc.value("match_threshold", c.generation.tau);
    c.link_floor = doc.value("link_floor", c.link_floor);
    c.generation.candidate_cap = doc.value("candidate_cap", c.generation.candidate_cap);
    if (doc.contains("temporal_relations"))
      c.generation.temporal_relations = doc["temporal_relations"].get<std::vector<std::string>>();
    c.generation.ordering_fallback_k =
        doc.value("ordering_fallback_k", c.generation.ordering_fallback_k);
    if (doc.contains("ranker")) {
      const json& r = doc["ranker"];
      c.ranker.relation = r.value("relation_weight", c.ranker.relation);
      c.ranker.structure = r.value("structure_weight", c.ranker.structure);
      c.ranker.link = r.value("link_weight", c.ranker.link);
      c.ranker.penalty_scale = r.value("penalty_scale", c.ranker.penalty_scale);
    }
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("config: ") + e.what());
  }
  try {
    check_config(c);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("config: ") + e.what());
  }
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), fs::path(path).parent_path().string());
}

void check_config(const Config& c) {
  if (c.detection.sup_threshold < 0) throw std::invalid_argument("sup_threshold must be >= 0");
  if (c.detection.cmp_threshold < 0) throw std::invalid_argument("cmp_threshold must be >= 0");
  if (c.detection.year_min > c.detection.year_max)
    throw std::invalid_argument("year_range is empty");
  if (!(c.generation.tau >= -1.0 && c.generation.tau <= 1.0))
    throw std::invalid_argument("match_threshold must lie in [-1, 1]");
  if (!(c.link_floor >= 0.0 && c.link_floor <= 1.0))
    throw std::invalid_argument("link_floor must lie in [0, 1]");
  if (c.generation.candidate_cap == 0) throw std::invalid_argument("candidate_cap must be > 0");
  if (c.generation.ordering_fallback_k < 0)
    throw std::invalid_argument("ordering_fallback_k must be >= 0");
  if (c.ranker.penalty_scale <= 0) throw std::invalid_argument("penalty_scale must be > 0");
}

}  // namespace cqa
