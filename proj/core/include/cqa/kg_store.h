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
#include <istream>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cqa/literal.h"

namespace cqa {

inline constexpr std::string_view kTypeRelation = "type";
inline constexpr std::string_view kLabelRelation = "label";

struct Triple {
  std::string subject;
  std::string relation;
  Value object;

  friend bool operator==(const Triple&, const Triple&) = default;
};

// Orders by (subject, relation, object serialization).
bool triple_less(const Triple& a, const Triple& b);

// `subject<TAB>relation<TAB>object`, the KG file line form.
std::string serialize(const Triple& t);

class LoadError : public std::runtime_error {
 public:
  LoadError(const std::string& source, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class Direction { kOut, kIn };

struct PathStep {
  std::string relation;
  Direction direction;
  Value endpoint;
  std::size_t triple;  // index into KnowledgeGraph::triples()
};

struct Path {
  std::vector<PathStep> steps;
};

struct KgStats {
  std::size_t triples = 0;
  std::size_t data_triples = 0;
  std::size_t entities = 0;
  std::size_t relations = 0;
  std::size_t types = 0;
};

// Immutable triple store. Reserved `type` and `label` lines are kept in the
// triple set (so the input round-trips) and additionally populate the type
// and label maps; they never appear in outgoing/incoming/expand_paths.
class KnowledgeGraph {
 public:
  KnowledgeGraph() = default;

  static KnowledgeGraph load(const std::string& path);
  static KnowledgeGraph parse(std::istream& in, const std::string& source = "<input>");
  static KnowledgeGraph from_triples(std::vector<Triple> triples);

  // All triples, deduplicated, sorted by triple_less.
  const std::vector<Triple>& triples() const { return triples_; }

  // Data triples with subject / object e, sorted by (relation, other end).
  std::vector<Triple> outgoing(std::string_view e) const;
  std::vector<Triple> incoming(std::string_view e) const;
  std::vector<Triple> incoming(const Value& object) const;

  // Throws std::invalid_argument unless max_hops is 1 or 2. A two-step path
  // never traverses the same triple twice.
  std::vector<Path> expand_paths(std::string_view e, int max_hops) const;

  std::vector<std::string> relations_for_type(std::string_view type) const;
  std::set<std::string> entity_types(std::string_view e) const;
  std::set<std::string> labels(std::string_view e) const;

  // Index access for the executor; includes reserved relations. Each returns
  // indices into triples().
  const std::vector<std::size_t>& with_subject(std::string_view s) const;
  const std::vector<std::size_t>& with_object(const Value& o) const;
  const std::vector<std::size_t>& with_relation(std::string_view r) const;

  const std::map<std::string, std::set<std::string>>& label_map() const { return labels_; }
  const std::map<std::string, std::set<std::string>>& type_map() const { return types_; }

  // Every type id used as the object of a `type` triple.
  std::vector<std::string> all_types() const;
  std::vector<std::string> all_relations() const;
  // Every entity mentioned anywhere in the graph.
  std::vector<std::string> all_entities() const;
  // Distinct subjects and objects of all triples.
  std::vector<Value> all_nodes() const;

  bool has_entity(std::string_view e) const;
  bool has_relation(std::string_view r) const;

  KgStats stats() const;

 private:
  void build();

  std::vector<Triple> triples_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_subject_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_object_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_relation_;
  std::map<std::string, std::set<std::string>> types_;
  std::map<std::string, std::set<std::string>> labels_;
  std::set<std::string> entities_;
};

bool is_reserved_relation(std::string_view r);

}  // namespace cqa
