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

#include "cqa/kg_store.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <tuple>

namespace cqa {

namespace {

const std::vector<std::size_t> kNoTriples;

bool valid_entity_token(std::string_view s) {
  if (s.empty() || s.front() == '"') return false;
  return std::none_of(s.begin(), s.end(), [](unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  });
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

// Throws std::invalid_argument with a message suitable for LoadError.
void check_reserved(const Triple& t) {
  if (t.relation == kTypeRelation && !std::holds_alternative<Entity>(t.object))
    throw std::invalid_argument("type object must be an entity");
  if (t.relation == kLabelRelation) {
    const auto* lit = std::get_if<Literal>(&t.object);
    if (lit == nullptr || lit->kind() != LiteralKind::kText)
      throw std::invalid_argument("label object must be a text literal");
  }
}

}  // namespace

bool is_reserved_relation(std::string_view r) {
  return r == kTypeRelation || r == kLabelRelation;
}

bool triple_less(const Triple& a, const Triple& b) {
  if (a.subject != b.subject) return a.subject < b.subject;
  if (a.relation != b.relation) return a.relation < b.relation;
  return serialize(a.object) < serialize(b.object);
}

std::string serialize(const Triple& t) {
  return t.subject + "\t" + t.relation + "\t" + serialize(t.object);
}

LoadError::LoadError(const std::string& source, std::size_t line,
                     const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
      line_(line) {}

KnowledgeGraph KnowledgeGraph::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError(path, 0, "cannot open file");
  return parse(in, path);
}

KnowledgeGraph KnowledgeGraph::parse(std::istream& in, const std::string& source) {
  std::vector<Triple> triples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 3)
      throw LoadError(source, line_no, "expected 3 tab-separated fields, got " +
                                           std::to_string(fields.size()));
    if (!valid_entity_token(fields[0]))
      throw LoadError(source, line_no, "bad subject '" + std::string(fields[0]) + "'");
    if (!valid_entity_token(fields[1]))
      throw LoadError(source, line_no, "bad relation '" + std::string(fields[1]) + "'");
    Triple t{std::string(fields[0]), std::string(fields[1]), Entity{}};
    try {
      if (!fields[2].empty() && fields[2].front() == '"') {
        t.object = Literal::parse_token(fields[2]);
      } else if (valid_entity_token(fields[2])) {
        t.object = Entity{std::string(fields[2])};
      } else {
        throw std::invalid_argument("bad object '" + std::string(fields[2]) + "'");
      }
      check_reserved(t);
    } catch (const std::invalid_argument& e) {
      throw LoadError(source, line_no, e.what());
    }
    triples.push_back(std::move(t));
  }
  KnowledgeGraph g;
  g.triples_ = std::move(triples);
  g.build();
  return g;
}

KnowledgeGraph KnowledgeGraph::from_triples(std::vector<Triple> triples) {
  for (const auto& t : triples) {
    if (!valid_entity_token(t.subject) || !valid_entity_token(t.relation))
      throw std::invalid_argument("bad triple: " + serialize(t));
    check_reserved(t);
  }
  KnowledgeGraph g;
  g.triples_ = std::move(triples);
  g.build();
  return g;
}

void KnowledgeGraph::build() {
  std::sort(triples_.begin(), triples_.end(), triple_less);
  triples_.erase(std::unique(triples_.begin(), triples_.end()), triples_.end());
  for (std::size_t i = 0; i < triples_.size(); ++i) {
    const Triple& t = triples_[i];
    by_subject_[t.subject].push_back(i);
    by_object_[serialize(t.object)].push_back(i);
    by_relation_[t.relation].push_back(i);
    entities_.insert(t.subject);
    if (const auto* e = std::get_if<Entity>(&t.object)) entities_.insert(e->id);
    if (t.relation == kTypeRelation) {
      types_[t.subject].insert(std::get<Entity>(t.object).id);
    } else if (t.relation == kLabelRelation) {
      labels_[t.subject].insert(std::get<Literal>(t.object).lexical());
    }
  }
}

std::vector<Triple> KnowledgeGraph::outgoing(std::string_view e) const {
  std::vector<Triple> out;
  for (const auto i : with_subject(e))
    if (!is_reserved_relation(triples_[i].relation)) out.push_back(triples_[i]);
  return out;
}

std::vector<Triple> KnowledgeGraph::incoming(std::string_view e) const {
  return incoming(Value{Entity{std::string(e)}});
}

std::vector<Triple> KnowledgeGraph::incoming(const Value& object) const {
  std::vector<Triple> out;
  for (const auto i : with_object(object))
    if (!is_reserved_relation(triples_[i].relation)) out.push_back(triples_[i]);
  std::stable_sort(out.begin(), out.end(), [](const Triple& a, const Triple& b) {
    return std::tie(a.relation, a.subject) < std::tie(b.relation, b.subject);
  });
  return out;
}

std::vector<Path> KnowledgeGraph::expand_paths(std::string_view e, int max_hops) const {
  if (max_hops != 1 && max_hops != 2)
    throw std::invalid_argument("max_hops must be 1 or 2");

  // One-hop steps from a node, outgoing first, each group in index order.
  auto steps_from = [this](const Value& node) {
    std::vector<PathStep> steps;
    if (const auto* ent = std::get_if<Entity>(&node)) {
      for (const auto i : with_subject(ent->id)) {
        const Triple& t = triples_[i];
        if (!is_reserved_relation(t.relation))
          steps.push_back({t.relation, Direction::kOut, t.object, i});
      }
    }
    std::vector<PathStep> in;
    for (const auto i : with_object(node)) {
      const Triple& t = triples_[i];
      if (!is_reserved_relation(t.relation))
        in.push_back({t.relation, Direction::kIn, Entity{t.subject}, i});
    }
    std::stable_sort(in.begin(), in.end(), [](const PathStep& a, const PathStep& b) {
      return a.relation < b.relation;
    });
    steps.insert(steps.end(), in.begin(), in.end());
    return steps;
  };

  std::vector<Path> paths;
  for (auto& first : steps_from(Entity{std::string(e)})) {
    paths.push_back(Path{{first}});
    if (max_hops < 2) continue;
    for (auto& second : steps_from(first.endpoint)) {
      if (second.triple == first.triple) continue;
      paths.push_back(Path{{first, std::move(second)}});
    }
  }
  return paths;
}

std::vector<std::string> KnowledgeGraph::relations_for_type(std::string_view type) const {
  std::set<std::string> rels;
  for (const auto& [entity, types] : types_) {
    if (!types.contains(std::string(type))) continue;
    for (const auto i : with_subject(entity)) rels.insert(triples_[i].relation);
  }
  return {rels.begin(), rels.end()};
}

std::set<std::string> KnowledgeGraph::entity_types(std::string_view e) const {
  const auto it = types_.find(std::string(e));
  return it == types_.end() ? std::set<std::string>{} : it->second;
}

std::set<std::string> KnowledgeGraph::labels(std::string_view e) const {
  const auto it = labels_.find(std::string(e));
  return it == labels_.end() ? std::set<std::string>{} : it->second;
}

const std::vector<std::size_t>& KnowledgeGraph::with_subject(std::string_view s) const {
  const auto it = by_subject_.find(std::string(s));
  return it == by_subject_.end() ? kNoTriples : it->second;
}

const std::vector<std::size_t>& KnowledgeGraph::with_object(const Value& o) const {
  const auto it = by_object_.find(serialize(o));
  return it == by_object_.end() ? kNoTriples : it->second;
}

const std::vector<std::size_t>& KnowledgeGraph::with_relation(std::string_view r) const {
  const auto it = by_relation_.find(std::string(r));
  return it == by_relation_.end() ? kNoTriples : it->second;
}

std::vector<std::string> KnowledgeGraph::all_types() const {
  std::set<std::string> out;
  for (const auto& [entity, types] : types_) out.insert(types.begin(), types.end());
  return {out.begin(), out.end()};
}

std::vector<std::string> KnowledgeGraph::all_relations() const {
  std::vector<std::string> out;
  out.reserve(by_relation_.size());
  for (const auto& [r, idx] : by_relation_) out.push_back(r);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> KnowledgeGraph::all_entities() const {
  return {entities_.begin(), entities_.end()};
}

std::vector<Value> KnowledgeGraph::all_nodes() const {
  std::map<std::string, Value> nodes;
  for (const auto& t : triples_) {
    nodes.emplace(t.subject, Entity{t.subject});
    nodes.emplace(serialize(t.object), t.object);
  }
  std::vector<Value> out;
  out.reserve(nodes.size());
  for (auto& [key, v] : nodes) out.push_back(std::move(v));
  return out;
}

bool KnowledgeGraph::has_entity(std::string_view e) const {
  return entities_.contains(std::string(e));
}

bool KnowledgeGraph::has_relation(std::string_view r) const {
  return by_relation_.contains(std::string(r));
}

KgStats KnowledgeGraph::stats() const {
  KgStats s;
  s.triples = triples_.size();
  s.data_triples = static_cast<std::size_t>(
      std::count_if(triples_.begin(), triples_.end(),
                    [](const Triple& t) { return !is_reserved_relation(t.relation); }));
  s.entities = entities_.size();
  s.relations = by_relation_.size();
  s.types = all_types().size();
  return s;
}

}  // namespace cqa
