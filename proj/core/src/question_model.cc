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

#include "cqa/question_model.h"

#include <algorithm>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cqa/text.h"

namespace cqa {

using nlohmann::json;

DepTree::DepTree(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
  const int n = size();
  if (n == 0) throw std::invalid_argument("empty token sequence");
  for (int i = 1; i <= n; ++i) {
    const Token& t = tokens_[i - 1];
    if (t.index != i)
      throw std::invalid_argument("token " + std::to_string(i) + " has index " +
                                  std::to_string(t.index));
    if (t.head == i) throw std::invalid_argument("self-headed token " + std::to_string(i));
    if (t.head < 0 || t.head > n)
      throw std::invalid_argument("token " + std::to_string(i) + " head out of range");
    if (t.head == 0) {
      if (root_ != 0) throw std::invalid_argument("multiple roots");
      root_ = i;
    }
  }
  if (root_ == 0) throw std::invalid_argument("no root token");

  // Memoized walk; -1 marks "on the current path" to catch cycles.
  depth_.assign(n + 1, -2);
  for (int i = 1; i <= n; ++i) {
    std::vector<int> path;
    int cur = i;
    while (cur != 0 && depth_[cur] == -2) {
      depth_[cur] = -1;
      path.push_back(cur);
      cur = tokens_[cur - 1].head;
    }
    if (cur != 0 && depth_[cur] == -1) throw std::invalid_argument("cycle in head mapping");
    int d = cur == 0 ? -1 : depth_[cur];
    for (auto it = path.rbegin(); it != path.rend(); ++it) depth_[*it] = ++d;
  }
}

void DepTree::check(int i) const {
  if (i < 1 || i > size())
    throw std::out_of_range("token index " + std::to_string(i) + " out of range");
}

const Token& DepTree::token(int i) const {
  check(i);
  return tokens_[i - 1];
}

int DepTree::depth_of(int i) const {
  check(i);
  return depth_[i];
}

std::optional<int> DepTree::head_of(int i) const {
  check(i);
  const int h = tokens_[i - 1].head;
  if (h == 0) return std::nullopt;
  return h;
}

bool DepTree::in_subtree(int node, int root) const {
  check(node);
  check(root);
  for (int cur = node; cur != 0; cur = tokens_[cur - 1].head)
    if (cur == root) return true;
  return false;
}

std::vector<int> DepTree::subtree_of(int i) const {
  check(i);
  std::vector<int> out;
  for (int j = 1; j <= size(); ++j)
    if (in_subtree(j, i)) out.push_back(j);
  return out;
}

int mention_head(const DepTree& tree, const Mention& m) {
  int best = m.start;
  for (int i = m.start + 1; i <= m.end; ++i)
    if (tree.depth_of(i) < tree.depth_of(best)) best = i;
  return best;
}

namespace {

template <typename T>
T field(const json& obj, const char* key, const std::string& id) {
  if (!obj.is_object() || !obj.contains(key))
    throw QuestionError(id, std::string("missing field '") + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw QuestionError(id, std::string("field '") + key + "' has the wrong type");
  }
}

AnnotatedQuestion parse_question(const json& obj, std::size_t position) {
  std::string id = "#" + std::to_string(position);
  if (obj.is_object() && obj.contains("id") && obj["id"].is_string())
    id = obj["id"].get<std::string>();
  AnnotatedQuestion q;
  q.id = field<std::string>(obj, "id", id);
  q.text = field<std::string>(obj, "text", id);
  q.paraphrases = field<std::vector<std::string>>(obj, "paraphrases", id);

  std::vector<Token> tokens;
  for (const auto& t : field<json>(obj, "tokens", id)) {
    tokens.push_back(Token{field<int>(t, "index", id), field<std::string>(t, "surface", id),
                           field<std::string>(t, "lemma", id),
                           field<std::string>(t, "upos", id), field<int>(t, "head", id),
                           field<std::string>(t, "deprel", id)});
  }
  try {
    q.tree = DepTree(std::move(tokens));
  } catch (const std::invalid_argument& e) {
    throw QuestionError(id, e.what());
  }

  for (const auto& m : field<json>(obj, "mentions", id)) {
    Mention mention{field<int>(m, "start", id), field<int>(m, "end", id),
                    field<std::string>(m, "surface", id)};
    if (mention.start < 1 || mention.start > mention.end || mention.end > q.tree.size())
      throw QuestionError(id, "mention '" + mention.surface + "' outside token range");
    for (const auto& other : q.mentions)
      if (mention.start <= other.end && other.start <= mention.end)
        throw QuestionError(id, "overlapping mentions");
    q.mentions.push_back(std::move(mention));
  }

  if (obj.contains("gold") && !obj["gold"].is_null()) {
    const json& g = obj["gold"];
    GoldAnswer gold;
    if (g.contains("sparql") && !g["sparql"].is_null())
      gold.sparql = field<std::string>(g, "sparql", id);
    gold.answers = field<std::vector<std::string>>(g, "answers", id);
    q.gold = std::move(gold);
  }
  return q;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

constexpr std::pair<KeywordClass, const char*> kClassNames[] = {
    {KeywordClass::kQuestion, "question"},
    {KeywordClass::kAggregation, "aggregation"},
    {KeywordClass::kSuperlative, "superlative"},
    {KeywordClass::kComparative, "comparative"},
    {KeywordClass::kOrdinal, "ordinal"},
    {KeywordClass::kTemporal, "temporal"},
};

}  // namespace

std::vector<AnnotatedQuestion> parse_questions(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("question file: ") + e.what());
  }
  if (!doc.is_array()) throw std::runtime_error("question file: top level must be an array");
  std::vector<AnnotatedQuestion> out;
  for (std::size_t i = 0; i < doc.size(); ++i) out.push_back(parse_question(doc[i], i));
  return out;
}

std::vector<AnnotatedQuestion> load_questions(const std::string& path) {
  return parse_questions(read_file(path));
}

std::string_view to_string(KeywordClass c) {
  for (const auto& [cls, name] : kClassNames)
    if (cls == c) return name;
  return "?";
}

KeywordLexicon KeywordLexicon::parse(std::string_view json_text) {
  const json doc = json::parse(json_text);
  if (!doc.is_object()) throw std::runtime_error("lexicon: top level must be an object");
  KeywordLexicon lex;
  for (const auto& [key, entries] : doc.items()) {
    const auto* found = std::find_if(std::begin(kClassNames), std::end(kClassNames),
                                     [&](const auto& p) { return key == p.second; });
    if (found == std::end(kClassNames))
      throw std::runtime_error("lexicon: unknown keyword class '" + key + "'");
    for (const auto& e : entries) {
      KeywordPayload p;
      const json payload = e.value("payload", json::object());
      p.direction = payload.value("direction", "");
      p.relations = payload.value("relations", std::vector<std::string>{});
      p.k = payload.value("k", 0);
      p.kind = payload.value("kind", "");
      p.type = payload.value("type", "");
      lex.add(found->first, e.at("pattern").get<std::string>(), std::move(p));
    }
  }
  return lex;
}

KeywordLexicon KeywordLexicon::load(const std::string& path) { return parse(read_file(path)); }

void KeywordLexicon::add(KeywordClass c, std::string_view pattern, KeywordPayload payload) {
  std::vector<std::string> words;
  std::istringstream ss{text::lower_ascii(pattern)};
  for (std::string w; ss >> w;) words.push_back(w);
  if (words.empty()) throw std::invalid_argument("empty keyword pattern");
  entries_[static_cast<int>(c)].push_back({std::move(words), std::move(payload)});
}

const std::vector<KeywordEntry>& KeywordLexicon::entries(KeywordClass c) const {
  return entries_[static_cast<int>(c)];
}

namespace {

bool matches_at(const DepTree& tree, int start, const std::vector<std::string>& words) {
  if (start + static_cast<int>(words.size()) - 1 > tree.size()) return false;
  for (std::size_t j = 0; j < words.size(); ++j)
    if (text::lower_ascii(tree.token(start + static_cast<int>(j)).surface) != words[j])
      return false;
  return true;
}

}  // namespace

std::vector<KeywordMatch> locate_keywords(const DepTree& tree, const KeywordLexicon& lexicon) {
  static constexpr KeywordClass kSearched[] = {
      KeywordClass::kAggregation, KeywordClass::kSuperlative, KeywordClass::kComparative,
      KeywordClass::kOrdinal, KeywordClass::kTemporal};
  std::vector<KeywordMatch> out;
  int i = 1;
  while (i <= tree.size()) {
    const KeywordEntry* best = nullptr;
    KeywordClass best_cls{};
    for (const auto cls : kSearched) {
      for (const auto& e : lexicon.entries(cls)) {
        if ((best == nullptr || e.words.size() > best->words.size()) &&
            matches_at(tree, i, e.words)) {
          best = &e;
          best_cls = cls;
        }
      }
    }
    if (best == nullptr) {
      ++i;
      continue;
    }
    const int len = static_cast<int>(best->words.size());
    out.push_back({i, i + len - 1, best_cls, best->payload});
    i += len;
  }
  return out;
}

std::optional<QuestionWord> find_question_word(const DepTree& tree,
                                               const KeywordLexicon& lexicon) {
  for (int i = 1; i <= tree.size(); ++i) {
    for (const auto& e : lexicon.entries(KeywordClass::kQuestion)) {
      if (!matches_at(tree, i, e.words)) continue;
      QuestionWord qw{i, std::nullopt, std::nullopt};
      if (!e.payload.type.empty()) {
        qw.intrinsic_type = e.payload.type;
      } else {
        qw.head_hint = tree.head_of(i);
      }
      return qw;
    }
  }
  return std::nullopt;
}

}  // namespace cqa
