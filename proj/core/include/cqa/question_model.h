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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cqa {

struct Token {
  int index = 0;  // 1-based
  std::string surface;
  std::string lemma;
  std::string upos;
  int head = 0;  // 0 = root
  std::string deprel;
};

// A validated dependency tree: one root, no cycles. Token indices are
// 1..size() and token(i) is tokens()[i - 1].
class DepTree {
 public:
  DepTree() = default;
  // Throws std::invalid_argument on any tree invariant violation.
  explicit DepTree(std::vector<Token> tokens);

  int size() const { return static_cast<int>(tokens_.size()); }
  const std::vector<Token>& tokens() const { return tokens_; }
  const Token& token(int i) const;
  int root() const { return root_; }

  // All of these throw std::out_of_range for an index outside 1..size().
  int depth_of(int i) const;
  std::optional<int> head_of(int i) const;
  // i and every token transitively headed by i, ascending.
  std::vector<int> subtree_of(int i) const;
  bool in_subtree(int node, int root) const;

 private:
  void check(int i) const;

  std::vector<Token> tokens_;
  std::vector<int> depth_;
  int root_ = 0;
};

struct Mention {
  int start = 0;  // inclusive token indices
  int end = 0;
  std::string surface;

  friend bool operator==(const Mention&, const Mention&) = default;
};

// The shallowest token of the span (leftmost on ties).
int mention_head(const DepTree& tree, const Mention& m);

struct GoldAnswer {
  std::optional<std::string> sparql;
  std::vector<std::string> answers;
};

struct AnnotatedQuestion {
  std::string id;
  std::string text;
  std::vector<std::string> paraphrases;
  DepTree tree;
  std::vector<Mention> mentions;
  std::optional<GoldAnswer> gold;
};

// Schema or tree violation in a question file; names the offending question.
class QuestionError : public std::runtime_error {
 public:
  QuestionError(const std::string& id, const std::string& what)
      : std::runtime_error("question " + id + ": " + what), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

std::vector<AnnotatedQuestion> load_questions(const std::string& path);
std::vector<AnnotatedQuestion> parse_questions(std::string_view json_text);

enum class KeywordClass {
  kQuestion,
  kAggregation,
  kSuperlative,
  kComparative,
  kOrdinal,
  kTemporal
};

std::string_view to_string(KeywordClass c);

struct KeywordPayload {
  std::string direction;               // asc, desc, greater, less
  std::vector<std::string> relations;  // ordering relation hints
  int k = 0;                           // ordinal value
  std::string kind;                    // count, subordinator
  std::string type;                    // intrinsic answer type of a question word
};

struct KeywordEntry {
  std::vector<std::string> words;  // lower-cased pattern words
  KeywordPayload payload;
};

class KeywordLexicon {
 public:
  static KeywordLexicon load(const std::string& path);
  static KeywordLexicon parse(std::string_view json_text);

  void add(KeywordClass c, std::string_view pattern, KeywordPayload payload);
  const std::vector<KeywordEntry>& entries(KeywordClass c) const;

 private:
  std::vector<KeywordEntry> entries_[6];
};

struct KeywordMatch {
  int start = 0;  // first token of the match
  int end = 0;    // last token, inclusive
  KeywordClass cls = KeywordClass::kAggregation;
  KeywordPayload payload;
};

// Non-question keyword matches, greedy longest-first from left to right over
// lower-cased surfaces. Matches never overlap.
std::vector<KeywordMatch> locate_keywords(const DepTree& tree, const KeywordLexicon& lexicon);

struct QuestionWord {
  int index = 0;
  // Set when the lexicon gives the word an intrinsic type ("who" -> Person).
  std::optional<std::string> intrinsic_type;
  // Otherwise the head token of the question word, if it has one.
  std::optional<int> head_hint;
};

std::optional<QuestionWord> find_question_word(const DepTree& tree,
                                               const KeywordLexicon& lexicon);

}  // namespace cqa
