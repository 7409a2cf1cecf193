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

#include <chrono>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace cqa {

enum class LiteralKind { kText, kInteger, kDecimal, kDate };

std::string_view to_string(LiteralKind kind);

// Raised when two literals of incomparable kinds are ordered.
class LiteralKindMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A typed literal. Identity is (kind, lexical form): "8848"^^decimal and
// "8848.0"^^decimal are distinct nodes that compare equal by value.
class Literal {
 public:
  static Literal text(std::string value);
  static Literal integer(std::int64_t value);
  // Throws std::invalid_argument if `lexical` does not parse as `kind`.
  static Literal parse(LiteralKind kind, std::string_view lexical);
  // Parses the KG object grammar: "..." or "..."^^int|decimal|date.
  static Literal parse_token(std::string_view token);

  LiteralKind kind() const { return kind_; }
  const std::string& lexical() const { return lexical_; }
  bool is_numeric() const {
    return kind_ == LiteralKind::kInteger || kind_ == LiteralKind::kDecimal;
  }

  double number() const { return number_; }
  std::chrono::sys_days day() const { return day_; }
  int year() const;

  // Inverse of parse_token.
  std::string serialize() const;

  friend bool operator==(const Literal& a, const Literal& b) {
    return a.kind_ == b.kind_ && a.lexical_ == b.lexical_;
  }

 private:
  Literal(LiteralKind kind, std::string lexical)
      : kind_(kind), lexical_(std::move(lexical)) {}

  LiteralKind kind_;
  std::string lexical_;
  double number_ = 0.0;
  std::chrono::sys_days day_{};
};

// Value order: numeric kinds against each other, dates chronologically,
// text lexicographically. Any other pairing throws LiteralKindMismatch.
std::weak_ordering compare_values(const Literal& a, const Literal& b);

struct Entity {
  std::string id;
  friend auto operator<=>(const Entity&, const Entity&) = default;
};

// A node of the graph: an entity or a literal.
using Value = std::variant<Entity, Literal>;

// Entity id, or the literal's serialization.
std::string serialize(const Value& v);

// Entity id, or the literal's lexical form. This is the answer-string form
// used by gold files and metrics.
std::string answer_string(const Value& v);

}  // namespace cqa
