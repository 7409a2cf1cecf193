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

#include "cqa/literal.h"

#include <charconv>
#include <cmath>
#include <system_error>

namespace cqa {

std::string_view to_string(LiteralKind kind) {
  switch (kind) {
    case LiteralKind::kText:
      return "text";
    case LiteralKind::kInteger:
      return "int";
    case LiteralKind::kDecimal:
      return "decimal";
    case LiteralKind::kDate:
      return "date";
  }
  return "?";
}

namespace {

std::string escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (const char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\n':
        out += "\\n";
        break;
      default:
        out.push_back(c);
    }
  }
  return out;
}

std::string unescape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\') {
      out.push_back(s[i]);
      continue;
    }
    if (++i == s.size()) throw std::invalid_argument("dangling escape in literal");
    switch (s[i]) {
      case 't':
        out.push_back('\t');
        break;
      case 'n':
        out.push_back('\n');
        break;
      case '"':
      case '\\':
        out.push_back(s[i]);
        break;
      default:
        throw std::invalid_argument("unknown escape in literal");
    }
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  if (s.empty() || s.front() == '+') return false;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

Literal Literal::text(std::string value) {
  return Literal(LiteralKind::kText, std::move(value));
}

Literal Literal::integer(std::int64_t value) {
  Literal lit(LiteralKind::kInteger, std::to_string(value));
  lit.number_ = static_cast<double>(value);
  return lit;
}

Literal Literal::parse(LiteralKind kind, std::string_view lexical) {
  Literal lit(kind, std::string(lexical));
  switch (kind) {
    case LiteralKind::kText:
      break;
    case LiteralKind::kInteger: {
      std::int64_t v = 0;
      if (!parse_number(lexical, v))
        throw std::invalid_argument("bad int literal: " + std::string(lexical));
      lit.number_ = static_cast<double>(v);
      break;
    }
    case LiteralKind::kDecimal: {
      double v = 0;
      if (!parse_number(lexical, v) || !std::isfinite(v))
        throw std::invalid_argument("bad decimal literal: " + std::string(lexical));
      lit.number_ = v;
      break;
    }
    case LiteralKind::kDate: {
      int y = 0;
      unsigned m = 0, d = 0;
      const bool shape = lexical.size() == 10 && lexical[4] == '-' &&
                         lexical[7] == '-' &&
                         parse_number(lexical.substr(0, 4), y) &&
                         parse_number(lexical.substr(5, 2), m) &&
                         parse_number(lexical.substr(8, 2), d);
      const std::chrono::year_month_day ymd{std::chrono::year{y},
                                            std::chrono::month{m},
                                            std::chrono::day{d}};
      if (!shape || !ymd.ok())
        throw std::invalid_argument("bad date literal: " + std::string(lexical));
      lit.day_ = std::chrono::sys_days{ymd};
      break;
    }
  }
  return lit;
}

Literal Literal::parse_token(std::string_view token) {
  if (token.size() < 2 || token.front() != '"')
    throw std::invalid_argument("literal must start with '\"'");
  // The closing quote is the last unescaped '"'.
  std::size_t close = std::string_view::npos;
  for (std::size_t i = 1; i < token.size(); ++i) {
    if (token[i] == '\\') {
      ++i;
    } else if (token[i] == '"') {
      close = i;
      break;
    }
  }
  if (close == std::string_view::npos)
    throw std::invalid_argument("unterminated literal");
  const std::string body = unescape(token.substr(1, close - 1));
  const std::string_view rest = token.substr(close + 1);
  if (rest.empty()) return text(body);
  if (rest == "^^int") return parse(LiteralKind::kInteger, body);
  if (rest == "^^decimal") return parse(LiteralKind::kDecimal, body);
  if (rest == "^^date") return parse(LiteralKind::kDate, body);
  throw std::invalid_argument("unknown literal tag: " + std::string(rest));
}

int Literal::year() const {
  return static_cast<int>(std::chrono::year_month_day{day_}.year());
}

std::string Literal::serialize() const {
  std::string out = "\"" + escape(lexical_) + "\"";
  if (kind_ != LiteralKind::kText) {
    out += "^^";
    out += to_string(kind_);
  }
  return out;
}

std::weak_ordering compare_values(const Literal& a, const Literal& b) {
  if (a.is_numeric() && b.is_numeric()) {
    if (a.kind() == LiteralKind::kInteger && b.kind() == LiteralKind::kInteger) {
      const auto x = std::stoll(a.lexical());
      const auto y = std::stoll(b.lexical());
      return x <=> y;
    }
    const double x = a.number(), y = b.number();
    if (x < y) return std::weak_ordering::less;
    if (y < x) return std::weak_ordering::greater;
    return std::weak_ordering::equivalent;
  }
  if (a.kind() != b.kind()) {
    throw LiteralKindMismatch(std::string("cannot compare ") +
                              std::string(to_string(a.kind())) + " with " +
                              std::string(to_string(b.kind())));
  }
  if (a.kind() == LiteralKind::kDate) return a.day() <=> b.day();
  return a.lexical() <=> b.lexical();
}

std::string serialize(const Value& v) {
  if (const auto* e = std::get_if<Entity>(&v)) return e->id;
  return std::get<Literal>(v).serialize();
}

std::string answer_string(const Value& v) {
  if (const auto* e = std::get_if<Entity>(&v)) return e->id;
  return std::get<Literal>(v).lexical();
}

}  // namespace cqa
