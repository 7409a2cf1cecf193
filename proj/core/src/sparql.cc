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

#include "cqa/sparql.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <numeric>

namespace cqa {

namespace {

// Orders variable names numerically when both look like v<digits>.
bool var_name_less(const std::string& a, const std::string& b) {
  auto index = [](const std::string& s) -> long {
    if (s.size() < 2 || s[0] != 'v') return -1;
    long n = 0;
    const auto [ptr, ec] = std::from_chars(s.data() + 1, s.data() + s.size(), n);
    return ec == std::errc() && ptr == s.data() + s.size() ? n : -1;
  };
  const long ia = index(a), ib = index(b);
  if (ia >= 0 && ib >= 0) return ia < ib;
  return a < b;
}

std::string render_filter(const Filter& f) {
  if (const auto* c = std::get_if<Compare>(&f)) {
    if (const auto* v = std::get_if<Var>(&c->operand)) {
      std::string left = c->var, right = v->name;
      CompareOp op = c->op;
      if (var_name_less(right, left)) {
        std::swap(left, right);
        op = flip(op);
      }
      return "FILTER(?" + left + " " + std::string(to_string(op)) + " ?" + right + ")";
    }
    return "FILTER(?" + c->var + " " + std::string(to_string(c->op)) + " " +
           std::get<Literal>(c->operand).serialize() + ")";
  }
  const auto& y = std::get<YearEquals>(f);
  if (const auto* v = std::get_if<Var>(&y.other)) {
    std::string left = y.var, right = v->name;
    if (var_name_less(right, left)) std::swap(left, right);
    return "FILTER(YEAR(?" + left + ") = YEAR(?" + right + "))";
  }
  return "FILTER(YEAR(?" + y.var + ") = " + std::to_string(std::get<int>(y.other)) + ")";
}

LogicalForm rename(const LogicalForm& f, const std::map<std::string, std::string>& names) {
  auto name = [&](const std::string& v) {
    const auto it = names.find(v);
    return it == names.end() ? v : it->second;
  };
  auto term = [&](const Term& t) -> Term {
    if (const auto* v = std::get_if<Var>(&t)) return Var{name(v->name)};
    return t;
  };
  LogicalForm out = f;
  for (auto& p : out.patterns) {
    p.subject = term(p.subject);
    p.object = term(p.object);
  }
  for (auto& flt : out.filters) {
    if (auto* c = std::get_if<Compare>(&flt)) {
      c->var = name(c->var);
      if (auto* v = std::get_if<Var>(&c->operand)) v->name = name(v->name);
    } else {
      auto& y = std::get<YearEquals>(flt);
      y.var = name(y.var);
      if (auto* v = std::get_if<Var>(&y.other)) v->name = name(v->name);
    }
  }
  if (out.order) out.order->var = name(out.order->var);
  out.answer_var = name(out.answer_var);
  return out;
}

// Variables in order of first appearance in the rendered text.
std::vector<std::string> first_use(const std::string& text) {
  std::vector<std::string> out;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (quoted) {
      if (text[i] == '\\') {
        ++i;
      } else if (text[i] == '"') {
        quoted = false;
      }
      continue;
    }
    if (text[i] == '"') {
      quoted = true;
      continue;
    }
    if (text[i] != '?') continue;
    std::size_t j = i + 1;
    while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
      ++j;
    std::string v = text.substr(i + 1, j - i - 1);
    if (!v.empty() && v != "c" && std::find(out.begin(), out.end(), v) == out.end())
      out.push_back(v);
  }
  return out;
}

}  // namespace

std::string render_sparql(const LogicalForm& f) {
  std::vector<std::string> patterns;
  for (const auto& p : f.patterns)
    patterns.push_back(render(p.subject) + " <" + p.relation + "> " + render(p.object) + " .");
  std::sort(patterns.begin(), patterns.end());
  patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());
  std::vector<std::string> filters;
  for (const auto& flt : f.filters) filters.push_back(render_filter(flt));
  std::sort(filters.begin(), filters.end());
  filters.erase(std::unique(filters.begin(), filters.end()), filters.end());

  std::string out = "SELECT ";
  out += f.count ? "(COUNT(DISTINCT ?" + f.answer_var + ") AS ?c)" : "?" + f.answer_var;
  out += " WHERE {";
  for (const auto& p : patterns) out += " " + p;
  for (const auto& x : filters) out += " " + x;
  out += " }";
  if (f.order) {
    out += std::string(" ORDER BY ") + (f.order->descending ? "DESC" : "ASC") + "(?" +
           f.order->var + ")";
    if (f.order->offset > 0) out += " OFFSET " + std::to_string(f.order->offset);
    out += " LIMIT " + std::to_string(f.order->limit);
  }
  return out;
}

LogicalForm canonicalize(const LogicalForm& f) {
  std::vector<std::string> others;
  for (const auto& v : variables(f))
    if (v != f.answer_var) others.push_back(v);

  // Renumbers by first use until the text stops changing.
  auto settle = [&](LogicalForm form) {
    std::string text = render_sparql(form);
    for (int iter = 0; iter < 8; ++iter) {
      std::map<std::string, std::string> names{{form.answer_var, "v0"}};
      int next = 1;
      for (const auto& v : first_use(text))
        if (!names.contains(v)) names[v] = "v" + std::to_string(next++);
      for (const auto& v : variables(form))
        if (!names.contains(v)) names[v] = "v" + std::to_string(next++);
      // Two-phase rename avoids collisions between old and new names.
      std::map<std::string, std::string> tmp, fin;
      for (const auto& [from, to] : names) {
        tmp[from] = "#" + to;
        fin["#" + to] = to;
      }
      form = rename(rename(form, tmp), fin);
      std::string next_text = render_sparql(form);
      if (next_text == text) break;
      text = std::move(next_text);
    }
    return std::pair{form, text};
  };

  std::vector<std::size_t> perm(others.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<std::pair<LogicalForm, std::string>> best;
  // Beyond 7 variables the naming search is skipped; generated forms never
  // get close to that.
  const bool search = others.size() <= 7;
  do {
    std::map<std::string, std::string> tmp, fin;
    tmp[f.answer_var] = "#a";
    fin["#a"] = "v0";
    for (std::size_t i = 0; i < others.size(); ++i) {
      tmp[others[i]] = "#" + std::to_string(perm[i]);
      fin["#" + std::to_string(perm[i])] = "v" + std::to_string(perm[i] + 1);
    }
    auto candidate = settle(rename(rename(f, tmp), fin));
    if (!best || candidate.second < best->second) best = std::move(candidate);
  } while (search && std::next_permutation(perm.begin(), perm.end()));
  return best->first;
}

std::string serialize_sparql(const LogicalForm& f) { return render_sparql(canonicalize(f)); }

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  LogicalForm parse() {
    LogicalForm f;
    keyword("SELECT");
    if (try_keyword("DISTINCT")) skip_ws();
    if (peek() == '(') {
      expect('(');
      keyword("COUNT");
      expect('(');
      keyword("DISTINCT");
      f.answer_var = var();
      expect(')');
      keyword("AS");
      var();
      expect(')');
      f.count = true;
    } else {
      f.answer_var = var();
    }
    keyword("WHERE");
    expect('{');
    while (true) {
      skip_ws();
      if (peek() == '}') break;
      if (try_keyword("FILTER")) {
        expect('(');
        f.filters.push_back(filter());
        expect(')');
        continue;
      }
      TriplePattern p;
      p.subject = term();
      skip_ws();
      expect('<');
      p.relation = until('>');
      expect('>');
      p.object = term();
      f.patterns.push_back(std::move(p));
      skip_ws();
      if (peek() == '.') ++pos_;
    }
    expect('}');
    if (try_keyword("ORDER")) {
      keyword("BY");
      OrderBy o;
      if (try_keyword("DESC")) {
        o.descending = true;
      } else {
        keyword("ASC");
      }
      expect('(');
      o.var = var();
      expect(')');
      if (try_keyword("OFFSET")) o.offset = number();
      keyword("LIMIT");
      o.limit = number();
      f.order = std::move(o);
    }
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw SparqlParseError(pos_, what); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  bool try_keyword(std::string_view kw) {
    skip_ws();
    if (s_.substr(pos_, kw.size()) != kw) return false;
    const std::size_t end = pos_ + kw.size();
    if (end < s_.size() && std::isalpha(static_cast<unsigned char>(s_[end]))) return false;
    pos_ = end;
    return true;
  }
  void keyword(std::string_view kw) {
    if (!try_keyword(kw)) fail("expected " + std::string(kw));
  }
  std::string until(char c) {
    const auto end = s_.find(c, pos_);
    if (end == std::string_view::npos) fail(std::string("missing '") + c + "'");
    std::string out(s_.substr(pos_, end - pos_));
    pos_ = end;
    return out;
  }
  std::string var() {
    expect('?');
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    if (pos_ == start) fail("empty variable name");
    return std::string(s_.substr(start, pos_ - start));
  }
  int number() {
    skip_ws();
    int n = 0;
    const auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), n);
    if (ec != std::errc()) fail("expected a number");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return n;
  }
  Literal literal() {
    skip_ws();
    const std::size_t start = pos_;
    if (peek() != '"') fail("expected a literal");
    ++pos_;
    while (pos_ < s_.size() && s_[pos_] != '"') pos_ += s_[pos_] == '\\' ? 2 : 1;
    if (pos_ >= s_.size()) fail("unterminated literal");
    ++pos_;
    if (s_.substr(pos_, 2) == "^^") {
      pos_ += 2;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    try {
      return Literal::parse_token(s_.substr(start, pos_ - start));
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }
  Term term() {
    const char c = peek();
    if (c == '?') return Var{var()};
    if (c == '<') {
      ++pos_;
      Entity e{until('>')};
      ++pos_;
      return e;
    }
    return literal();
  }
  Filter filter() {
    if (try_keyword("YEAR")) {
      expect('(');
      YearEquals y;
      y.var = var();
      expect(')');
      expect('=');
      if (try_keyword("YEAR")) {
        expect('(');
        y.other = Var{var()};
        expect(')');
      } else {
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
          neg = true;
          ++pos_;
        }
        y.other = neg ? -number() : number();
      }
      return y;
    }
    Compare c;
    c.var = var();
    switch (peek()) {
      case '<':
        c.op = CompareOp::kLess;
        break;
      case '>':
        c.op = CompareOp::kGreater;
        break;
      case '=':
        c.op = CompareOp::kEqual;
        break;
      default:
        fail("expected a comparison operator");
    }
    ++pos_;
    if (peek() == '?') {
      c.operand = Var{var()};
    } else {
      c.operand = literal();
    }
    return c;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

LogicalForm parse_sparql(std::string_view text) { return Parser(text).parse(); }

}  // namespace cqa
