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

#include "cqa/semantic_matching.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cqa/kg_store.h"
#include "cqa/text.h"

namespace cqa {

EmbeddingTable EmbeddingTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError(path, 0, "cannot open file");
  return parse(in, path);
}

EmbeddingTable EmbeddingTable::parse(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw LoadError(source, 1, "missing header line");
  std::istringstream header(line);
  long long count = -1;
  int dim = 0;
  if (!(header >> count >> dim) || count < 0 || dim <= 0)
    throw LoadError(source, 1, "header must be '<count> <dimension>'");

  EmbeddingTable table(dim);
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string word;
    if (!(ss >> word)) continue;
    std::vector<double> v;
    for (std::string tok; ss >> tok;) {
      double x = 0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
      if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw LoadError(source, line_no, "bad number '" + tok + "'");
      v.push_back(x);
    }
    if (static_cast<int>(v.size()) != dim)
      throw LoadError(source, line_no, "expected " + std::to_string(dim) + " values, got " +
                                           std::to_string(v.size()));
    if (table.vectors_.contains(word))
      table.warnings_.push_back(source + ":" + std::to_string(line_no) +
                                ": duplicate word '" + word + "', keeping the last vector");
    table.vectors_[word] = std::move(v);
  }
  return table;
}

const std::vector<double>* EmbeddingTable::find(std::string_view word) const {
  const auto it = vectors_.find(std::string(word));
  return it == vectors_.end() ? nullptr : &it->second;
}

void EmbeddingTable::set(std::string word, std::vector<double> v) {
  if (static_cast<int>(v.size()) != dimension_)
    throw std::invalid_argument("vector dimension mismatch for '" + word + "'");
  vectors_[std::move(word)] = std::move(v);
}

std::vector<double> embed_tokens(const EmbeddingTable& table,
                                 const std::vector<std::string>& words) {
  std::vector<double> sum(static_cast<std::size_t>(table.dimension()), 0.0);
  int n = 0;
  for (const auto& w : words) {
    const auto* v = table.find(w);
    if (v == nullptr) continue;
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += (*v)[i];
    ++n;
  }
  if (n > 0)
    for (auto& x : sum) x /= n;
  return sum;
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

double EmbeddingScorer::score(const AnnotatedQuestion& q, std::string_view relation) const {
  const auto rel = embed_tokens(table_, text::relation_words(relation));
  double best = cosine(embed_tokens(table_, text::words(q.text)), rel);
  for (const auto& p : q.paraphrases)
    best = std::max(best, cosine(embed_tokens(table_, text::words(p)), rel));
  return best;
}

std::vector<std::string> prune_relations(const RelationScorer& scorer,
                                         const AnnotatedQuestion& q,
                                         const std::vector<std::string>& relations,
                                         double tau) {
  if (!(tau >= -1.0 && tau <= 1.0)) throw std::invalid_argument("tau must lie in [-1, 1]");
  std::vector<std::string> out;
  for (const auto& r : relations)
    if (scorer.score(q, r) >= tau) out.push_back(r);
  return out;
}

}  // namespace cqa
