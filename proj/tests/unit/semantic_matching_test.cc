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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "fixture.h"

namespace cqa {
namespace {

using testing::fixture;

EmbeddingTable parse(const std::string& text) {
  std::istringstream in(text);
  return EmbeddingTable::parse(in, "vec.txt");
}

AnnotatedQuestion question(const std::string& text) {
  AnnotatedQuestion q;
  q.id = "q";
  q.text = text;
  q.tree = DepTree({{1, "x", "x", "X", 0, "root"}});
  return q;
}

std::vector<std::string> data_relations() {
  std::vector<std::string> out;
  for (const auto& r : fixture().kg.all_relations())
    if (!is_reserved_relation(r)) out.push_back(r);
  return out;
}

TEST(EmbeddingTableTest, ParsesHeaderAndRows) {
  const auto t = parse("2 3\nfoo 1 0 0\nbar 0 1 0\n");
  EXPECT_EQ(t.size(), 2u);
  EXPECT_EQ(t.dimension(), 3);
  ASSERT_NE(t.find("foo"), nullptr);
  EXPECT_EQ(*t.find("foo"), (std::vector<double>{1, 0, 0}));
  EXPECT_EQ(t.find("baz"), nullptr);
}

TEST(EmbeddingTableTest, ShortRowFailsAtItsLine) {
  try {
    parse("2 3\nfoo 1 0 0\nbar 0 1\n");
    FAIL() << "no error";
  } catch (const LoadError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(EmbeddingTableTest, DuplicateWordKeepsLastAndWarns) {
  const auto t = parse("2 2\nfoo 1 0\nfoo 0 1\n");
  EXPECT_EQ(t.size(), 1u);
  EXPECT_EQ(*t.find("foo"), (std::vector<double>{0, 1}));
  EXPECT_EQ(t.warnings().size(), 1u);
}

TEST(EmbeddingTableTest, SetChecksDimension) {
  EmbeddingTable t(2);
  EXPECT_THROW(t.set("x", {1, 2, 3}), std::invalid_argument);
}

TEST(EmbedTokensTest, MeanOfKnownWords) {
  const auto t = parse("2 2\na 1 0\nb 0 1\n");
  EXPECT_EQ(embed_tokens(t, {"a"}), (std::vector<double>{1, 0}));
  EXPECT_EQ(embed_tokens(t, {"a", "b"}), (std::vector<double>{0.5, 0.5}));
  EXPECT_EQ(embed_tokens(t, {"a", "zzz"}), (std::vector<double>{1, 0}));
  EXPECT_EQ(embed_tokens(t, {"zzz"}), (std::vector<double>{0, 0}));
}

TEST(CosineTest, Basics) {
  EXPECT_DOUBLE_EQ(cosine({1, 0}, {2, 0}), 1.0);
  EXPECT_DOUBLE_EQ(cosine({1, 0}, {0, 3}), 0.0);
  EXPECT_DOUBLE_EQ(cosine({1, 0}, {-1, 0}), -1.0);
  EXPECT_DOUBLE_EQ(cosine({0, 0}, {1, 1}), 0.0);
}

TEST(EmbeddingScorerTest, IdenticalWordsScoreOne) {
  const auto t = parse("2 2\ndeath 1 0.5\ncause 0.2 1\n");
  const EmbeddingScorer s(t);
  EXPECT_NEAR(s.score(question("death cause"), "death_cause"), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(s.score(question("death cause"), "unknown_words"), 0.0);
}

TEST(EmbeddingScorerTest, ParaphrasesCanRaiseTheScore) {
  const auto t = parse("2 2\na 1 0\nb 0 1\n");
  const EmbeddingScorer s(t);
  auto q = question("a");
  EXPECT_DOUBLE_EQ(s.score(q, "b"), 0.0);
  q.paraphrases.push_back("b");
  EXPECT_DOUBLE_EQ(s.score(q, "b"), 1.0);
}

TEST(EmbeddingScorerTest, HeightBeatsDeathCauseForTheMountainQuestion) {
  const EmbeddingScorer s(fixture().embeddings);
  const auto& q = fixture().question("comparative");
  EXPECT_GT(s.score(q, "height"), s.score(q, "death_cause"));
}

// Scores recomputed with plain floats by tests/oracles/relation_scores.py.
struct Frozen {
  const char* question;
  const char* relation;
  double score;
};

constexpr Frozen kFrozen[] = {
    {"multi_hop", "actor", 0.19824558013652693},
    {"multi_hop", "age_record", 0.28889009640105862},
    {"multi_hop", "age_value", 0.28719118937597765},
    {"multi_hop", "as_of", 0},
    {"multi_hop", "author", 0.7278918390707797},
    {"multi_hop", "birth_date", 0.23976319796599602},
    {"multi_hop", "death_cause", 0.85268648154398485},
    {"multi_hop", "death_date", 0.62392909177755984},
    {"multi_hop", "director", 0.19824558013652693},
    {"multi_hop", "duration", 0.0695491503403661},
    {"multi_hop", "flows_through", 0},
    {"multi_hop", "height", 0.015480379013855263},
    {"multi_hop", "in_office", 0.094942413791840832},
    {"multi_hop", "located_in", 0},
    {"multi_hop", "president_of", 0.094942413791840832},
    {"multi_hop", "publication_date", 0.39921511621844669},
    {"multi_hop", "release_date", 0.13427891519633581},
    {"multi_hop", "writer", 0.73881765570692715},
    {"comparative", "actor", 0},
    {"comparative", "age_record", 0.060108392189323678},
    {"comparative", "age_value", 0.060417377555113103},
    {"comparative", "as_of", 0},
    {"comparative", "author", 0},
    {"comparative", "birth_date", 0.066710691719400042},
    {"comparative", "death_cause", 0.011712942866506515},
    {"comparative", "death_date", 0.056472120973351789},
    {"comparative", "director", 0},
    {"comparative", "duration", 0.035348435742057767},
    {"comparative", "flows_through", 0},
    {"comparative", "height", 0.99922589822895891},
    {"comparative", "in_office", 0},
    {"comparative", "located_in", 0.99861782933250975},
    {"comparative", "president_of", 0},
    {"comparative", "publication_date", 0.064562875473443609},
    {"comparative", "release_date", 0.068247413262445267},
    {"comparative", "writer", 0},
};

TEST(EmbeddingScorerTest, MatchesReferenceScores) {
  const EmbeddingScorer s(fixture().embeddings);
  for (const auto& f : kFrozen)
    EXPECT_NEAR(s.score(fixture().question(f.question), f.relation), f.score, 1e-12)
        << f.question << " " << f.relation;
}

TEST(PruneRelationsTest, MinusOneKeepsEverything) {
  const EmbeddingScorer s(fixture().embeddings);
  const auto rels = data_relations();
  EXPECT_EQ(prune_relations(s, fixture().question("type"), rels, -1), rels);
}

TEST(PruneRelationsTest, TauOneKeepsOnlyPerfectMatches) {
  const auto t = parse("2 2\nheight 1 0\ndeath 0 1\n");
  const EmbeddingScorer s(t);
  EXPECT_EQ(prune_relations(s, question("height"), {"height", "death", "age"}, 1.0),
            std::vector<std::string>{"height"});
}

TEST(PruneRelationsTest, RejectsTauOutsideRange) {
  const EmbeddingScorer s(fixture().embeddings);
  const auto& q = fixture().question("type");
  EXPECT_THROW(prune_relations(s, q, {"height"}, 1.0000001), std::invalid_argument);
  EXPECT_THROW(prune_relations(s, q, {"height"}, -1.5), std::invalid_argument);
}

TEST(PruneRelationsTest, FixtureSurvivorsAtDefaultTau) {
  using V = std::vector<std::string>;
  const std::vector<std::pair<std::string, V>> expected = {
      {"multi_hop", {"author", "death_cause", "death_date", "publication_date", "writer"}},
      {"multi_entity", {"actor", "director", "duration"}},
      {"type", {"flows_through", "height", "located_in"}},
      {"temporal_explicit", {"height", "in_office", "located_in", "president_of"}},
      {"temporal_implicit",
       {"age_record", "age_value", "birth_date", "death_cause", "death_date", "duration",
        "publication_date", "release_date"}},
      {"aggregation", {"author", "publication_date", "writer"}},
      {"superlative", {"height", "located_in"}},
      {"comparative", {"height", "located_in"}},
  };
  const EmbeddingScorer s(fixture().embeddings);
  for (const auto& [id, keep] : expected)
    EXPECT_EQ(prune_relations(s, fixture().question(id), data_relations(), 0.3), keep) << id;
}

}  // namespace
}  // namespace cqa
