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


#include "cqa/logical_form.h"

#include <gtest/gtest.h>

namespace cqa {
namespace {

TriplePattern P(Term s, std::string r, Term o) { return {std::move(s), std::move(r), std::move(o)}; }
Var V(std::string n) { return Var{std::move(n)}; }
Entity E(std::string id) { return Entity{std::move(id)}; }

TEST(RenderTermTest, Forms) {
  EXPECT_EQ(render(V("v0")), "?v0");
  EXPECT_EQ(render(E("K2")), "<K2>");
  EXPECT_EQ(render(Literal::integer(8600)), "\"8600\"^^int");
}

TEST(CompareOpTest, Flip) {
  EXPECT_EQ(flip(CompareOp::kLess), CompareOp::kGreater);
  EXPECT_EQ(flip(CompareOp::kGreater), CompareOp::kLess);
  EXPECT_EQ(flip(CompareOp::kEqual), CompareOp::kEqual);
}

TEST(ValidateTest, TwoHopChainIsValid) {
  LogicalForm f;
  f.patterns = {P(E("Cranberries"), "writer", V("v1")), P(V("v1"), "death_cause", V("v0"))};
  EXPECT_EQ(validate(f), std::nullopt);
  EXPECT_EQ(variables(f), (std::set<std::string>{"v0", "v1"}));
}

TEST(ValidateTest, Violations) {
  LogicalForm empty;
  EXPECT_EQ(validate(empty), "unconstrained form");

  LogicalForm three;
  three.patterns = {P(E("A"), "r", V("v1")), P(V("v1"), "r", V("v2")), P(V("v2"), "r", V("v0"))};
  EXPECT_EQ(validate(three), "variable ?v0 is more than two hops from an entity");

  LogicalForm floating;
  floating.patterns = {P(E("A"), "r", V("v0")), P(V("v1"), "r", V("v2"))};
  EXPECT_NE(validate(floating), std::nullopt);

  LogicalForm stray;
  stray.patterns = {P(E("A"), "r", V("v0"))};
  stray.filters = {Compare{"v9", CompareOp::kLess, Literal::integer(3)}};
  EXPECT_EQ(validate(stray), "variable ?v9 occurs in no pattern");

  LogicalForm answer;
  answer.patterns = {P(E("A"), "r", V("v1"))};
  EXPECT_EQ(validate(answer), "variable ?v0 occurs in no pattern");
}

TEST(ValidateTest, LiteralsDoNotConnect) {
  LogicalForm f;
  f.patterns = {P(E("A"), "height", V("v1")), P(V("v0"), "height", Literal::integer(5))};
  EXPECT_EQ(validate(f), "variable ?v0 is not connected to an entity");
}

TEST(ValidateTest, TypeObjectsAnchor) {
  LogicalForm f;
  f.patterns = {P(V("v0"), "height", V("v1")), P(V("v0"), "type", E("Mountain"))};
  EXPECT_EQ(validate(f), std::nullopt);
}

TEST(DedupeTest, KeepsFirstOccurrences) {
  LogicalForm f;
  f.patterns = {P(E("A"), "r", V("v0")), P(E("B"), "r", V("v0")), P(E("A"), "r", V("v0"))};
  f.filters = {YearEquals{"v0", 1990}, YearEquals{"v0", 1990}};
  dedupe(f);
  EXPECT_EQ(f.patterns.size(), 2u);
  EXPECT_EQ(f.filters.size(), 1u);
  EXPECT_EQ(std::get<Entity>(f.patterns[1].subject).id, "B");
}

}  // namespace
}  // namespace cqa
