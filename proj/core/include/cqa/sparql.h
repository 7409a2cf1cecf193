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

#include <stdexcept>
#include <string>
#include <string_view>

#include "cqa/logical_form.h"

namespace cqa {

// Text of the form under its current variable names, with patterns and
// filters sorted. Var-var comparisons put the smaller name on the left.
std::string render_sparql(const LogicalForm& f);

// Renames variables so the answer is ?v0 and the rest follow first use in
// the sorted rendering, choosing the smallest text over all namings. Two
// forms that differ only by variable names canonicalize identically.
LogicalForm canonicalize(const LogicalForm& f);

// render_sparql(canonicalize(f)).
std::string serialize_sparql(const LogicalForm& f);

class SparqlParseError : public std::runtime_error {
 public:
  SparqlParseError(std::size_t offset, const std::string& what)
      : std::runtime_error("offset " + std::to_string(offset) + ": " + what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Parses the query subset emitted by render_sparql.
LogicalForm parse_sparql(std::string_view text);

}  // namespace cqa
