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

#include <string>
#include <string_view>
#include <vector>

namespace cqa::text {

// Lower-cases and strips diacritics. Covers ASCII, Latin-1, Latin
// Extended-A and the combining-mark blocks used by Latin and Arabic script.
// Other code points pass through unchanged.
std::string fold(std::string_view s);

std::string lower_ascii(std::string_view s);

// Splits on ASCII whitespace and punctuation and lower-cases ASCII letters.
// Bytes >= 0x80 are word characters, so non-Latin scripts stay intact.
std::vector<std::string> words(std::string_view s);

// Relation identifiers split on '_', '-' and lower-to-upper camel humps:
// "death_cause" -> {death, cause}, "birthDate" -> {birth, date}.
std::vector<std::string> relation_words(std::string_view relation);

}  // namespace cqa::text
