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

#include "cqa/text.h"

#include <cctype>
#include <cstdint>
#include <string_view>

namespace cqa::text {
namespace {

using namespace std::string_view_literals;

// Base letters for U+00C0..U+00FF; '\0' keeps the code point.
constexpr std::string_view kLatin1 =
    "aaaaaa\1ceeeeiiii"   // C0-CF (C6 handled separately)
    "dnooooo\0ouuuuy\0\2"  // D0-DF (D7, DE kept; DF -> ss)
    "aaaaaa\1ceeeeiiii"   // E0-EF
    "dnooooo\0ouuuuy\0y"sv;  // F0-FF

// Base letters for U+0100..U+017F.
constexpr std::string_view kLatinExtA =
    "aaaaaaccccccccdd"  // 100-10F
    "ddeeeeeeeeeegggg"  // 110-11F
    "gggghhhhiiiiiiii"  // 120-12F
    "ii\3\3jjkkklllllll"  // 130-13F (132/133 -> ij)
    "lllnnnnnnnnnoooo"  // 140-14F
    "oo\4\4rrrrrrssssss"  // 150-15F (152/153 -> oe)
    "ssttttttuuuuuuuu"  // 160-16F
    "uuuuwwyyyzzzzzzs"sv;  // 170-17F

static_assert(kLatin1.size() == 64);
static_assert(kLatinExtA.size() == 128);

bool is_combining(char32_t cp) {
  return (cp >= 0x0300 && cp <= 0x036F) || (cp >= 0x064B && cp <= 0x065F) ||
         cp == 0x0670;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Raw bytes of invalid sequences are tagged above the Unicode range so they
// cannot be mistaken for Latin-1 letters.
constexpr char32_t kRawByte = 0x110000;

// Decodes one code point at `i`, advancing it. An invalid sequence yields
// kRawByte + its first byte.
char32_t next_code_point(std::string_view s, std::size_t& i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  auto cont = [&](std::size_t k) -> int {
    if (i + k >= s.size()) return -1;
    const auto b = static_cast<unsigned char>(s[i + k]);
    return (b & 0xC0) == 0x80 ? (b & 0x3F) : -1;
  };
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  int len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  }
  for (int k = 1; k < len; ++k) {
    const int c = cont(k);
    if (c < 0) {
      len = 0;
      break;
    }
    cp = (cp << 6) | static_cast<char32_t>(c);
  }
  if (len == 0) {
    ++i;
    return kRawByte + b0;
  }
  i += len;
  return cp;
}

void append_folded(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(
        std::tolower(static_cast<unsigned char>(cp))));
    return;
  }
  if (cp >= kRawByte) {
    out.push_back(static_cast<char>(cp - kRawByte));
    return;
  }
  if (is_combining(cp)) return;
  char mapped = '\0';
  if (cp >= 0xC0 && cp <= 0xFF) {
    mapped = kLatin1[cp - 0xC0];
  } else if (cp >= 0x100 && cp <= 0x17F) {
    mapped = kLatinExtA[cp - 0x100];
  }
  switch (mapped) {
    case '\0':
      append_utf8(out, cp);
      return;
    case '\1':
      out += "ae";
      return;
    case '\2':
      out += "ss";
      return;
    case '\3':
      out += "ij";
      return;
    case '\4':
      out += "oe";
      return;
    default:
      out.push_back(mapped);
  }
}

}  // namespace

std::string fold(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) append_folded(out, next_code_point(s, i));
  return out;
}

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : s) {
    const auto u = static_cast<unsigned char>(c);
    if (u >= 0x80 || std::isalnum(u)) {
      cur.push_back(static_cast<char>(std::tolower(u)));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::vector<std::string> relation_words(std::string_view relation) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(lower_ascii(cur));
    cur.clear();
  };
  for (std::size_t i = 0; i < relation.size(); ++i) {
    const auto c = static_cast<unsigned char>(relation[i]);
    if (c == '_' || c == '-') {
      flush();
      continue;
    }
    if (std::isupper(c) && i > 0) {
      const auto prev = static_cast<unsigned char>(relation[i - 1]);
      if (std::islower(prev) || std::isdigit(prev)) flush();
    }
    cur.push_back(static_cast<char>(c));
  }
  flush();
  return out;
}

}  // namespace cqa::text
