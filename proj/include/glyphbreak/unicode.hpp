// Copyright 2026 The glyphbreak Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GLYPHBREAK_UNICODE_HPP_
#define GLYPHBREAK_UNICODE_HPP_

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "glyphbreak/error.hpp"

namespace glyphbreak {

// A Unicode scalar value (never a surrogate).
using Scalar = char32_t;

// Decodes UTF-8 into scalar values. Throws InvalidArgument on ill-formed
// input (overlong forms, surrogates, truncated sequences).
inline std::u32string DecodeUtf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  const auto* s = reinterpret_cast<const std::uint8_t*>(text.data());
  const auto length = static_cast<std::int32_t>(text.size());
  std::int32_t i = 0;
  while (i < length) {
    const std::int32_t at = i;
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) {
      throw InvalidArgument("invalid UTF-8 at byte offset " +
                            std::to_string(at));
    }
    out.push_back(static_cast<Scalar>(c));
  }
  return out;
}

inline void AppendUtf8(std::string& out, Scalar c) {
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
}

inline std::string EncodeUtf8(std::u32string_view scalars) {
  std::string out;
  out.reserve(scalars.size());
  for (Scalar c : scalars) AppendUtf8(out, c);
  return out;
}

inline bool IsValidUtf8(std::string_view text) {
  const auto* s = reinterpret_cast<const std::uint8_t*>(text.data());
  const auto length = static_cast<std::int32_t>(text.size());
  std::int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) return false;
  }
  return true;
}

inline bool IsScalarValue(std::uint32_t c) {
  return c <= 0x10FFFF && !(c >= 0xD800 && c <= 0xDFFF);
}

// Character classes and simple (one-to-one) case mappings come from ICU and
// cover Cyrillic, Greek and accented Latin as well as ASCII.
inline bool IsLetter(Scalar c) { return u_isalpha(static_cast<UChar32>(c)); }
inline bool IsUpper(Scalar c) { return u_isupper(static_cast<UChar32>(c)); }
inline bool IsLower(Scalar c) { return u_islower(static_cast<UChar32>(c)); }

inline Scalar ToLower(Scalar c) {
  return static_cast<Scalar>(u_tolower(static_cast<UChar32>(c)));
}
inline Scalar ToUpper(Scalar c) {
  return static_cast<Scalar>(u_toupper(static_cast<UChar32>(c)));
}
inline Scalar FoldCase(Scalar c) {
  return static_cast<Scalar>(
      u_foldCase(static_cast<UChar32>(c), U_FOLD_CASE_DEFAULT));
}

inline std::u32string ToLower(std::u32string_view s) {
  std::u32string out(s);
  for (auto& c : out) c = ToLower(c);
  return out;
}

inline std::u32string FoldCase(std::u32string_view s) {
  std::u32string out(s);
  for (auto& c : out) c = FoldCase(c);
  return out;
}

inline std::string FoldCaseUtf8(std::string_view s) {
  return EncodeUtf8(FoldCase(DecodeUtf8(s)));
}

// "U+0435" style notation.
inline std::string FormatCodepoint(Scalar c) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string digits;
  auto v = static_cast<std::uint32_t>(c);
  do {
    digits.insert(digits.begin(), kHex[v & 0xF]);
    v >>= 4;
  } while (v != 0);
  while (digits.size() < 4) digits.insert(digits.begin(), '0');
  return "U+" + digits;
}

// Parses "U+XXXX" (case-insensitive prefix, 1-6 hex digits).
inline Scalar ParseCodepoint(std::string_view token) {
  if (token.size() < 3 || (token[0] != 'U' && token[0] != 'u') ||
      token[1] != '+' || token.size() > 8) {
    throw InvalidArgument("expected U+XXXX codepoint, got '" +
                          std::string(token) + "'");
  }
  std::uint32_t v = 0;
  for (char ch : token.substr(2)) {
    std::uint32_t d;
    if (ch >= '0' && ch <= '9') {
      d = static_cast<std::uint32_t>(ch - '0');
    } else if (ch >= 'a' && ch <= 'f') {
      d = static_cast<std::uint32_t>(ch - 'a' + 10);
    } else if (ch >= 'A' && ch <= 'F') {
      d = static_cast<std::uint32_t>(ch - 'A' + 10);
    } else {
      throw InvalidArgument("bad hex digit in '" + std::string(token) + "'");
    }
    v = v * 16 + d;
  }
  if (!IsScalarValue(v)) {
    throw InvalidArgument("'" + std::string(token) +
                          "' is not a Unicode scalar value");
  }
  return static_cast<Scalar>(v);
}

}  // namespace glyphbreak

#endif  // GLYPHBREAK_UNICODE_HPP_
