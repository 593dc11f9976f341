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

#include "glyphbreak/unicode.hpp"

#include <random>

#include "gtest/gtest.h"
#include "support/random_text.hpp"

namespace glyphbreak {
namespace {

TEST(Utf8Test, DecodesMultiByteScalars) {
  const auto s = DecodeUtf8("a\xD0\xB0\xC3\xA9\xE4\xB8\xAD\xF0\x9F\x98\x80");
  EXPECT_EQ(s, U"a\u0430\u00E9\u4E2D\U0001F600");
}

TEST(Utf8Test, RejectsIllFormedInput) {
  EXPECT_THROW(DecodeUtf8("\xC0\xAF"), InvalidArgument);      // overlong
  EXPECT_THROW(DecodeUtf8("\xED\xA0\x80"), InvalidArgument);  // surrogate
  EXPECT_THROW(DecodeUtf8("abc\xE4\xB8"), InvalidArgument);   // truncated
  EXPECT_FALSE(IsValidUtf8("\xFF"));
  EXPECT_TRUE(IsValidUtf8(""));
}

TEST(Utf8Test, RoundTripsRandomScalars) {
  std::mt19937_64 gen(5);
  for (int i = 0; i < 200; ++i) {
    const auto scalars = testing::RandomScalars(gen, i);
    EXPECT_EQ(DecodeUtf8(EncodeUtf8(scalars)), scalars);
  }
}

TEST(UnicodeTest, CyrillicAndAccentedLettersAreLetters) {
  EXPECT_TRUE(IsLetter(U'a'));
  EXPECT_TRUE(IsLetter(U'\u0430'));
  EXPECT_TRUE(IsLetter(U'\u00E9'));
  EXPECT_FALSE(IsLetter(U'-'));
  EXPECT_FALSE(IsLetter(U'7'));
  EXPECT_FALSE(IsLetter(U'\''));
}

TEST(UnicodeTest, CaseMappingCoversCyrillic) {
  EXPECT_EQ(ToLower(U'\u0410'), U'\u0430');
  EXPECT_EQ(ToUpper(U'\u0435'), U'\u0415');
  EXPECT_EQ(FoldCaseUtf8("ABANDONED"), "abandoned");
}

TEST(CodepointTest, ParsesAndFormats) {
  EXPECT_EQ(ParseCodepoint("U+0435"), U'\u0435');
  EXPECT_EQ(ParseCodepoint("u+00e9"), U'\u00E9');
  EXPECT_EQ(FormatCodepoint(U'\u0430'), "U+0430");
  EXPECT_EQ(FormatCodepoint(U'\U0001F600'), "U+1F600");
  EXPECT_THROW(ParseCodepoint("0435"), InvalidArgument);
  EXPECT_THROW(ParseCodepoint("U+D800"), InvalidArgument);
  EXPECT_THROW(ParseCodepoint("U+12G4"), InvalidArgument);
}

}  // namespace
}  // namespace glyphbreak
