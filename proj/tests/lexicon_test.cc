//
// Copyright 2026 The formattack Authors
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
//

#include "formattack/lexicon.h"

#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "formattack/errors.h"

namespace formattack {
namespace {

SynonymLexicon FromText(const std::string& text) {
  std::istringstream in(text);
  return SynonymLexicon::Parse(in);
}

TEST(SynonymLexiconTest, ParsesEntriesCommentsAndBlanks) {
  const SynonymLexicon lex =
      FromText("# comment\n\nTotal\tsum, amount\nnet\tgross\nnet\tfinal\n");
  EXPECT_EQ(lex.size(), 2u);
  ASSERT_NE(lex.Find("total"), nullptr);
  EXPECT_EQ(*lex.Find("total"), (std::vector<std::string>{"sum", "amount"}));
  EXPECT_EQ(*lex.Find("net"), (std::vector<std::string>{"gross", "final"}));
  EXPECT_EQ(lex.Find("Total"), nullptr);
  EXPECT_EQ(lex.Find("missing"), nullptr);
}

TEST(SynonymLexiconTest, MalformedLinesReportLineNumber) {
  for (const char* text : {"ok\tfine\nno tab here\n", "ok\tfine\n\tx\n",
                           "ok\tfine\nword\ta,,b\n", "ok\tfine\nword\t\n"}) {
    try {
      FromText(text);
      FAIL() << text;
    } catch (const ParseError& e) {
      EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos)
          << e.what();
    }
  }
  EXPECT_THROW(SynonymLexicon::Load("/nonexistent/lexicon.tsv"), ParseError);
}

TEST(SynonymLexiconTest, BuiltinIsLoaded) {
  const SynonymLexicon& lex = SynonymLexicon::Builtin();
  EXPECT_GT(lex.size(), 50u);
  EXPECT_NE(lex.Find("total"), nullptr);
  EXPECT_NE(lex.Find("invoice"), nullptr);
}

TEST(SynonymTest, PicksFromEntryAndKeepsCase) {
  const SynonymLexicon lex = FromText("total\tsum,amount\n");
  Rng rng(1);
  std::set<std::string> seen;
  for (int i = 0; i < 200; ++i) seen.insert(*Synonym("Total", lex, rng));
  EXPECT_EQ(seen, (std::set<std::string>{"Sum", "Amount"}));
  seen.clear();
  for (int i = 0; i < 200; ++i) seen.insert(*Synonym("TOTAL", lex, rng));
  EXPECT_EQ(seen, (std::set<std::string>{"SUM", "AMOUNT"}));
  seen.clear();
  for (int i = 0; i < 200; ++i) seen.insert(*Synonym("total", lex, rng));
  EXPECT_EQ(seen, (std::set<std::string>{"sum", "amount"}));
}

TEST(SynonymTest, KeepsSurroundingPunctuation) {
  const SynonymLexicon lex = FromText("total\tsum\n");
  Rng rng(2);
  EXPECT_EQ(Synonym("Total:", lex, rng), "Sum:");
  EXPECT_EQ(Synonym("(total)", lex, rng), "(sum)");
}

TEST(SynonymTest, AbsentWithoutEntry) {
  const SynonymLexicon lex = FromText("total\tsum\n");
  Rng rng(3);
  EXPECT_FALSE(Synonym("invoice", lex, rng));
  EXPECT_FALSE(Synonym("::", lex, rng));
  EXPECT_FALSE(Synonym("total", SynonymLexicon(), rng));
}

TEST(AsciiLowerTest, LeavesOtherBytes) {
  EXPECT_EQ(AsciiLower("AbC café"), "abc café");
}

}  // namespace
}  // namespace formattack
