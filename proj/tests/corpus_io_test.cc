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

#include "formattack/corpus_io.h"

#include <gtest/gtest.h>

#include <sstream>

#include "formattack/errors.h"
#include "random_docs.h"

namespace formattack {
namespace {

const char kRecord[] =
    R"({"doc_id":"a","page":{"width":100,"height":50},)"
    R"("words":[{"text":"No.","box":[1,1,10,5]},{"text":"42","box":[12,1,20,5]}],)"
    R"("annotations":[{"field":"invoice_number","data_type":"number",)"
    R"("key_indices":[0],"value_indices":[1],"value_text":"42"}]})";

TEST(CorpusIoTest, ReadsRecordsInOrder) {
  std::stringstream in;
  in << kRecord << "\n\n"
     << std::string(kRecord).replace(11, 1, "b") << "\n"
     << std::string(kRecord).replace(11, 1, "c");
  const std::vector<Document> docs = ReadCorpus(in);
  ASSERT_EQ(docs.size(), 3u);
  EXPECT_EQ(docs[0].doc_id, "a");
  EXPECT_EQ(docs[2].doc_id, "c");
  EXPECT_EQ(docs[0].annotations[0].key_indices, std::vector<int>{0});
}

TEST(CorpusIoTest, EmptyInputIsEmptyCorpus) {
  std::stringstream in;
  EXPECT_TRUE(ReadCorpus(in).empty());
}

TEST(CorpusIoTest, ErrorsCarryLineNumbers) {
  std::stringstream in;
  in << kRecord << "\n{broken\n";
  try {
    ReadCorpus(in);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(CorpusIoTest, ValueTextMismatchNamesField) {
  std::string bad = kRecord;
  bad.replace(bad.find("\"value_text\":\"42\""), 17, "\"value_text\":\"43\"");
  std::stringstream in(bad);
  try {
    ReadCorpus(in);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("invoice_number"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("line 1"), std::string::npos);
  }
}

TEST(CorpusIoTest, RejectsUnknownAndMissingKeys) {
  std::string extra = kRecord;
  extra.insert(1, R"("extra":1,)");
  EXPECT_THROW(ParseDocument(extra), ParseError);
  std::string missing = kRecord;
  missing.replace(missing.find(R"("value_text":"42")"), 17, R"("x":"42")");
  EXPECT_THROW(ParseDocument(missing), ParseError);
  EXPECT_THROW(ParseDocument(R"({"doc_id":"a"})"), ParseError);
  EXPECT_THROW(ParseDocument("[1,2]"), ParseError);
}

TEST(CorpusIoTest, UnicodeSurvives) {
  Document doc = ParseDocument(kRecord);
  doc.words[0].text = "café №5";
  const Document back = ParseDocument(SerializeDocument(doc));
  EXPECT_EQ(back.words[0].text, "café №5");
}

TEST(CorpusIoTest, CoordinatesKeepSixDecimals) {
  Document doc = ParseDocument(kRecord);
  doc.words[0].box.x2 = 10.4567891;
  doc.words[0].box.x1 = 1.0000004;
  const Document back = ParseDocument(SerializeDocument(doc));
  EXPECT_NEAR(back.words[0].box.x2, 10.4567891, 1e-6);
  EXPECT_NEAR(back.words[0].box.x1, 1.0000004, 1e-6);
}

TEST(CorpusIoTest, RoundTripsRandomDocuments) {
  const std::vector<Document> corpus = testing::RandomCorpus(200, 3);
  std::stringstream buffer;
  WriteCorpus(buffer, corpus);
  const std::vector<Document> back = ReadCorpus(buffer);
  ASSERT_EQ(back.size(), corpus.size());
  for (size_t i = 0; i < corpus.size(); ++i) {
    const Document& a = corpus[i];
    const Document& b = back[i];
    EXPECT_EQ(a.doc_id, b.doc_id);
    EXPECT_EQ(a.annotations, b.annotations);
    ASSERT_EQ(a.words.size(), b.words.size());
    for (size_t w = 0; w < a.words.size(); ++w) {
      EXPECT_EQ(a.words[w].text, b.words[w].text);
      EXPECT_NEAR(a.words[w].box.x1, b.words[w].box.x1, 1e-6);
      EXPECT_NEAR(a.words[w].box.y2, b.words[w].box.y2, 1e-6);
    }
    // A second trip is exact.
    EXPECT_EQ(SerializeDocument(b), SerializeDocument(ParseDocument(
                                        SerializeDocument(b))));
  }
}

}  // namespace
}  // namespace formattack
