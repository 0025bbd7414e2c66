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

#include "cli.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "formattack/corpus_io.h"
#include "formattack/metrics.h"
#include "formattack/registry.h"
#include "random_docs.h"

namespace formattack {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("formattack_cli_" +
            std::string(::testing::UnitTest::GetInstance()
                            ->current_test_info()
                            ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int Run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    args.insert(args.begin(), "formattack");
    return RunCli(args, out_, err_);
  }

  std::string Path(const std::string& name) const {
    return (dir_ / name).string();
  }

  std::string Slurp(const std::string& name) const {
    std::ifstream in(Path(name));
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  int Lines(const std::string& text) const {
    return static_cast<int>(std::count(text.begin(), text.end(), '\n'));
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, SynthWritesCorpus) {
  ASSERT_EQ(Run({"synth", "--n", "5", "--template", "receipt", "--seed", "3",
                 "--out", Path("r.jsonl")}),
            kExitOk)
      << err_.str();
  const auto docs = LoadCorpus(Path("r.jsonl"));
  EXPECT_EQ(docs.size(), 5u);
  EXPECT_EQ(docs[0].doc_id, "receipt-00000");
  EXPECT_NE(out_.str().find("wrote 5 receipt documents"), std::string::npos);
}

TEST_F(CliTest, TransformReportsStats) {
  SaveCorpus(Path("in.jsonl"), {testing::HandInvoice()});
  ASSERT_EQ(Run({"transform", "--corpus", Path("in.jsonl"), "--transforms",
                 "key_drop,global_shuffle", "--out", Path("out.jsonl")}),
            kExitOk)
      << err_.str();
  EXPECT_NE(out_.str().find("key_drop: dropped=6 changed=0 moved=0 "
                            "reordered=0 skipped_fields=0"),
            std::string::npos)
      << out_.str();
  const auto docs = LoadCorpus(Path("out.jsonl"));
  ASSERT_EQ(docs.size(), 1u);
  EXPECT_EQ(docs[0].words.size(), testing::HandInvoice().words.size() - 6);
}

TEST_F(CliTest, TransformWithChainFileMatchesLibrary) {
  const Document doc = testing::HandInvoice();
  SaveCorpus(Path("in.jsonl"), {doc});
  std::ofstream(Path("chain.json")) << R"({
    // drop a little, then jitter
    "chain": [{"name": "bg_drop", "params": {"drop_prob": 0.5}, "seed": 4},
              "center_shift"]
  })";
  ASSERT_EQ(Run({"transform", "--corpus", Path("in.jsonl"), "--chain",
                 Path("chain.json"), "--seed", "8", "--out",
                 Path("out.jsonl")}),
            kExitOk)
      << err_.str();
  const auto specs = LoadChainConfig(Path("chain.json"), 8);
  EXPECT_EQ(SerializeDocument(LoadCorpus(Path("out.jsonl"))[0]),
            SerializeDocument(ApplyChain(doc, specs)));
}

TEST_F(CliTest, EvaluateTruthAndBaseline) {
  ASSERT_EQ(Run({"synth", "--n", "20", "--out", Path("c.jsonl")}), kExitOk);
  ASSERT_EQ(Run({"evaluate", "--corpus", Path("c.jsonl"), "--extractor",
                 "truth", "--out", Path("report.json")}),
            kExitOk)
      << err_.str();
  EXPECT_NE(out_.str().find("documents=20 failed=0"), std::string::npos);
  const json report = json::parse(Slurp("report.json"));
  EXPECT_EQ(report["extractor"], "truth");
  EXPECT_EQ(report["documents"], 20);
  EXPECT_EQ(report["score"]["macro_f1"], 1.0);
  EXPECT_TRUE(report["failures"].empty());
  EXPECT_EQ(Run({"evaluate", "--corpus", Path("c.jsonl")}), kExitOk);
}

TEST_F(CliTest, EvaluateWorkerFailuresExitThree) {
  ASSERT_EQ(Run({"synth", "--n", "3", "--out", Path("c.jsonl")}), kExitOk);
  EXPECT_EQ(Run({"evaluate", "--corpus", Path("c.jsonl"), "--extractor",
                 std::string("worker:") + FAKE_WORKER_PATH + " crash",
                 "--out", Path("report.json")}),
            kExitExtractorFailures);
  EXPECT_EQ(json::parse(Slurp("report.json"))["failures"].size(), 3u);
  EXPECT_EQ(Run({"evaluate", "--corpus", Path("c.jsonl"), "--extractor",
                 std::string("worker:") + FAKE_WORKER_PATH + " version"}),
            kExitExtractorFailures);
  EXPECT_NE(err_.str().find("protocol"), std::string::npos) << err_.str();
  EXPECT_EQ(Run({"evaluate", "--corpus", Path("c.jsonl"), "--extractor",
                 std::string("worker:") + FAKE_WORKER_PATH + " first"}),
            kExitOk)
      << err_.str();
}

TEST_F(CliTest, SweepIsReproducible) {
  ASSERT_EQ(Run({"synth", "--n", "6", "--out", Path("c.jsonl")}), kExitOk);
  std::ofstream(Path("plan.json"))
      << R"({"k": 2, "seed": 1, "top": 3, "corpus": ")" + Path("c.jsonl") +
             R"(", "params": {"bg_drop": {"drop_prob": 0.3}}})";
  ASSERT_EQ(Run({"sweep", "--plan", Path("plan.json"), "--out",
                 Path("a.json"), "--table", Path("a.csv"), "--threads", "2"}),
            kExitOk)
      << err_.str();
  // Header, original and three rows.
  EXPECT_EQ(Lines(out_.str()), 5);
  EXPECT_NE(err_.str().find("[92/92]"), std::string::npos) << err_.str();
  ASSERT_EQ(Run({"sweep", "--plan", Path("plan.json"), "--out",
                 Path("b.json"), "--cache-dir", Path("cache"), "--quiet"}),
            kExitOk);
  EXPECT_TRUE(err_.str().empty());
  ASSERT_EQ(Run({"sweep", "--plan", Path("plan.json"), "--out",
                 Path("c.json"), "--cache-dir", Path("cache")}),
            kExitOk);
  EXPECT_NE(err_.str().find("(cached)"), std::string::npos);
  EXPECT_EQ(Slurp("a.json"), Slurp("b.json"));
  EXPECT_EQ(Slurp("a.json"), Slurp("c.json"));
  const RobustnessReport report = ReportFromJson(json::parse(Slurp("a.json")));
  EXPECT_EQ(report.rows.size(), 91u);
  EXPECT_EQ(Lines(Slurp("a.csv")),
            93);

  ASSERT_EQ(Run({"sweep", "--plan", Path("plan.json"), "--k", "1", "--top",
                 "0", "--quiet"}),
            kExitOk);
  EXPECT_EQ(Lines(out_.str()), 16);
}

TEST_F(CliTest, ListShowsEveryTransform) {
  ASSERT_EQ(Run({"list"}), kExitOk);
  for (const std::string& name : AllTransformNames()) {
    EXPECT_NE(out_.str().find(name + " {"), std::string::npos) << name;
  }
}

TEST_F(CliTest, ErrorsMapToExitCodes) {
  EXPECT_EQ(Run({}), kExitUsage);
  EXPECT_EQ(Run({"frobnicate"}), kExitUsage);
  EXPECT_EQ(Run({"synth"}), kExitUsage);
  EXPECT_EQ(Run({"synth", "--n", "x", "--out", Path("x")}), kExitUsage);
  EXPECT_EQ(Run({"synth", "--template", "letter", "--out", Path("x")}),
            kExitUsage);
  SaveCorpus(Path("in.jsonl"), {testing::HandInvoice()});
  EXPECT_EQ(Run({"transform", "--corpus", Path("in.jsonl"), "--transforms",
                 "warp", "--out", Path("o.jsonl")}),
            kExitUsage);
  EXPECT_NE(err_.str().find("warp"), std::string::npos);
  EXPECT_EQ(Run({"transform", "--corpus", Path("missing.jsonl"),
                 "--transforms", "key_drop", "--out", Path("o.jsonl")}),
            kExitValidation);
  std::ofstream(Path("bad.jsonl")) << "{\"doc_id\": 1}\n";
  EXPECT_EQ(Run({"evaluate", "--corpus", Path("bad.jsonl")}), kExitValidation);
  EXPECT_EQ(Run({"evaluate", "--corpus", Path("in.jsonl"), "--extractor",
                 "oracle"}),
            kExitUsage);
  EXPECT_EQ(Run({"sweep", "--k", "2"}), kExitUsage);
  EXPECT_EQ(Run({"sweep", "--corpus", Path("in.jsonl"), "--k", "15"}),
            kExitUsage);
  EXPECT_EQ(Run({"--help"}), kExitOk);
}

}  // namespace
}  // namespace formattack
