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

#ifndef FORMATTACK_SWEEP_H_
#define FORMATTACK_SWEEP_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "formattack/document.h"
#include "formattack/extract.h"
#include "formattack/metrics.h"
#include "formattack/registry.h"
#include "json.hpp"

namespace formattack {

enum class ChainOrder { kCanonical, kReverse };

ChainOrder ParseChainOrder(std::string_view name);

struct SweepPlan {
  // Parameter overrides per transform name; missing names use defaults.
  std::map<std::string, nlohmann::json> params;
  int k = 2;
  uint64_t seed = 0;
  ChainOrder order = ChainOrder::kCanonical;
  // Optional references a plan file may carry; CLI flags take precedence.
  std::string corpus;
  std::string extractor;
  std::string fields;
  size_t top = 10;
};

// {"k", "seed", "order", "corpus", "extractor", "fields", "top",
//  "params": {"<transform>": {...}}}. Every key is optional. Throws
// ConfigError on unknown keys or transforms.
SweepPlan ParseSweepPlan(const nlohmann::json& config);
SweepPlan LoadSweepPlan(const std::filesystem::path& path);

// The fourteen registry transforms with the plan's parameters resolved and
// the plan seed.
std::vector<TransformSpec> BaseSpecs(const SweepPlan& plan);

// All k-subsets of {0, ..., n-1} in lexicographic order. Throws ConfigError
// unless 1 <= k <= n.
std::vector<std::vector<int>> EnumerateCombinations(int n, int k);

// C(14, k) chains, each in registry order (or reversed).
std::vector<std::vector<TransformSpec>> EnumerateChains(const SweepPlan& plan);

using ExtractorFactory = std::function<std::unique_ptr<Extractor>()>;

struct SweepOptions {
  // Completed chains are stored here and reused. Empty disables caching.
  std::filesystem::path cache_dir;
  int threads = 1;
  // Identifies the extractor in cache keys.
  std::string extractor_id = "baseline";
  ScoreOptions score;
  TransformContext context;
  // Receives one progress line per chain.
  std::function<void(const std::string&)> log;
};

struct SweepStats {
  size_t chains_total = 0;
  // Rows served from the cache, the original row included.
  size_t rows_cached = 0;
};

// Content hash of a corpus: FNV-1a over its serialized records.
uint64_t CorpusHash(const std::vector<Document>& corpus);

// Scores the untransformed corpus and every chain of the plan and ranks the
// chains by macro F1 drop. Each worker thread makes its own extractor from
// `factory`. Extractor failures are counted per chain and do not stop the
// sweep.
RobustnessReport RunSweep(const SweepPlan& plan,
                          const std::vector<Document>& corpus,
                          const std::vector<FieldConfig>& fields,
                          const ExtractorFactory& factory,
                          const SweepOptions& options = {},
                          SweepStats* stats = nullptr);

// Applies `specs` to every document, extracts and scores. Used by RunSweep
// for each chain (the empty chain gives the original row).
ReportRow EvaluateChain(const std::vector<TransformSpec>& specs,
                        const std::vector<Document>& corpus,
                        const std::vector<FieldConfig>& fields,
                        Extractor& extractor,
                        const SweepOptions& options = {});

}  // namespace formattack

#endif  // FORMATTACK_SWEEP_H_
