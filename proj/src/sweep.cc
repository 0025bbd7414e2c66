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

#include "formattack/sweep.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "formattack/corpus_io.h"
#include "formattack/errors.h"
#include "formattack/rng.h"

namespace formattack {
namespace {

using nlohmann::json;

constexpr int kCacheVersion = 1;

std::string Hex(uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(value));
  return buf;
}

json CacheKey(const std::vector<TransformSpec>& specs, uint64_t corpus_hash,
              uint64_t seed, const std::vector<FieldConfig>& fields,
              const SweepOptions& options) {
  json names = json::array();
  for (const FieldConfig& f : fields) names.push_back(f.name);
  return {{"version", kCacheVersion},
          {"corpus", Hex(corpus_hash)},
          {"chain", ChainToJson(specs)},
          {"seed", seed},
          {"fields", names},
          {"extractor", options.extractor_id},
          {"case_sensitive", options.score.case_sensitive}};
}

std::filesystem::path CachePath(const SweepOptions& options, const json& key) {
  return options.cache_dir / (Hex(Fnv1a64(key.dump())) + ".json");
}

std::optional<ReportRow> ReadCache(const std::filesystem::path& path,
                                   const json& key) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    const json entry = json::parse(in);
    if (entry.at("key") != key) return std::nullopt;
    return RowFromJson(entry.at("row"));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void WriteCache(const std::filesystem::path& path, const json& key,
                const ReportRow& row) {
  const json entry = {{"key", key}, {"row", RowToJson(row)}};
  std::filesystem::path tmp = path;
  tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(
                      std::this_thread::get_id()));
  {
    std::ofstream out(tmp);
    if (!out) throw ConfigError("cannot write cache file " + tmp.string());
    out << entry.dump() << "\n";
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

ChainOrder ParseChainOrder(std::string_view name) {
  if (name == "canonical") return ChainOrder::kCanonical;
  if (name == "reverse") return ChainOrder::kReverse;
  throw ConfigError("unknown chain order '" + std::string(name) + "'");
}

SweepPlan ParseSweepPlan(const json& config) {
  if (!config.is_object()) throw ConfigError("sweep plan must be an object");
  SweepPlan plan;
  try {
    for (const auto& item : config.items()) {
      const std::string& key = item.key();
      const json& v = item.value();
      if (key == "k") {
        plan.k = v.get<int>();
      } else if (key == "seed") {
        plan.seed = v.get<uint64_t>();
      } else if (key == "order") {
        plan.order = ParseChainOrder(v.get<std::string>());
      } else if (key == "corpus") {
        plan.corpus = v.get<std::string>();
      } else if (key == "extractor") {
        plan.extractor = v.get<std::string>();
      } else if (key == "fields") {
        plan.fields = v.get<std::string>();
      } else if (key == "top") {
        plan.top = v.get<size_t>();
      } else if (key == "params") {
        if (!v.is_object()) throw ConfigError("plan params must be an object");
        for (const auto& p : v.items()) {
          const auto& order = RegistryOrder();
          if (std::find(order.begin(), order.end(), p.key()) == order.end()) {
            throw ConfigError("plan params name unknown or unsweepable "
                              "transform '" + p.key() + "'");
          }
          plan.params[p.key()] = p.value();
        }
      } else {
        throw ConfigError("unknown sweep plan key '" + key + "'");
      }
    }
  } catch (const json::type_error& e) {
    throw ConfigError(std::string("sweep plan: ") + e.what());
  }
  return plan;
}

SweepPlan LoadSweepPlan(const std::filesystem::path& path) {
  return ParseSweepPlan(LoadJsonFile(path));
}

std::vector<TransformSpec> BaseSpecs(const SweepPlan& plan) {
  std::vector<TransformSpec> specs;
  for (const std::string& name : RegistryOrder()) {
    TransformSpec spec{name, json::object(), plan.seed};
    if (auto it = plan.params.find(name); it != plan.params.end()) {
      spec.params = it->second;
    }
    specs.push_back(ResolveSpec(spec));
  }
  return specs;
}

std::vector<std::vector<int>> EnumerateCombinations(int n, int k) {
  if (k < 1 || k > n) {
    throw ConfigError("combination size " + std::to_string(k) +
                      " outside 1.." + std::to_string(n));
  }
  std::vector<std::vector<int>> out;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    out.push_back(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::vector<std::vector<TransformSpec>> EnumerateChains(const SweepPlan& plan) {
  const std::vector<TransformSpec> base = BaseSpecs(plan);
  std::vector<std::vector<TransformSpec>> chains;
  for (const std::vector<int>& combo :
       EnumerateCombinations(static_cast<int>(base.size()), plan.k)) {
    std::vector<TransformSpec>& chain = chains.emplace_back();
    for (int i : combo) chain.push_back(base[i]);
    if (plan.order == ChainOrder::kReverse) {
      std::reverse(chain.begin(), chain.end());
    }
  }
  return chains;
}

uint64_t CorpusHash(const std::vector<Document>& corpus) {
  uint64_t hash = Fnv1a64("");
  for (const Document& doc : corpus) {
    hash = Fnv1a64(SerializeDocument(doc), hash);
    hash = Fnv1a64("\n", hash);
  }
  return hash;
}

ReportRow EvaluateChain(const std::vector<TransformSpec>& specs,
                        const std::vector<Document>& corpus,
                        const std::vector<FieldConfig>& fields,
                        Extractor& extractor, const SweepOptions& options) {
  const TransformChain chain = TransformChain::Create(specs, options.context);
  std::vector<Document> transformed;
  std::vector<ExtractionResult> preds;
  transformed.reserve(corpus.size());
  preds.reserve(corpus.size());
  for (const Document& doc : corpus) {
    transformed.push_back(chain.Apply(doc));
    try {
      preds.push_back(extractor.Extract(transformed.back()));
    } catch (const std::exception& e) {
      ExtractionResult failed;
      failed.doc_id = doc.doc_id;
      failed.failed = true;
      failed.error = e.what();
      preds.push_back(std::move(failed));
    }
  }
  ReportRow row;
  row.chain = chain.Name();
  row.specs = ChainToJson(specs);
  row.score = ScoreCorpus(preds, transformed, fields, options.score);
  return row;
}

RobustnessReport RunSweep(const SweepPlan& plan,
                          const std::vector<Document>& corpus,
                          const std::vector<FieldConfig>& fields,
                          const ExtractorFactory& factory,
                          const SweepOptions& options, SweepStats* stats) {
  std::vector<std::vector<TransformSpec>> jobs = EnumerateChains(plan);
  jobs.insert(jobs.begin(), std::vector<TransformSpec>{});
  const uint64_t corpus_hash = CorpusHash(corpus);
  if (!options.cache_dir.empty()) {
    std::filesystem::create_directories(options.cache_dir);
  }

  std::vector<ReportRow> rows(jobs.size());
  std::atomic<size_t> next{0};
  std::atomic<size_t> cached{0};
  std::mutex log_mu;
  size_t done = 0;
  std::exception_ptr first_error;

  auto work = [&] {
    std::unique_ptr<Extractor> extractor;
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        const json key = CacheKey(jobs[i], corpus_hash, plan.seed, fields,
                                  options);
        bool hit = false;
        if (!options.cache_dir.empty()) {
          if (auto row = ReadCache(CachePath(options, key), key)) {
            rows[i] = std::move(*row);
            hit = true;
            cached.fetch_add(1);
          }
        }
        if (!hit) {
          if (!extractor) extractor = factory();
          rows[i] = EvaluateChain(jobs[i], corpus, fields, *extractor,
                                  options);
          if (!options.cache_dir.empty()) {
            WriteCache(CachePath(options, key), key, rows[i]);
          }
        }
        if (options.log) {
          std::lock_guard lock(log_mu);
          ++done;
          char f1[32];
          std::snprintf(f1, sizeof(f1), "%.4f", rows[i].score.macro_f1);
          options.log("[" + std::to_string(done) + "/" +
                      std::to_string(jobs.size()) + "] " + rows[i].chain +
                      " macro_f1=" + f1 +
                      " failed=" + std::to_string(rows[i].score.docs_failed) +
                      (hit ? " (cached)" : ""));
        }
      } catch (...) {
        std::lock_guard lock(log_mu);
        if (!first_error) first_error = std::current_exception();
        next.store(jobs.size());
        return;
      }
    }
  };

  const int threads =
      std::max(1, std::min<int>(options.threads, static_cast<int>(jobs.size())));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  if (stats) {
    stats->chains_total = jobs.size() - 1;
    stats->rows_cached = cached.load();
  }
  ReportRow original = std::move(rows.front());
  rows.erase(rows.begin());
  return BuildReport(std::move(original), std::move(rows), plan.seed);
}

}  // namespace formattack
