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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "formattack/baseline_extractor.h"
#include "formattack/extract.h"
#include "formattack/geometry.h"
#include "formattack/metrics.h"
#include "formattack/registry.h"
#include "formattack/sweep.h"
#include "formattack/synth.h"
#include "formattack/transforms.h"
#include "formattack/typedgen.h"
#include "invariants.h"
#include "oracles.h"
#include "random_docs.h"

namespace formattack {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void Require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Format(const char* fmt, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), fmt, a, b, c);
  return buf;
}

// ---- Combination counts ----

Outcome CombinationCounts() {
  Outcome out;
  const auto start = Clock::now();
  SweepPlan plan;
  plan.k = 2;
  const size_t k2 = EnumerateChains(plan).size();
  plan.k = 3;
  const auto chains3 = EnumerateChains(plan);
  const double secs = Seconds(start);
  std::set<std::vector<std::string>> unique;
  for (const auto& chain : chains3) {
    std::vector<std::string> names;
    for (const TransformSpec& s : chain) names.push_back(s.name);
    unique.insert(names);
  }
  out.Require(k2 == 91, "k=2 gave " + std::to_string(k2));
  out.Require(chains3.size() == 364 && unique.size() == 364,
              "k=3 gave " + std::to_string(chains3.size()));
  out.Require(secs < 1.0, Format("took %.3f s", secs));
  out.detail = "k=2: " + std::to_string(k2) +
               ", k=3: " + std::to_string(chains3.size()) +
               Format(", %.3f s", secs) +
               (out.detail.empty() ? "" : " | " + out.detail);
  return out;
}

// ---- Invariant suite ----

Outcome InvariantSuite() {
  Outcome out;
  const auto start = Clock::now();
  std::vector<Document> corpus = testing::RandomCorpus(1000, 2024);
  for (Document& d : SynthCorpus(SynthTemplate::kInvoice, 50, 5)) {
    corpus.push_back(std::move(d));
  }
  for (Document& d : SynthCorpus(SynthTemplate::kReceipt, 50, 5)) {
    corpus.push_back(std::move(d));
  }
  size_t checks = 0;
  std::vector<std::string> errors;
  const std::vector<TransformSpec> specs = testing::InvariantSpecs(99);
  for (const TransformSpec& spec : specs) {
    const Transform transform = MakeTransform(spec);
    for (const Document& doc : corpus) {
      const Document after = transform.Apply(doc);
      for (std::string& e : testing::CheckInvariants(spec, doc, after)) {
        errors.push_back(std::move(e));
      }
      if (!(transform.Apply(doc) == after)) {
        errors.push_back(spec.name + ": rerun differs on " + doc.doc_id);
      }
      ++checks;
    }
    for (std::string& e :
         testing::CheckOrderIndependence(spec, corpus, 7)) {
      errors.push_back(std::move(e));
    }
  }
  const double secs = Seconds(start);
  out.Require(errors.empty(), std::to_string(errors.size()) +
                                  " violations, first: " +
                                  (errors.empty() ? "" : errors.front()));
  out.Require(secs < 120.0, Format("took %.1f s", secs));
  out.detail = std::to_string(corpus.size()) + " documents x " +
               std::to_string(specs.size()) + " specs (" +
               std::to_string(checks) + " applications)" +
               Format(", %.1f s", secs) +
               (out.detail.empty() ? "" : " | " + out.detail);
  return out;
}

// ---- Statistical parameters ----

std::string Band(const std::string& name, int64_t hits, int64_t n, double p,
                 Outcome& out) {
  const double mean = static_cast<double>(n) * p;
  const double sigma = std::sqrt(mean * (1 - p));
  const bool ok = std::abs(static_cast<double>(hits) - mean) <= 3 * sigma;
  const std::string text =
      name + Format(" %.4f (band %.4f..%.4f)", static_cast<double>(hits) / n,
                    (mean - 3 * sigma) / n, (mean + 3 * sigma) / n);
  out.Require(ok, name + " outside 3 sigma");
  return text;
}

double StdDev(const std::vector<double>& xs) {
  double mean = 0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

Outcome StatisticalParameters() {
  Outcome out;
  // 25 pages of 400 words each: 10,000 words, one value per page.
  const std::vector<Document> corpus = testing::GridCorpus(25, 400, 77);
  std::vector<std::string> parts;

  const auto count_selected = [&](const TransformSpec& spec, bool dropped,
                                  bool neighbors_excluded) {
    const Transform t = MakeTransform(spec);
    int64_t hits = 0;
    int64_t eligible = 0;
    for (const Document& doc : corpus) {
      const Document after = t.Apply(doc);
      const std::vector<bool> neighbors = NeighborMask(doc, NeighborOptions{});
      for (size_t i = 1; i < doc.words.size(); ++i) {
        if (!neighbors_excluded || !neighbors[i]) ++eligible;
      }
      if (dropped) {
        hits += static_cast<int64_t>(doc.words.size() - after.words.size());
      } else {
        for (size_t i = 0; i < doc.words.size(); ++i) {
          if (after.words[i].text != doc.words[i].text) ++hits;
        }
      }
    }
    return std::pair<int64_t, int64_t>{hits, eligible};
  };

  const auto [drop_hits, drop_n] =
      count_selected(ResolveSpec({"bg_drop", json::object(), 1}), true, false);
  parts.push_back(Band("bg_drop", drop_hits, drop_n, 0.1, out));
  const auto [typo_hits, typo_n] =
      count_selected(ResolveSpec({"bg_typo", json::object(), 2}), false, false);
  parts.push_back(Band("bg_typo", typo_hits, typo_n, 0.1, out));
  const auto [adv_hits, adv_n] = count_selected(
      ResolveSpec({"bg_adversarial", json::object(), 3}), false, true);
  parts.push_back(Band("bg_adversarial", adv_hits, adv_n, 0.1, out));

  std::vector<double> shift;
  const Transform center = MakeTransform({"center_shift", json::object(), 4});
  std::vector<double> stretch;
  const Transform box = MakeTransform({"box_stretch", json::object(), 5});
  for (const Document& doc : corpus) {
    const Document c = center.Apply(doc);
    const Document b = box.Apply(doc);
    for (size_t i = 0; i < doc.words.size(); ++i) {
      const BoundingBox& o = doc.words[i].box;
      shift.push_back((c.words[i].box.CenterX() - o.CenterX()) / o.Width());
      shift.push_back((c.words[i].box.CenterY() - o.CenterY()) / o.Height());
      const BoundingBox& s = b.words[i].box;
      stretch.push_back((s.x1 - o.x1) / o.Width());
      stretch.push_back((s.x2 - o.x2) / o.Width());
      stretch.push_back((s.y1 - o.y1) / o.Height());
      stretch.push_back((s.y2 - o.y2) / o.Height());
    }
  }
  const double shift_std = StdDev(shift);
  const double stretch_std = StdDev(stretch);
  out.Require(std::abs(shift_std / 0.5 - 1) <= 0.05,
              Format("center_shift std %.4f", shift_std));
  out.Require(std::abs(stretch_std / 0.1 - 1) <= 0.05,
              Format("box_stretch std %.4f", stretch_std));
  parts.push_back(Format("center_shift std %.4f (0.475..0.525)", shift_std));
  parts.push_back(Format("box_stretch std %.4f (0.095..0.105)", stretch_std));

  std::string detail;
  for (const std::string& p : parts) detail += (detail.empty() ? "" : ", ") + p;
  out.detail = detail + (out.detail.empty() ? "" : " | " + out.detail);
  return out;
}

// ---- Typed generators ----

// Upper regularized incomplete gamma Q(a, x).
double GammaQ(double a, double x) {
  if (x <= 0) return 1.0;
  const double log_prefix = -x + a * std::log(x) - std::lgamma(a);
  if (x < a + 1) {
    double sum = 1.0 / a;
    double term = sum;
    for (int n = 1; n < 1000; ++n) {
      term *= x / (a + n);
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-15) break;
    }
    return 1.0 - sum * std::exp(log_prefix);
  }
  // Lentz continued fraction.
  double b = x + 1 - a;
  double c = 1e300;
  double d = 1 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -i * (i - a);
    b += 2;
    d = an * d + b;
    if (std::abs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::abs(c) < 1e-300) c = 1e-300;
    d = 1 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1) < 1e-15) break;
  }
  return std::exp(log_prefix) * h;
}

bool ValidDate(int year, int month, int day) {
  if (year < 2001 || year > 2021 || month < 1 || month > 12 || day < 1) {
    return false;
  }
  static const int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  const bool leap = year % 4 == 0 && (year % 100 != 0 || year % 400 == 0);
  return day <= kDays[month - 1] + (month == 2 && leap ? 1 : 0);
}

// Parses one of the four formats; returns the format index or -1.
int ParseDateBack(const std::string& s) {
  static const char* kMonths[] = {"January", "February", "March",
                                  "April",   "May",      "June",
                                  "July",    "August",   "September",
                                  "October", "November", "December"};
  static const std::regex kMdy(R"((\d{2})/(\d{2})/(\d{2}))");
  static const std::regex kYmd(R"((\d{2})-(\d{2})-(\d{2}))");
  static const std::regex kDayName(R"((\d{2})/([A-Za-z]+)/(\d{2}))");
  std::smatch m;
  if (std::regex_match(s, m, kMdy)) {
    return ValidDate(2000 + std::stoi(m[3]), std::stoi(m[1]), std::stoi(m[2]))
               ? 0
               : -1;
  }
  if (std::regex_match(s, m, kYmd)) {
    return ValidDate(2000 + std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3]))
               ? 1
               : -1;
  }
  if (std::regex_match(s, m, kDayName)) {
    const std::string name = m[2];
    for (int i = 0; i < 12; ++i) {
      const std::string full = kMonths[i];
      const int day = std::stoi(m[1]);
      const int year = 2000 + std::stoi(m[3]);
      if (name == full && ValidDate(year, i + 1, day)) return 2;
      if (name == full.substr(0, 3) && ValidDate(year, i + 1, day)) {
        // Only reached for abbreviations; "May" is caught as a full name.
        return 3;
      }
    }
  }
  return -1;
}

Outcome TypedGenerators() {
  Outcome out;
  constexpr int kSamples = 10000;
  Rng rng(Rng::DeriveSeed(2021, "acceptance", "typed"));

  std::map<int, int> formats;
  int bad_dates = 0;
  for (int i = 0; i < kSamples; ++i) {
    const int f = ParseDateBack(GenDate(rng));
    if (f < 0) ++bad_dates;
    ++formats[f];
  }
  out.Require(bad_dates == 0, std::to_string(bad_dates) + " unparseable dates");
  out.Require(formats[0] > 0 && formats[1] > 0 && formats[2] > 0 &&
                  formats[3] > 0,
              "a date format never appeared");

  std::vector<int> lengths(13, 0);
  int bad_numbers = 0;
  static const std::regex kDigits(R"([1-9]\d*)");
  for (int i = 0; i < kSamples; ++i) {
    const std::string s = GenNumber(rng);
    if (!std::regex_match(s, kDigits) || s.size() < 3 || s.size() > 12) {
      ++bad_numbers;
      continue;
    }
    ++lengths[s.size()];
  }
  double chi2 = 0;
  const double expected = kSamples / 10.0;
  for (int len = 3; len <= 12; ++len) {
    chi2 += (lengths[len] - expected) * (lengths[len] - expected) / expected;
  }
  const double p = GammaQ(4.5, chi2 / 2);
  out.Require(bad_numbers == 0, std::to_string(bad_numbers) + " bad numbers");
  out.Require(p > 0.001, Format("number length chi2 p=%.5f", p));

  static const std::regex kMoney(R"((\$?)(\d{1,3}(?:,\d{3})*)\.(\d{2}))");
  int bad_money = 0;
  for (int i = 0; i < kSamples; ++i) {
    const std::string s = GenMoney(rng);
    std::smatch m;
    if (!std::regex_match(s, m, kMoney)) {
      ++bad_money;
      continue;
    }
    std::string whole = m[2];
    whole.erase(std::remove(whole.begin(), whole.end(), ','), whole.end());
    const int64_t cents = std::stoll(whole) * 100 + std::stoll(m[3]);
    const auto parsed = ParseMoney(s);
    if (!parsed || *parsed != cents ||
        FormatMoney(cents, m[1].length() > 0) != s) {
      ++bad_money;
    }
  }
  out.Require(bad_money == 0, std::to_string(bad_money) + " bad money strings");

  out.detail = "dates ok " + std::to_string(kSamples - bad_dates) +
               "/10000 (formats " + std::to_string(formats[0]) + "/" +
               std::to_string(formats[1]) + "/" + std::to_string(formats[2]) +
               "/" + std::to_string(formats[3]) + ")" +
               Format(", number length chi2=%.2f p=%.4f", chi2, p) +
               ", money ok " + std::to_string(kSamples - bad_money) +
               "/10000" + (out.detail.empty() ? "" : " | " + out.detail);
  return out;
}

// ---- Metric oracle ----

Outcome MetricOracle() {
  Outcome out;
  const auto fields = testing::RandomDocFields();
  const auto docs = testing::RandomCorpus(100, 4242);
  Rng rng(4243);
  std::vector<ExtractionResult> preds;
  int pair_mismatch = 0;
  for (const Document& doc : docs) {
    preds.push_back(testing::RandomPrediction(doc, fields, rng));
    if (!(ScoreCorpus({preds.back()}, {doc}, fields) ==
          testing::BruteForceScore({preds.back()}, {doc}, fields))) {
      ++pair_mismatch;
    }
  }
  const CorpusScore got = ScoreCorpus(preds, docs, fields);
  const CorpusScore want = testing::BruteForceScore(preds, docs, fields);
  out.Require(pair_mismatch == 0,
              std::to_string(pair_mismatch) + " single pairs differ");
  out.Require(got == want, "corpus score differs");
  out.detail = "100 pairs, " + std::to_string(100 - pair_mismatch) +
               " exact per pair, corpus " + (got == want ? "exact" : "DIFF") +
               Format(" (macro F1 %.4f)", got.macro_f1);
  return out;
}

// ---- Post-processing oracle ----

Outcome PostprocessOracle() {
  Outcome out;
  std::vector<Document> docs = testing::RandomCorpus(50, 515);
  for (Document& d : SynthCorpus(SynthTemplate::kReceipt, 50, 516)) {
    docs.push_back(std::move(d));
  }
  const auto fields = testing::RandomDocFields();
  Rng rng(517);
  int same = 0;
  int predicted = 0;
  for (const Document& doc : docs) {
    const TokenScores scores =
        testing::RandomScores(doc, fields.size(), kDefaultScoreThreshold, rng);
    const ExtractionResult got =
        Postprocess(scores, doc, fields, kDefaultScoreThreshold);
    const ExtractionResult want = testing::BruteForcePostprocess(
        scores, doc, fields, kDefaultScoreThreshold);
    if (got.values == want.values) ++same;
    predicted += static_cast<int>(got.values.size());
  }
  out.Require(same == static_cast<int>(docs.size()),
              std::to_string(docs.size() - same) + " documents differ");
  out.detail = std::to_string(same) + "/" + std::to_string(docs.size()) +
               " documents exact (" + std::to_string(predicted) +
               " field predictions)";
  return out;
}

// ---- Directional robustness ----

double MacroF1(const std::vector<Document>& docs,
               const std::vector<FieldConfig>& fields) {
  BaselineExtractor extractor(fields);
  std::vector<ExtractionResult> preds;
  for (const Document& doc : docs) preds.push_back(extractor.Extract(doc));
  return ScoreCorpus(preds, docs, fields).macro_f1;
}

std::vector<Document> ApplyAll(const std::vector<Document>& docs,
                               const std::string& name) {
  const Transform t = MakeTransform({name, json::object(), 11});
  std::vector<Document> out;
  for (const Document& doc : docs) out.push_back(t.Apply(doc));
  return out;
}

Outcome DirectionalRobustness() {
  Outcome out;
  const auto start = Clock::now();
  const auto docs = SynthCorpus(SynthTemplate::kInvoice, 200, 1234);
  const auto fields = InvoiceFields();
  const double clean = MacroF1(docs, fields);
  const double keys = MacroF1(ApplyAll(docs, "key_drop"), fields);
  const double neighbors = MacroF1(ApplyAll(docs, "neighbor_bg_drop"), fields);
  const double values = MacroF1(ApplyAll(docs, "value_text_augment"), fields);
  const double secs = Seconds(start);
  out.Require(clean >= 0.95, Format("clean %.4f < 0.95", clean));
  out.Require(clean - keys >= 0.3, Format("key_drop drop %.4f", clean - keys));
  out.Require(clean - neighbors >= 0.3,
              Format("neighbor_bg_drop drop %.4f", clean - neighbors));
  out.Require(std::abs(values - clean) <= 0.05,
              Format("value_text_augment moved %.4f", values - clean));
  out.Require(secs < 300, Format("took %.1f s", secs));
  out.detail = Format("clean %.4f, key_drop %.4f, ", clean, keys) +
               Format("neighbor_bg_drop %.4f, value_text_augment %.4f, ",
                      neighbors, values) +
               Format("%.2f s", secs) +
               (out.detail.empty() ? "" : " | " + out.detail);
  return out;
}

// ---- Full sweep ----

Outcome FullSweep() {
  Outcome out;
  const auto docs = SynthCorpus(SynthTemplate::kInvoice, 50, 77);
  const auto fields = InvoiceFields();
  SweepPlan plan;
  plan.k = 2;
  plan.seed = 2024;
  const ExtractorFactory factory = [fields] {
    return std::make_unique<BaselineExtractor>(fields);
  };
  const auto start = Clock::now();
  const RobustnessReport first = RunSweep(plan, docs, fields, factory);
  const double secs = Seconds(start);
  const RobustnessReport second = RunSweep(plan, docs, fields, factory);
  const std::string a = ReportToJson(first).dump(2) + ReportTable(first);
  const std::string b = ReportToJson(second).dump(2) + ReportTable(second);
  out.Require(first.rows.size() == 91, "row count " +
                                           std::to_string(first.rows.size()));
  out.Require(a == b, "reports differ between runs");
  out.Require(secs < 600, Format("took %.1f s", secs));
  out.detail = std::to_string(first.rows.size()) + " chains on 50 documents" +
               Format(" in %.2f s, ", secs) +
               (a == b ? "byte-identical" : "DIFFERENT") + " (" +
               std::to_string(a.size()) + " bytes), worst " +
               first.rows.front().chain +
               Format(" delta %.4f", first.rows.front().delta) +
               (out.detail.empty() ? "" : " | " + out.detail);
  return out;
}

}  // namespace
}  // namespace formattack

int main() {
  using formattack::Outcome;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> checks =
      {
          {"combination counts", formattack::CombinationCounts},
          {"invariant suite", formattack::InvariantSuite},
          {"statistical parameters", formattack::StatisticalParameters},
          {"typed generator oracles", formattack::TypedGenerators},
          {"metric oracle", formattack::MetricOracle},
          {"post-processing oracle", formattack::PostprocessOracle},
          {"directional robustness", formattack::DirectionalRobustness},
          {"full k=2 sweep", formattack::FullSweep},
      };
  int failed = 0;
  for (const auto& [name, check] : checks) {
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    if (!outcome.pass) ++failed;
    std::printf("[%s] %s: %s\n", outcome.pass ? "PASS" : "FAIL", name.c_str(),
                outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(checks.size()) - failed, checks.size());
  return failed == 0 ? 0 : 1;
}
