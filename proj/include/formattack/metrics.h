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

#ifndef FORMATTACK_METRICS_H_
#define FORMATTACK_METRICS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "formattack/document.h"
#include "formattack/extract.h"
#include "json.hpp"

namespace formattack {

struct FieldScore {
  std::string field;
  int64_t tp = 0;
  int64_t fp = 0;
  int64_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  friend bool operator==(const FieldScore&, const FieldScore&) = default;
};

// Fills precision, recall and f1 from the counts (0 on empty denominators).
FieldScore MakeFieldScore(std::string field, int64_t tp, int64_t fp,
                          int64_t fn);

struct CorpusScore {
  // In configured field order.
  std::vector<FieldScore> per_field;
  // Unweighted means over per_field.
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  int64_t docs_failed = 0;

  friend bool operator==(const CorpusScore&, const CorpusScore&) = default;
};

CorpusScore MakeCorpusScore(std::vector<FieldScore> per_field,
                            int64_t docs_failed = 0);

// Trims and collapses whitespace runs to one space.
std::string NormalizeWhitespace(std::string_view text);

struct ScoreOptions {
  bool case_sensitive = true;
};

// Exact-match scoring. preds[i] must belong to truths[i] (same doc_id),
// otherwise ValidationError. Per document and field: equal prediction is a
// tp; an unequal one is an fp and an fn; a prediction with no truth is an fp;
// a missing prediction with a truth is an fn. Failed documents predict
// nothing. Empty predictions count as missing.
CorpusScore ScoreCorpus(const std::vector<ExtractionResult>& preds,
                        const std::vector<Document>& truths,
                        const std::vector<FieldConfig>& fields,
                        const ScoreOptions& options = {});

struct ReportRow {
  // "original" or transform names joined with '+'.
  std::string chain;
  // Resolved transform specs as written by ChainToJson.
  nlohmann::json specs = nlohmann::json::array();
  CorpusScore score;
  double delta = 0.0;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct RobustnessReport {
  uint64_t seed = 0;
  std::vector<std::string> fields;
  ReportRow original;
  // Ascending by delta; ties keep input order.
  std::vector<ReportRow> rows;

  friend bool operator==(const RobustnessReport&,
                         const RobustnessReport&) = default;
};

// Computes deltas against `original` and sorts. Every row must score the same
// fields as the original (ValidationError otherwise).
RobustnessReport BuildReport(ReportRow original,
                             std::vector<ReportRow> transformed,
                             uint64_t seed);

nlohmann::json RowToJson(const ReportRow& row);
ReportRow RowFromJson(const nlohmann::json& json);
nlohmann::json ReportToJson(const RobustnessReport& report);
RobustnessReport ReportFromJson(const nlohmann::json& json);

// CSV with one line per chain, original first: chain, per-field F1, macro
// precision/recall/F1, delta, failed documents. `top` > 0 keeps only the
// first `top` transformed rows.
std::string ReportTable(const RobustnessReport& report, size_t top = 0);

}  // namespace formattack

#endif  // FORMATTACK_METRICS_H_
