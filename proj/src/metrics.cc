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

#include "formattack/metrics.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <optional>

#include "formattack/errors.h"
#include "formattack/lexicon.h"

namespace formattack {
namespace {

using nlohmann::json;

double Ratio(int64_t num, int64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::string Canonical(std::string_view text, const ScoreOptions& options) {
  std::string out = NormalizeWhitespace(text);
  return options.case_sensitive ? out : AsciiLower(out);
}

json ScoreToJson(const CorpusScore& score) {
  json fields = json::array();
  for (const FieldScore& f : score.per_field) {
    fields.push_back({{"field", f.field},
                      {"tp", f.tp},
                      {"fp", f.fp},
                      {"fn", f.fn},
                      {"precision", f.precision},
                      {"recall", f.recall},
                      {"f1", f.f1}});
  }
  return {{"per_field", fields},
          {"macro_precision", score.macro_precision},
          {"macro_recall", score.macro_recall},
          {"macro_f1", score.macro_f1},
          {"docs_failed", score.docs_failed}};
}

CorpusScore ScoreFromJson(const json& j) {
  CorpusScore score;
  for (const json& f : j.at("per_field")) {
    score.per_field.push_back(FieldScore{
        f.at("field").get<std::string>(), f.at("tp").get<int64_t>(),
        f.at("fp").get<int64_t>(), f.at("fn").get<int64_t>(),
        f.at("precision").get<double>(), f.at("recall").get<double>(),
        f.at("f1").get<double>()});
  }
  score.macro_precision = j.at("macro_precision").get<double>();
  score.macro_recall = j.at("macro_recall").get<double>();
  score.macro_f1 = j.at("macro_f1").get<double>();
  score.docs_failed = j.at("docs_failed").get<int64_t>();
  return score;
}

std::vector<std::string> FieldNames(const CorpusScore& score) {
  std::vector<std::string> names;
  for (const FieldScore& f : score.per_field) names.push_back(f.field);
  return names;
}

std::string Fixed(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", value);
  return buf;
}

void AppendRow(std::string& out, const ReportRow& row, bool with_delta) {
  out += row.chain;
  for (const FieldScore& f : row.score.per_field) out += "," + Fixed(f.f1);
  out += "," + Fixed(row.score.macro_precision);
  out += "," + Fixed(row.score.macro_recall);
  out += "," + Fixed(row.score.macro_f1);
  out += "," + (with_delta ? Fixed(row.delta) : Fixed(0.0));
  out += "," + std::to_string(row.score.docs_failed) + "\n";
}

}  // namespace

FieldScore MakeFieldScore(std::string field, int64_t tp, int64_t fp,
                          int64_t fn) {
  FieldScore s{std::move(field), tp, fp, fn};
  s.precision = Ratio(tp, tp + fp);
  s.recall = Ratio(tp, tp + fn);
  const double sum = s.precision + s.recall;
  s.f1 = sum == 0.0 ? 0.0 : 2.0 * s.precision * s.recall / sum;
  return s;
}

CorpusScore MakeCorpusScore(std::vector<FieldScore> per_field,
                            int64_t docs_failed) {
  CorpusScore score;
  score.per_field = std::move(per_field);
  score.docs_failed = docs_failed;
  if (score.per_field.empty()) return score;
  for (const FieldScore& f : score.per_field) {
    score.macro_precision += f.precision;
    score.macro_recall += f.recall;
    score.macro_f1 += f.f1;
  }
  const double n = static_cast<double>(score.per_field.size());
  score.macro_precision /= n;
  score.macro_recall /= n;
  score.macro_f1 /= n;
  return score;
}

std::string NormalizeWhitespace(std::string_view text) {
  std::string out;
  bool pending_space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }
  return out;
}

CorpusScore ScoreCorpus(const std::vector<ExtractionResult>& preds,
                        const std::vector<Document>& truths,
                        const std::vector<FieldConfig>& fields,
                        const ScoreOptions& options) {
  if (preds.size() != truths.size()) {
    throw ValidationError("prediction count " + std::to_string(preds.size()) +
                          " does not match document count " +
                          std::to_string(truths.size()));
  }
  std::vector<int64_t> tp(fields.size()), fp(fields.size()),
      fn(fields.size());
  int64_t failed = 0;
  for (size_t d = 0; d < truths.size(); ++d) {
    const ExtractionResult& pred = preds[d];
    const Document& truth = truths[d];
    if (pred.doc_id != truth.doc_id) {
      throw ValidationError("prediction for '" + pred.doc_id +
                            "' is aligned with document '" + truth.doc_id +
                            "'");
    }
    if (pred.failed) ++failed;
    for (size_t f = 0; f < fields.size(); ++f) {
      std::optional<std::string> predicted;
      if (!pred.failed) {
        if (auto it = pred.values.find(fields[f].name);
            it != pred.values.end()) {
          std::string value = Canonical(it->second, options);
          if (!value.empty()) predicted = std::move(value);
        }
      }
      std::optional<std::string> expected;
      if (const FieldAnnotation* a = truth.FindAnnotation(fields[f].name)) {
        expected = Canonical(a->value_text, options);
      }
      if (predicted && expected) {
        if (*predicted == *expected) {
          ++tp[f];
        } else {
          ++fp[f];
          ++fn[f];
        }
      } else if (predicted) {
        ++fp[f];
      } else if (expected) {
        ++fn[f];
      }
    }
  }
  std::vector<FieldScore> per_field;
  for (size_t f = 0; f < fields.size(); ++f) {
    per_field.push_back(MakeFieldScore(fields[f].name, tp[f], fp[f], fn[f]));
  }
  return MakeCorpusScore(std::move(per_field), failed);
}

RobustnessReport BuildReport(ReportRow original,
                             std::vector<ReportRow> transformed,
                             uint64_t seed) {
  RobustnessReport report;
  report.seed = seed;
  report.fields = FieldNames(original.score);
  original.delta = 0.0;
  for (ReportRow& row : transformed) {
    if (FieldNames(row.score) != report.fields) {
      throw ValidationError("chain '" + row.chain +
                            "' was scored on a different field set");
    }
    row.delta = row.score.macro_f1 - original.score.macro_f1;
  }
  std::stable_sort(
      transformed.begin(), transformed.end(),
      [](const ReportRow& a, const ReportRow& b) { return a.delta < b.delta; });
  report.original = std::move(original);
  report.rows = std::move(transformed);
  return report;
}

json RowToJson(const ReportRow& row) {
  return {{"chain", row.chain},
          {"specs", row.specs},
          {"score", ScoreToJson(row.score)},
          {"delta", row.delta}};
}

ReportRow RowFromJson(const json& j) {
  ReportRow row;
  row.chain = j.at("chain").get<std::string>();
  row.specs = j.at("specs");
  row.score = ScoreFromJson(j.at("score"));
  row.delta = j.at("delta").get<double>();
  return row;
}

json ReportToJson(const RobustnessReport& report) {
  json rows = json::array();
  for (const ReportRow& row : report.rows) rows.push_back(RowToJson(row));
  return {{"seed", report.seed},
          {"fields", report.fields},
          {"original", RowToJson(report.original)},
          {"rows", rows}};
}

RobustnessReport ReportFromJson(const json& j) {
  try {
    RobustnessReport report;
    report.seed = j.at("seed").get<uint64_t>();
    report.fields = j.at("fields").get<std::vector<std::string>>();
    report.original = RowFromJson(j.at("original"));
    for (const json& row : j.at("rows")) {
      report.rows.push_back(RowFromJson(row));
    }
    return report;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
}

std::string ReportTable(const RobustnessReport& report, size_t top) {
  std::string out = "chain";
  for (const std::string& f : report.fields) out += "," + f + "_f1";
  out += ",macro_precision,macro_recall,macro_f1,delta,docs_failed\n";
  AppendRow(out, report.original, false);
  const size_t n =
      top == 0 ? report.rows.size() : std::min(top, report.rows.size());
  for (size_t i = 0; i < n; ++i) AppendRow(out, report.rows[i], true);
  return out;
}

}  // namespace formattack
