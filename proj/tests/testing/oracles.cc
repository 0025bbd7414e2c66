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

#include "oracles.h"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <string>

#include "formattack/typedgen.h"

namespace formattack::testing {
namespace {

std::string Squash(const std::string& text) {
  std::istringstream in(text);
  std::string token;
  std::string out;
  while (in >> token) out += (out.empty() ? "" : " ") + token;
  return out;
}

bool Adjacent(const Document& doc, int i, int j, double max_gap) {
  if (j == i + 1 || i == j + 1) return true;
  const BoundingBox& a = doc.words[i].box;
  const BoundingBox& b = doc.words[j].box;
  const bool same_line = std::min(a.y2, b.y2) > std::max(a.y1, b.y1);
  const BoundingBox& left = a.x1 <= b.x1 ? a : b;
  const BoundingBox& right = a.x1 <= b.x1 ? b : a;
  // Negative when the boxes overlap horizontally.
  const double gap = right.x1 - std::min(left.x2, right.x2);
  return same_line && gap < max_gap;
}

}  // namespace

CorpusScore BruteForceScore(const std::vector<ExtractionResult>& preds,
                            const std::vector<Document>& truths,
                            const std::vector<FieldConfig>& fields) {
  struct Counts {
    int64_t tp = 0, fp = 0, fn = 0;
  };
  std::map<std::string, Counts> counts;
  int64_t failed = 0;
  for (size_t d = 0; d < truths.size(); ++d) {
    if (preds[d].failed) ++failed;
    for (const FieldConfig& field : fields) {
      std::string want;
      bool has_want = false;
      for (const FieldAnnotation& a : truths[d].annotations) {
        if (a.field == field.name) {
          want = Squash(a.value_text);
          has_want = true;
        }
      }
      std::string got;
      if (!preds[d].failed && preds[d].values.count(field.name) > 0) {
        got = Squash(preds[d].values.at(field.name));
      }
      const bool has_got = !got.empty();
      Counts& c = counts[field.name];
      if (has_got && has_want && got == want) c.tp += 1;
      if (has_got && !(has_want && got == want)) c.fp += 1;
      if (has_want && !(has_got && got == want)) c.fn += 1;
    }
  }
  CorpusScore score;
  score.docs_failed = failed;
  for (const FieldConfig& field : fields) {
    const Counts& c = counts[field.name];
    FieldScore f;
    f.field = field.name;
    f.tp = c.tp;
    f.fp = c.fp;
    f.fn = c.fn;
    f.precision = c.tp + c.fp > 0 ? static_cast<double>(c.tp) /
                                        static_cast<double>(c.tp + c.fp)
                                  : 0.0;
    f.recall = c.tp + c.fn > 0 ? static_cast<double>(c.tp) /
                                     static_cast<double>(c.tp + c.fn)
                               : 0.0;
    f.f1 = f.precision + f.recall > 0
               ? 2.0 * f.precision * f.recall / (f.precision + f.recall)
               : 0.0;
    score.per_field.push_back(f);
  }
  double p = 0, r = 0, f1 = 0;
  for (const FieldScore& f : score.per_field) {
    p += f.precision;
    r += f.recall;
    f1 += f.f1;
  }
  if (!fields.empty()) {
    const double n = static_cast<double>(fields.size());
    score.macro_precision = p / n;
    score.macro_recall = r / n;
    score.macro_f1 = f1 / n;
  }
  return score;
}

ExtractionResult BruteForcePostprocess(const TokenScores& scores,
                                       const Document& doc,
                                       const std::vector<FieldConfig>& fields,
                                       double threshold) {
  const int n = static_cast<int>(doc.words.size());
  std::vector<double> per_char;
  for (const Word& w : doc.words) {
    const size_t chars = SplitCodePoints(w.text).size();
    if (chars > 0) per_char.push_back(w.box.Width() / chars);
  }
  std::sort(per_char.begin(), per_char.end());
  const double max_gap = per_char.empty() ? 0.0 : per_char[per_char.size() / 2];

  // Label of each word: first column holding the row maximum.
  std::vector<int> label(n);
  for (int i = 0; i < n; ++i) {
    const std::vector<double>& row = scores.rows[i];
    int arg = 0;
    for (int c = 1; c < static_cast<int>(row.size()); ++c) {
      if (row[c] > row[arg]) arg = c;
    }
    label[i] = arg;
  }

  ExtractionResult result;
  result.doc_id = doc.doc_id;
  for (int f = 0; f < static_cast<int>(fields.size()); ++f) {
    std::vector<bool> hit(n, false);
    int best = -1;
    for (int i = 0; i < n; ++i) {
      hit[i] = label[i] == f && scores.rows[i][f] > threshold;
      if (hit[i] && (best < 0 || scores.rows[i][f] > scores.rows[best][f])) {
        best = i;
      }
    }
    if (best < 0) continue;
    if (!fields[f].multi_word) {
      result.values[fields[f].name] = doc.words[best].text;
      continue;
    }
    std::vector<bool> seen(n, false);
    std::deque<int> queue = {best};
    seen[best] = true;
    while (!queue.empty()) {
      const int i = queue.front();
      queue.pop_front();
      for (int j = 0; j < n; ++j) {
        if (hit[j] && !seen[j] && Adjacent(doc, i, j, max_gap)) {
          seen[j] = true;
          queue.push_back(j);
        }
      }
    }
    std::string text;
    for (int i = 0; i < n; ++i) {
      if (seen[i]) text += (text.empty() ? "" : " ") + doc.words[i].text;
    }
    result.values[fields[f].name] = text;
  }
  return result;
}

TokenScores RandomScores(const Document& doc, size_t num_fields,
                         double threshold, Rng& rng) {
  TokenScores scores;
  const double levels[] = {0.0, threshold, threshold + 0.05, 0.5, 0.9};
  for (size_t i = 0; i < doc.words.size(); ++i) {
    std::vector<double> row(num_fields + 1);
    for (double& v : row) {
      v = rng.Bernoulli(0.5) ? levels[rng.UniformInt(0, 4)]
                             : rng.Uniform(0.0, 0.3);
    }
    scores.rows.push_back(row);
  }
  return scores;
}

ExtractionResult RandomPrediction(const Document& truth,
                                  const std::vector<FieldConfig>& fields,
                                  Rng& rng) {
  ExtractionResult pred;
  pred.doc_id = truth.doc_id;
  pred.failed = rng.Bernoulli(0.05);
  for (const FieldConfig& field : fields) {
    const FieldAnnotation* a = truth.FindAnnotation(field.name);
    const std::string right = a ? a->value_text : std::string("x");
    switch (rng.UniformInt(0, 5)) {
      case 0:
        break;
      case 1:
        pred.values[field.name] = right;
        break;
      case 2:
        pred.values[field.name] = "  " + right + "\t";
        break;
      case 3:
        pred.values[field.name] = right + "!";
        break;
      case 4:
        pred.values[field.name] = rng.Bernoulli(0.5) ? "" : " ";
        break;
      default: {
        std::string spaced = right;
        std::replace(spaced.begin(), spaced.end(), ' ', '\n');
        pred.values[field.name] = spaced;
      }
    }
  }
  return pred;
}

std::vector<FieldConfig> RandomDocFields() {
  return {{"invoice_number", DataType::kNumber, false, {}},
          {"invoice_date", DataType::kDate, false, {}},
          {"total_amount", DataType::kMoney, false, {}},
          {"total_tax", DataType::kMoney, false, {}},
          {"company", DataType::kFreeText, true, {}},
          {"address", DataType::kFreeText, true, {}}};
}

}  // namespace formattack::testing
