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

#include "formattack/extract.h"

#include <algorithm>
#include <numeric>

#include "formattack/errors.h"
#include "formattack/registry.h"
#include "formattack/typedgen.h"

namespace formattack {
namespace {

using nlohmann::json;

FieldConfig Field(std::string name, DataType type, bool multi_word,
                  std::vector<std::string> keys) {
  return {std::move(name), type, multi_word, std::move(keys)};
}

int Find(std::vector<int>& parent, int i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

double MedianCharWidth(const Document& doc) {
  std::vector<double> widths;
  for (const Word& w : doc.words) {
    const size_t chars = SplitCodePoints(w.text).size();
    if (chars > 0) widths.push_back(w.box.Width() / static_cast<double>(chars));
  }
  if (widths.empty()) return 0.0;
  auto mid = widths.begin() + widths.size() / 2;
  std::nth_element(widths.begin(), mid, widths.end());
  return *mid;
}

bool SameLineAndClose(const BoundingBox& a, const BoundingBox& b,
                      double max_gap) {
  const double v_overlap = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  if (v_overlap <= 0.0) return false;
  const double h_gap = std::max(a.x1, b.x1) - std::min(a.x2, b.x2);
  return h_gap < max_gap;
}

}  // namespace

std::vector<FieldConfig> InvoiceFields() {
  return {
      Field("invoice_number", DataType::kNumber, false,
            {"Invoice No.", "Invoice Number", "INV #", "Invoice #"}),
      Field("purchase_order", DataType::kNumber, false,
            {"PO Number", "Purchase Order", "P.O. No.", "PO #"}),
      Field("invoice_date", DataType::kDate, false,
            {"Invoice Date", "Date of Issue", "Issue Date"}),
      Field("due_date", DataType::kDate, false,
            {"Due Date", "Payment Due", "Due By"}),
      Field("amount_due", DataType::kMoney, false,
            {"Amount Due", "Balance Due", "Amount Payable"}),
      Field("total_amount", DataType::kMoney, false,
            {"Total", "Invoice Total", "Total Amount", "Grand Total"}),
      Field("total_tax", DataType::kMoney, false,
            {"Tax", "Sales Tax", "VAT", "Tax Amount"}),
  };
}

std::vector<FieldConfig> ReceiptFields() {
  return {
      Field("company", DataType::kFreeText, true, {}),
      Field("address", DataType::kFreeText, true, {}),
      Field("date", DataType::kDate, false, {"Date"}),
      Field("total", DataType::kMoney, false,
            {"Total", "Grand Total", "Total Amount", "Net Total"}),
  };
}

std::vector<FieldConfig> ParseFieldsConfig(const json& config) {
  const json* list = &config;
  if (config.is_object()) {
    if (!config.contains("fields")) {
      throw ConfigError("fields config needs a 'fields' list");
    }
    list = &config["fields"];
  }
  if (!list->is_array()) throw ConfigError("fields must be a list");
  std::vector<FieldConfig> fields;
  for (const json& entry : *list) {
    if (!entry.is_object() || !entry.contains("name") ||
        !entry.contains("data_type")) {
      throw ConfigError("field entries need 'name' and 'data_type'");
    }
    FieldConfig field;
    field.name = entry["name"].get<std::string>();
    try {
      field.data_type = ParseDataType(entry["data_type"].get<std::string>());
    } catch (const ParseError& e) {
      throw ConfigError(e.what());
    }
    field.multi_word = entry.value("multi_word", false);
    field.key_phrases =
        entry.value("key_phrases", std::vector<std::string>{});
    for (const FieldConfig& seen : fields) {
      if (seen.name == field.name) {
        throw ConfigError("duplicate field '" + field.name + "'");
      }
    }
    fields.push_back(std::move(field));
  }
  return fields;
}

std::vector<FieldConfig> LoadFieldsConfig(const std::string& selector) {
  if (selector == "invoice") return InvoiceFields();
  if (selector == "receipt") return ReceiptFields();
  return ParseFieldsConfig(LoadJsonFile(selector));
}

ExtractionResult Postprocess(const TokenScores& scores, const Document& doc,
                             const std::vector<FieldConfig>& fields,
                             double threshold) {
  const size_t n = doc.words.size();
  const size_t classes = fields.size() + 1;
  if (scores.rows.size() != n) {
    throw ProtocolError("score matrix has " + std::to_string(scores.rows.size()) +
                        " rows for " + std::to_string(n) + " words");
  }
  std::vector<size_t> predicted(n);
  for (size_t i = 0; i < n; ++i) {
    const std::vector<double>& row = scores.rows[i];
    if (row.size() != classes) {
      throw ProtocolError("score row " + std::to_string(i) + " has " +
                          std::to_string(row.size()) + " entries, expected " +
                          std::to_string(classes));
    }
    predicted[i] = static_cast<size_t>(
        std::max_element(row.begin(), row.end()) - row.begin());
  }

  ExtractionResult result;
  result.doc_id = doc.doc_id;
  const double max_gap = MedianCharWidth(doc);
  for (size_t f = 0; f < fields.size(); ++f) {
    std::vector<int> candidates;
    int best = -1;
    for (size_t i = 0; i < n; ++i) {
      if (predicted[i] != f || !(scores.rows[i][f] > threshold)) continue;
      candidates.push_back(static_cast<int>(i));
      if (best < 0 || scores.rows[i][f] > scores.rows[best][f]) {
        best = static_cast<int>(i);
      }
    }
    if (best < 0) continue;
    if (!fields[f].multi_word) {
      result.values[fields[f].name] = doc.words[best].text;
      continue;
    }
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    for (size_t a = 0; a < candidates.size(); ++a) {
      for (size_t b = a + 1; b < candidates.size(); ++b) {
        const int i = candidates[a];
        const int j = candidates[b];
        if (j == i + 1 ||
            SameLineAndClose(doc.words[i].box, doc.words[j].box, max_gap)) {
          parent[Find(parent, j)] = Find(parent, i);
        }
      }
    }
    const int root = Find(parent, best);
    std::vector<int> group;
    for (int i : candidates) {
      if (Find(parent, i) == root) group.push_back(i);
    }
    result.values[fields[f].name] = JoinWords(doc, group);
  }
  return result;
}

ExtractionResult TruthExtractor::Extract(const Document& doc) {
  ExtractionResult result;
  result.doc_id = doc.doc_id;
  for (const FieldAnnotation& ann : doc.annotations) {
    result.values[ann.field] = ann.value_text;
  }
  return result;
}

}  // namespace formattack
