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

#include "formattack/document.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_set>

#include "formattack/errors.h"

namespace formattack {
namespace {

[[noreturn]] void Fail(const Document& doc, const std::string& rule) {
  throw ValidationError("document '" + doc.doc_id + "': " + rule);
}

void CheckIndices(const Document& doc, const FieldAnnotation& ann,
                  const std::vector<int>& indices, const char* list_name) {
  std::unordered_set<int> seen;
  const int n = static_cast<int>(doc.words.size());
  for (int index : indices) {
    if (index < 0 || index >= n) {
      Fail(doc, "field '" + ann.field + "': " + list_name + " index " +
                    std::to_string(index) + " out of range [0, " +
                    std::to_string(n) + ")");
    }
    if (!seen.insert(index).second) {
      Fail(doc, "field '" + ann.field + "': duplicate index " +
                    std::to_string(index) + " in " + list_name);
    }
  }
}

}  // namespace

BoundingBox Union(const BoundingBox& a, const BoundingBox& b) {
  return {std::min(a.x1, b.x1), std::min(a.y1, b.y1), std::max(a.x2, b.x2),
          std::max(a.y2, b.y2)};
}

std::string_view DataTypeName(DataType type) {
  switch (type) {
    case DataType::kDate:
      return "date";
    case DataType::kNumber:
      return "number";
    case DataType::kMoney:
      return "money";
    case DataType::kFreeText:
      return "free_text";
  }
  return "free_text";
}

DataType ParseDataType(std::string_view name) {
  if (name == "date") return DataType::kDate;
  if (name == "number") return DataType::kNumber;
  if (name == "money") return DataType::kMoney;
  if (name == "free_text") return DataType::kFreeText;
  throw ParseError("unknown data_type '" + std::string(name) + "'");
}

const FieldAnnotation* Document::FindAnnotation(std::string_view field) const {
  for (const FieldAnnotation& ann : annotations) {
    if (ann.field == field) return &ann;
  }
  return nullptr;
}

std::vector<WordRole> WordRoles(const Document& doc) {
  std::vector<WordRole> roles(doc.words.size(), WordRole::kBackground);
  for (const FieldAnnotation& ann : doc.annotations) {
    for (int i : ann.key_indices) {
      if (roles[i] == WordRole::kBackground) roles[i] = WordRole::kKey;
    }
  }
  for (const FieldAnnotation& ann : doc.annotations) {
    for (int i : ann.value_indices) roles[i] = WordRole::kValue;
  }
  return roles;
}

std::string JoinWords(const Document& doc, const std::vector<int>& indices) {
  std::string out;
  for (size_t k = 0; k < indices.size(); ++k) {
    if (k > 0) out += ' ';
    out += doc.words[indices[k]].text;
  }
  return out;
}

void ValidateDocument(const Document& doc) {
  if (doc.doc_id.empty()) Fail(doc, "empty doc_id");
  if (!std::isfinite(doc.page_width) || !std::isfinite(doc.page_height) ||
      doc.page_width <= 0.0 || doc.page_height <= 0.0) {
    Fail(doc, "page size must be positive and finite");
  }
  for (size_t i = 0; i < doc.words.size(); ++i) {
    const Word& w = doc.words[i];
    const std::string where = "word " + std::to_string(i);
    if (w.text.empty()) Fail(doc, where + ": empty text");
    if (w.text.find_first_of("\r\n") != std::string::npos) {
      Fail(doc, where + ": text contains a newline");
    }
    const BoundingBox& b = w.box;
    if (!std::isfinite(b.x1) || !std::isfinite(b.y1) || !std::isfinite(b.x2) ||
        !std::isfinite(b.y2)) {
      Fail(doc, where + ": non-finite coordinate");
    }
    if (b.x1 > b.x2 || b.y1 > b.y2) Fail(doc, where + ": inverted box");
    if (b.x1 < 0.0 || b.y1 < 0.0 || b.x2 > doc.page_width ||
        b.y2 > doc.page_height) {
      Fail(doc, where + ": box outside the page");
    }
  }

  std::set<std::string> fields;
  std::unordered_set<int> value_owner;
  for (const FieldAnnotation& ann : doc.annotations) {
    if (ann.field.empty()) Fail(doc, "annotation with empty field name");
    if (!fields.insert(ann.field).second) {
      Fail(doc, "field '" + ann.field + "' annotated more than once");
    }
    if (ann.value_indices.empty()) {
      Fail(doc, "field '" + ann.field + "': value_indices is empty");
    }
    CheckIndices(doc, ann, ann.key_indices, "key_indices");
    CheckIndices(doc, ann, ann.value_indices, "value_indices");
    for (int k : ann.key_indices) {
      if (std::find(ann.value_indices.begin(), ann.value_indices.end(), k) !=
          ann.value_indices.end()) {
        Fail(doc, "field '" + ann.field + "': index " + std::to_string(k) +
                      " is both key and value");
      }
    }
    for (int v : ann.value_indices) {
      if (!value_owner.insert(v).second) {
        Fail(doc, "word " + std::to_string(v) +
                      " is a value of more than one field");
      }
    }
    const std::string joined = JoinWords(doc, ann.value_indices);
    if (joined != ann.value_text) {
      Fail(doc, "field '" + ann.field + "': value_text '" + ann.value_text +
                    "' does not match value words '" + joined + "'");
    }
  }
}

Document KeepWords(const Document& doc, const std::vector<bool>& keep) {
  Document out;
  out.doc_id = doc.doc_id;
  out.page_width = doc.page_width;
  out.page_height = doc.page_height;
  std::vector<int> new_index(doc.words.size(), -1);
  for (size_t i = 0; i < doc.words.size(); ++i) {
    if (!keep[i]) continue;
    new_index[i] = static_cast<int>(out.words.size());
    out.words.push_back(doc.words[i]);
  }
  out.annotations.reserve(doc.annotations.size());
  for (const FieldAnnotation& ann : doc.annotations) {
    FieldAnnotation mapped = ann;
    mapped.key_indices.clear();
    for (int k : ann.key_indices) {
      if (new_index[k] >= 0) mapped.key_indices.push_back(new_index[k]);
    }
    for (int& v : mapped.value_indices) v = new_index[v];
    out.annotations.push_back(std::move(mapped));
  }
  return out;
}

Document PermuteWords(const Document& doc, const std::vector<int>& order) {
  Document out;
  out.doc_id = doc.doc_id;
  out.page_width = doc.page_width;
  out.page_height = doc.page_height;
  std::vector<int> new_index(doc.words.size());
  out.words.reserve(order.size());
  for (size_t j = 0; j < order.size(); ++j) {
    out.words.push_back(doc.words[order[j]]);
    new_index[order[j]] = static_cast<int>(j);
  }
  out.annotations = doc.annotations;
  for (FieldAnnotation& ann : out.annotations) {
    for (int& k : ann.key_indices) k = new_index[k];
    for (int& v : ann.value_indices) v = new_index[v];
  }
  return out;
}

}  // namespace formattack
