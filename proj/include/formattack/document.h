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

#ifndef FORMATTACK_DOCUMENT_H_
#define FORMATTACK_DOCUMENT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace formattack {

// Page-absolute box. Origin is the top-left corner of the page and y grows
// downward. Units are whatever the page size is expressed in.
struct BoundingBox {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;

  double Width() const { return x2 - x1; }
  double Height() const { return y2 - y1; }
  double Area() const { return Width() * Height(); }
  double CenterX() const { return 0.5 * (x1 + x2); }
  double CenterY() const { return 0.5 * (y1 + y2); }

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

// Smallest box containing both `a` and `b`.
BoundingBox Union(const BoundingBox& a, const BoundingBox& b);

struct Word {
  std::string text;
  BoundingBox box;

  friend bool operator==(const Word&, const Word&) = default;
};

enum class DataType { kDate, kNumber, kMoney, kFreeText };

std::string_view DataTypeName(DataType type);
// Throws ParseError for anything but "date", "number", "money", "free_text".
DataType ParseDataType(std::string_view name);

// Ground truth for one field. `value_text` is kept redundantly with
// `value_indices` and the two must agree: the value words' texts joined by
// single spaces, in `value_indices` order.
struct FieldAnnotation {
  std::string field;
  DataType data_type = DataType::kFreeText;
  std::vector<int> key_indices;
  std::vector<int> value_indices;
  std::string value_text;

  friend bool operator==(const FieldAnnotation&,
                         const FieldAnnotation&) = default;
};

// One OCR'd page. The order of `words` is the reading order fed to
// extractors.
struct Document {
  std::string doc_id;
  double page_width = 0.0;
  double page_height = 0.0;
  std::vector<Word> words;
  std::vector<FieldAnnotation> annotations;

  const FieldAnnotation* FindAnnotation(std::string_view field) const;

  friend bool operator==(const Document&, const Document&) = default;
};

enum class WordRole { kValue, kKey, kBackground };

// Classifies every word. Value wins over key when an index is a value of one
// field and a key of another.
std::vector<WordRole> WordRoles(const Document& doc);

// Texts of `indices` joined with single spaces.
std::string JoinWords(const Document& doc, const std::vector<int>& indices);

// Throws ValidationError naming the document and the violated rule.
void ValidateDocument(const Document& doc);

// Rebuilds a document keeping only words whose `keep` flag is set. Word
// indices in annotations are remapped; dropped key words disappear from
// `key_indices`. Value words must all be kept.
Document KeepWords(const Document& doc, const std::vector<bool>& keep);

// Reorders words so that new position j holds old word `order[j]`.
// `order` must be a permutation of [0, N). Annotation index lists keep their
// stored order, so `value_text` stays in sync.
Document PermuteWords(const Document& doc, const std::vector<int>& order);

}  // namespace formattack

#endif  // FORMATTACK_DOCUMENT_H_
