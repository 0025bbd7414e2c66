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

#ifndef FORMATTACK_EXTRACT_H_
#define FORMATTACK_EXTRACT_H_

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "formattack/document.h"
#include "json.hpp"

namespace formattack {

struct FieldConfig {
  std::string name;
  DataType data_type = DataType::kFreeText;
  // Values may span several words (address, company).
  bool multi_word = false;
  // Key phrases the baseline extractor looks for. Empty means keyless.
  std::vector<std::string> key_phrases;
};

// The seven invoice fields and the four receipt fields produced by the
// synthetic corpus generator, with key phrases matching its templates.
std::vector<FieldConfig> InvoiceFields();
std::vector<FieldConfig> ReceiptFields();

// Fields config file: {"fields": [{"name", "data_type", "multi_word",
// "key_phrases"}]}. Throws ParseError / ConfigError.
std::vector<FieldConfig> ParseFieldsConfig(const nlohmann::json& config);
// "invoice" and "receipt" select the built-in sets; anything else is a path.
std::vector<FieldConfig> LoadFieldsConfig(const std::string& selector);

// Per word, M + 1 class scores: the M configured fields in order, then
// background.
struct TokenScores {
  std::vector<std::vector<double>> rows;
};

struct ExtractionResult {
  std::string doc_id;
  // Predicted value per field; absent fields are missing from the map.
  std::map<std::string, std::string> values;
  // Set when the extractor failed on this document.
  bool failed = false;
  std::string error;
};

inline constexpr double kDefaultScoreThreshold = 0.1;

// Turns per-word field scores into field values. Each word is assigned its
// argmax class (lowest class index on ties). A single-word field takes the
// word predicted as that field with the highest score for it, if that score
// is strictly above `threshold`. A multi-word field groups all such words
// above the threshold (consecutive in reading order, or on the same line
// less than one median character width apart), keeps the group holding the
// best-scoring word, and joins it in reading order. Ties go to the lower word
// index. Throws ProtocolError when the score shape does not match.
ExtractionResult Postprocess(const TokenScores& scores, const Document& doc,
                             const std::vector<FieldConfig>& fields,
                             double threshold = kDefaultScoreThreshold);

class Extractor {
 public:
  virtual ~Extractor() = default;
  // Never throws for per-document failures; those come back with `failed`.
  virtual ExtractionResult Extract(const Document& doc) = 0;
};

// Reads the ground truth back. Useful as an upper bound and for testing the
// scoring path.
class TruthExtractor : public Extractor {
 public:
  ExtractionResult Extract(const Document& doc) override;
};

}  // namespace formattack

#endif  // FORMATTACK_EXTRACT_H_
