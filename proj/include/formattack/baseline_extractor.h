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

#ifndef FORMATTACK_BASELINE_EXTRACTOR_H_
#define FORMATTACK_BASELINE_EXTRACTOR_H_

#include <string_view>
#include <vector>

#include "formattack/extract.h"

namespace formattack {

struct BaselineOptions {
  // Search radius around a matched key, as page fractions.
  double max_right_gap = 0.5;
  double max_below_gap = 0.03;
  // Lines scanned for fields without key phrases.
  int keyless_top_lines = 3;
};

// Rule-based extractor. It finds a field's key phrase (case-insensitive,
// trailing ':' ignored) in reading order and takes the nearest word to the
// right of or below the key whose text fits the field's data type. Fields
// without key phrases are read from the top-most lines: typed fields take the
// first matching word there, free-text fields take one line each in config
// order, the last one taking all remaining top lines.
//
// This is a transparent stand-in that leans on keys and data types by
// construction; it is not a model and its scores are not comparable to
// learned extractors.
class BaselineExtractor : public Extractor {
 public:
  explicit BaselineExtractor(std::vector<FieldConfig> fields,
                             BaselineOptions options = {});

  ExtractionResult Extract(const Document& doc) override {
    return Run(doc);
  }
  ExtractionResult Run(const Document& doc) const;

 private:
  std::vector<FieldConfig> fields_;
  BaselineOptions options_;
};

// Whether `text` looks like a value of `type`. Dates must be in one of the
// generated formats; money must be comma-grouped with two decimals and an
// optional leading '$'; numbers are digit strings. Free text matches
// anything.
bool MatchesDataType(std::string_view text, DataType type);

// Groups words into text lines (top to bottom, words left to right).
std::vector<std::vector<int>> TextLines(const Document& doc);

}  // namespace formattack

#endif  // FORMATTACK_BASELINE_EXTRACTOR_H_
