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

#include "formattack/baseline_extractor.h"

#include <algorithm>
#include <numeric>
#include <optional>
#include <regex>

#include "formattack/lexicon.h"

namespace formattack {
namespace {

std::string NormalizeToken(std::string_view token) {
  std::string out = AsciiLower(token);
  while (!out.empty() && out.back() == ':') out.pop_back();
  return out;
}

std::vector<std::string> Tokenize(std::string_view phrase) {
  std::vector<std::string> tokens;
  size_t i = 0;
  while (i < phrase.size()) {
    while (i < phrase.size() && phrase[i] == ' ') ++i;
    const size_t start = i;
    while (i < phrase.size() && phrase[i] != ' ') ++i;
    if (i > start) tokens.push_back(NormalizeToken(phrase.substr(start, i - start)));
  }
  return tokens;
}

struct KeyMatch {
  int first;
  int last;
};

// Key phrase occurrences in reading order; the longest phrase wins at each
// start position.
std::vector<KeyMatch> FindKeys(const std::vector<std::string>& words,
                               const std::vector<std::vector<std::string>>& phrases) {
  std::vector<KeyMatch> matches;
  for (size_t i = 0; i < words.size(); ++i) {
    size_t best = 0;
    for (const std::vector<std::string>& phrase : phrases) {
      if (phrase.empty() || phrase.size() <= best ||
          i + phrase.size() > words.size()) {
        continue;
      }
      if (std::equal(phrase.begin(), phrase.end(), words.begin() + i)) {
        best = phrase.size();
      }
    }
    if (best > 0) {
      matches.push_back({static_cast<int>(i), static_cast<int>(i + best - 1)});
    }
  }
  return matches;
}

std::optional<int> NearestCandidate(const Document& doc, const KeyMatch& key,
                                    DataType type,
                                    const BaselineOptions& options) {
  BoundingBox key_box = doc.words[key.first].box;
  for (int k = key.first; k <= key.last; ++k) {
    key_box = Union(key_box, doc.words[k].box);
  }
  const double max_right = options.max_right_gap * doc.page_width;
  const double max_below = options.max_below_gap * doc.page_height;
  std::optional<int> best;
  double best_gap = 0.0;
  for (int j = 0; j < static_cast<int>(doc.words.size()); ++j) {
    if (j >= key.first && j <= key.last) continue;
    const BoundingBox& b = doc.words[j].box;
    const double v_overlap =
        std::min(b.y2, key_box.y2) - std::max(b.y1, key_box.y1);
    const double h_overlap =
        std::min(b.x2, key_box.x2) - std::max(b.x1, key_box.x1);
    double gap;
    if (v_overlap > 0.0 && b.CenterX() > key_box.x2) {
      gap = std::max(0.0, b.x1 - key_box.x2);
      if (gap > max_right) continue;
    } else if (h_overlap > 0.0 && b.CenterY() > key_box.y2) {
      gap = std::max(0.0, b.y1 - key_box.y2);
      if (gap > max_below) continue;
    } else {
      continue;
    }
    if (!MatchesDataType(doc.words[j].text, type)) continue;
    if (!best || gap < best_gap) {
      best = j;
      best_gap = gap;
    }
  }
  return best;
}

}  // namespace

bool MatchesDataType(std::string_view text, DataType type) {
  static const std::regex kDate(
      R"(\d{2}/\d{2}/\d{2}|\d{2}-\d{2}-\d{2}|\d{2}/[A-Z][a-z]+/\d{2})");
  static const std::regex kNumber(R"(\d+)");
  static const std::regex kMoney(R"(\$?\d{1,3}(,\d{3})*\.\d{2})");
  const std::string s(text);
  switch (type) {
    case DataType::kDate:
      return std::regex_match(s, kDate);
    case DataType::kNumber:
      return std::regex_match(s, kNumber);
    case DataType::kMoney:
      return std::regex_match(s, kMoney);
    case DataType::kFreeText:
      return true;
  }
  return false;
}

std::vector<std::vector<int>> TextLines(const Document& doc) {
  std::vector<int> order(doc.words.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return doc.words[a].box.CenterY() < doc.words[b].box.CenterY();
  });
  std::vector<std::vector<int>> lines;
  BoundingBox line_box;
  for (int i : order) {
    const BoundingBox& b = doc.words[i].box;
    if (!lines.empty() && b.CenterY() >= line_box.y1 &&
        b.CenterY() <= line_box.y2) {
      lines.back().push_back(i);
      line_box = Union(line_box, b);
    } else {
      lines.push_back({i});
      line_box = b;
    }
  }
  for (std::vector<int>& line : lines) {
    std::stable_sort(line.begin(), line.end(), [&](int a, int b) {
      return doc.words[a].box.x1 < doc.words[b].box.x1;
    });
  }
  return lines;
}

BaselineExtractor::BaselineExtractor(std::vector<FieldConfig> fields,
                                     BaselineOptions options)
    : fields_(std::move(fields)), options_(options) {}

ExtractionResult BaselineExtractor::Run(const Document& doc) const {
  ExtractionResult result;
  result.doc_id = doc.doc_id;
  std::vector<std::string> normalized;
  normalized.reserve(doc.words.size());
  for (const Word& w : doc.words) normalized.push_back(NormalizeToken(w.text));

  std::vector<std::vector<int>> top_lines = TextLines(doc);
  if (static_cast<int>(top_lines.size()) > options_.keyless_top_lines) {
    top_lines.resize(std::max(0, options_.keyless_top_lines));
  }
  std::vector<const FieldConfig*> keyless_text;
  for (const FieldConfig& field : fields_) {
    if (field.key_phrases.empty() && field.data_type == DataType::kFreeText) {
      keyless_text.push_back(&field);
    }
  }

  for (const FieldConfig& field : fields_) {
    if (!field.key_phrases.empty()) {
      std::vector<std::vector<std::string>> phrases;
      for (const std::string& phrase : field.key_phrases) {
        phrases.push_back(Tokenize(phrase));
      }
      for (const KeyMatch& key : FindKeys(normalized, phrases)) {
        if (const std::optional<int> hit =
                NearestCandidate(doc, key, field.data_type, options_)) {
          result.values[field.name] = doc.words[*hit].text;
          break;
        }
      }
      continue;
    }
    if (field.data_type != DataType::kFreeText) {
      for (const std::vector<int>& line : top_lines) {
        const auto hit = std::find_if(line.begin(), line.end(), [&](int i) {
          return MatchesDataType(doc.words[i].text, field.data_type);
        });
        if (hit != line.end()) {
          result.values[field.name] = doc.words[*hit].text;
          break;
        }
      }
      continue;
    }
    const size_t slot = static_cast<size_t>(
        std::find(keyless_text.begin(), keyless_text.end(), &field) -
        keyless_text.begin());
    if (slot >= top_lines.size()) continue;
    const bool last = slot + 1 == keyless_text.size();
    std::vector<int> words;
    for (size_t l = slot; l < (last ? top_lines.size() : slot + 1); ++l) {
      words.insert(words.end(), top_lines[l].begin(), top_lines[l].end());
    }
    result.values[field.name] = JoinWords(doc, words);
  }
  return result;
}

}  // namespace formattack
