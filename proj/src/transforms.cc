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

#include "formattack/transforms.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "formattack/errors.h"

namespace formattack {
namespace {

// Translates `b` into [0, width] x [0, height] without resizing it, unless
// it is larger than the page.
BoundingBox TranslateOntoPage(BoundingBox b, double width, double height) {
  const double w = b.Width();
  const double h = b.Height();
  if (b.x1 < 0.0) {
    b.x1 = 0.0;
    b.x2 = w;
  }
  if (b.x2 > width) {
    b.x2 = width;
    b.x1 = std::max(0.0, width - w);
  }
  if (b.y1 < 0.0) {
    b.y1 = 0.0;
    b.y2 = h;
  }
  if (b.y2 > height) {
    b.y2 = height;
    b.y1 = std::max(0.0, height - h);
  }
  return b;
}

std::vector<bool> EligibleMask(const Document& doc, EligibleWords eligible) {
  const std::vector<WordRole> roles = WordRoles(doc);
  std::vector<bool> mask(roles.size());
  for (size_t i = 0; i < roles.size(); ++i) {
    mask[i] = eligible == EligibleWords::kBackground
                  ? roles[i] == WordRole::kBackground
                  : roles[i] != WordRole::kValue;
  }
  return mask;
}

std::vector<bool> ValueMask(const Document& doc) {
  std::vector<bool> mask(doc.words.size(), false);
  for (const FieldAnnotation& ann : doc.annotations) {
    for (int v : ann.value_indices) mask[v] = true;
  }
  return mask;
}

// Shuffles the words at `positions` among themselves.
Document ShufflePositions(const Document& doc, const std::vector<int>& positions,
                          Rng& rng, TransformStats* stats) {
  std::vector<int> sources = positions;
  rng.Shuffle(std::span<int>(sources));
  std::vector<int> order(doc.words.size());
  std::iota(order.begin(), order.end(), 0);
  for (size_t k = 0; k < positions.size(); ++k) order[positions[k]] = sources[k];
  if (stats != nullptr) {
    for (size_t j = 0; j < order.size(); ++j) {
      if (order[j] != static_cast<int>(j)) ++stats->words_reordered;
    }
  }
  return PermuteWords(doc, order);
}

Document DropWhere(const Document& doc, const std::vector<bool>& drop,
                   TransformStats* stats) {
  std::vector<bool> keep(drop.size());
  for (size_t i = 0; i < drop.size(); ++i) keep[i] = !drop[i];
  if (stats != nullptr) {
    stats->words_dropped +=
        static_cast<int>(std::count(drop.begin(), drop.end(), true));
  }
  return KeepWords(doc, keep);
}

template <typename Rewrite>
Document RewriteSelected(const Document& doc, double prob,
                         const std::vector<bool>& eligible, Rng& rng,
                         TransformStats* stats, Rewrite rewrite) {
  Document out = doc;
  for (size_t i = 0; i < out.words.size(); ++i) {
    if (!eligible[i] || !rng.Bernoulli(prob)) continue;
    std::optional<std::string> text = rewrite(out.words[i].text);
    if (!text || *text == out.words[i].text) continue;
    out.words[i].text = std::move(*text);
    if (stats != nullptr) ++stats->words_changed;
  }
  return out;
}

void CountMoved(const Document& before, const Document& after,
                TransformStats* stats) {
  if (stats == nullptr) return;
  for (size_t i = 0; i < before.words.size(); ++i) {
    if (!(before.words[i].box == after.words[i].box)) ++stats->words_moved;
  }
}

std::vector<std::string> SplitOnSpaces(const std::string& text) {
  std::vector<std::string> tokens;
  std::istringstream in(text);
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

}  // namespace

void TransformStats::Merge(const TransformStats& other) {
  words_dropped += other.words_dropped;
  words_changed += other.words_changed;
  words_moved += other.words_moved;
  words_reordered += other.words_reordered;
  skipped_fields.insert(skipped_fields.end(), other.skipped_fields.begin(),
                        other.skipped_fields.end());
}

EligibleWords ParseEligibleWords(std::string_view name) {
  if (name == "non_value") return EligibleWords::kNonValue;
  if (name == "background") return EligibleWords::kBackground;
  throw ConfigError("unknown eligible word set '" + std::string(name) + "'");
}

Document CenterShift(const Document& doc, double shift_std, Rng& rng,
                     TransformStats* stats) {
  Document out = doc;
  for (Word& w : out.words) {
    const double width = w.box.Width();
    const double height = w.box.Height();
    const double dx = rng.Normal(0.0, shift_std) * width;
    const double dy = rng.Normal(0.0, shift_std) * height;
    BoundingBox b{w.box.x1 + dx, w.box.y1 + dy, w.box.x2 + dx, w.box.y2 + dy};
    w.box = TranslateOntoPage(b, out.page_width, out.page_height);
  }
  CountMoved(doc, out, stats);
  return out;
}

Document BoxStretch(const Document& doc, double stretch_std, Rng& rng,
                    TransformStats* stats) {
  Document out = doc;
  for (Word& w : out.words) {
    const double width = w.box.Width();
    const double height = w.box.Height();
    BoundingBox b = w.box;
    b.x1 += rng.Normal(0.0, stretch_std) * width;
    b.y1 += rng.Normal(0.0, stretch_std) * height;
    b.x2 += rng.Normal(0.0, stretch_std) * width;
    b.y2 += rng.Normal(0.0, stretch_std) * height;
    if (b.x1 > b.x2) std::swap(b.x1, b.x2);
    if (b.y1 > b.y2) std::swap(b.y1, b.y2);
    w.box = TranslateOntoPage(b, out.page_width, out.page_height);
  }
  CountMoved(doc, out, stats);
  return out;
}

Document MarginPad(const Document& doc, double max_margin_ratio, Rng& rng,
                   TransformStats* stats) {
  const auto margin = [&](double dimension) {
    return rng.Uniform(1.0, std::max(1.0, max_margin_ratio * dimension));
  };
  const double left = margin(doc.page_width);
  const double right = margin(doc.page_width);
  const double top = margin(doc.page_height);
  const double bottom = margin(doc.page_height);
  Document out = doc;
  out.page_width = doc.page_width + left + right;
  out.page_height = doc.page_height + top + bottom;
  for (Word& w : out.words) {
    w.box = {w.box.x1 + left, w.box.y1 + top, w.box.x2 + left,
             w.box.y2 + top};
  }
  CountMoved(doc, out, stats);
  return out;
}

Document GlobalShuffle(const Document& doc, Rng& rng, TransformStats* stats) {
  std::vector<int> positions(doc.words.size());
  std::iota(positions.begin(), positions.end(), 0);
  return ShufflePositions(doc, positions, rng, stats);
}

Document NeighborShuffle(const Document& doc, const NeighborOptions& options,
                         Rng& rng, TransformStats* stats) {
  const std::vector<bool> neighbors = NeighborMask(doc, options);
  std::vector<int> positions;
  for (size_t i = 0; i < neighbors.size(); ++i) {
    if (neighbors[i]) positions.push_back(static_cast<int>(i));
  }
  return ShufflePositions(doc, positions, rng, stats);
}

Document NonNeighborShuffle(const Document& doc,
                            const NeighborOptions& options, Rng& rng,
                            TransformStats* stats) {
  const std::vector<bool> neighbors = NeighborMask(doc, options);
  const std::vector<bool> values = ValueMask(doc);
  std::vector<int> positions;
  for (size_t i = 0; i < neighbors.size(); ++i) {
    if (!neighbors[i] && !values[i]) positions.push_back(static_cast<int>(i));
  }
  return ShufflePositions(doc, positions, rng, stats);
}

Document BgDrop(const Document& doc, double drop_prob, EligibleWords eligible,
                Rng& rng, TransformStats* stats) {
  const std::vector<bool> mask = EligibleMask(doc, eligible);
  std::vector<bool> drop(mask.size(), false);
  for (size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) drop[i] = rng.Bernoulli(drop_prob);
  }
  return DropWhere(doc, drop, stats);
}

Document NeighborBgDrop(const Document& doc, const NeighborOptions& options,
                        TransformStats* stats) {
  return DropWhere(doc, NeighborMask(doc, options), stats);
}

Document KeyDrop(const Document& doc, TransformStats* stats) {
  const std::vector<WordRole> roles = WordRoles(doc);
  std::vector<bool> drop(roles.size(), false);
  for (size_t i = 0; i < roles.size(); ++i) drop[i] = roles[i] == WordRole::kKey;
  Document out = DropWhere(doc, drop, stats);
  for (FieldAnnotation& ann : out.annotations) ann.key_indices.clear();
  return out;
}

Document BgTypo(const Document& doc, double typo_prob, EligibleWords eligible,
                Rng& rng, TransformStats* stats) {
  return RewriteSelected(
      doc, typo_prob, EligibleMask(doc, eligible), rng, stats,
      [&rng](const std::string& text) -> std::optional<std::string> {
        return ApplyTypo(text, rng);
      });
}

Document BgSynonyms(const Document& doc, double synonym_prob,
                    const SynonymLexicon& lexicon, EligibleWords eligible,
                    Rng& rng, TransformStats* stats) {
  return RewriteSelected(doc, synonym_prob, EligibleMask(doc, eligible), rng,
                         stats, [&](const std::string& text) {
                           return Synonym(text, lexicon, rng);
                         });
}

Document BgAdversarial(const Document& doc, double adversarial_prob,
                       const NeighborOptions& options,
                       const MoneyOptions& money, Rng& rng,
                       TransformStats* stats) {
  std::vector<bool> eligible = NeighborMask(doc, options);
  const std::vector<bool> values = ValueMask(doc);
  for (size_t i = 0; i < eligible.size(); ++i) {
    eligible[i] = !eligible[i] && !values[i];
  }
  return RewriteSelected(
      doc, adversarial_prob, eligible, rng, stats,
      [&](const std::string&) -> std::optional<std::string> {
        constexpr DataType kTypes[] = {DataType::kDate, DataType::kNumber,
                                       DataType::kMoney};
        return GenValue(kTypes[rng.UniformInt(0, 2)], rng, money);
      });
}

ValuePolicyMap DefaultValuePolicies() {
  ValuePolicyMap policies;
  policies["total_amount"].kind = ValuePolicy::Kind::kSkip;
  policies["amount_due"].kind = ValuePolicy::Kind::kSkip;
  policies["total"].kind = ValuePolicy::Kind::kSkip;
  ValuePolicy& tax = policies["total_tax"];
  tax.kind = ValuePolicy::Kind::kDerivedPercent;
  tax.base_field = "total_amount";
  tax.low = 0.0;
  tax.high = 0.15;
  return policies;
}

Document ValueTextAugment(const Document& doc, const ValuePolicyMap& policies,
                          const MoneyOptions& money, Rng& rng,
                          TransformStats* stats) {
  Document out = doc;
  for (FieldAnnotation& ann : out.annotations) {
    ValuePolicy policy;
    if (const auto it = policies.find(ann.field); it != policies.end()) {
      policy = it->second;
    } else if (ann.data_type == DataType::kFreeText) {
      policy.kind = ValuePolicy::Kind::kSkip;
    }
    const auto skip = [&] {
      if (stats != nullptr) stats->skipped_fields.push_back(ann.field);
    };

    std::string replacement;
    switch (policy.kind) {
      case ValuePolicy::Kind::kSkip:
        continue;
      case ValuePolicy::Kind::kReplaceTyped:
        if (ann.data_type == DataType::kFreeText) {
          skip();
          continue;
        }
        replacement = GenValue(ann.data_type, rng, money);
        break;
      case ValuePolicy::Kind::kDerivedPercent: {
        const FieldAnnotation* base = doc.FindAnnotation(policy.base_field);
        const std::optional<int64_t> amount =
            base ? ParseMoney(base->value_text) : std::nullopt;
        if (!amount) {
          skip();
          continue;
        }
        const double fraction = rng.Uniform(policy.low, policy.high);
        const auto derived =
            static_cast<int64_t>(std::floor(static_cast<double>(*amount) * fraction));
        const bool dollar = !ann.value_text.empty() && ann.value_text[0] == '$';
        replacement = FormatMoney(derived, dollar);
        break;
      }
    }

    const std::vector<std::string> tokens = SplitOnSpaces(replacement);
    if (tokens.size() != ann.value_indices.size()) {
      skip();
      continue;
    }
    for (size_t k = 0; k < tokens.size(); ++k) {
      Word& w = out.words[ann.value_indices[k]];
      if (w.text != tokens[k] && stats != nullptr) ++stats->words_changed;
      w.text = tokens[k];
    }
    ann.value_text = JoinWords(out, ann.value_indices);
  }
  return out;
}

Document ValueLocationAugment(const Document& doc, Rng& rng,
                              TransformStats* stats) {
  // Groups in order of first appearance.
  std::vector<std::pair<std::pair<size_t, size_t>, std::vector<size_t>>> groups;
  for (size_t a = 0; a < doc.annotations.size(); ++a) {
    const FieldAnnotation& ann = doc.annotations[a];
    const std::pair<size_t, size_t> shape{ann.key_indices.size(),
                                          ann.value_indices.size()};
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const auto& g) { return g.first == shape; });
    if (it == groups.end()) {
      groups.push_back({shape, {a}});
    } else {
      it->second.push_back(a);
    }
  }

  Document out = doc;
  for (const auto& [shape, members] : groups) {
    if (members.size() < 2) continue;
    std::vector<size_t> partner(members.size());
    bool deranged = false;
    while (!deranged) {
      std::iota(partner.begin(), partner.end(), size_t{0});
      rng.Shuffle(std::span<size_t>(partner));
      deranged = true;
      for (size_t i = 0; i < partner.size(); ++i) {
        if (partner[i] == i) deranged = false;
      }
    }
    for (size_t i = 0; i < members.size(); ++i) {
      const FieldAnnotation& self = doc.annotations[members[i]];
      const FieldAnnotation& other = doc.annotations[members[partner[i]]];
      for (size_t k = 0; k < self.key_indices.size(); ++k) {
        out.words[self.key_indices[k]].box =
            doc.words[other.key_indices[k]].box;
      }
      for (size_t k = 0; k < self.value_indices.size(); ++k) {
        out.words[self.value_indices[k]].box =
            doc.words[other.value_indices[k]].box;
      }
    }
  }
  CountMoved(doc, out, stats);
  return out;
}

namespace {

struct Band {
  double y1;
  double y2;
};

// Moves one field's value lines to the bottom. Returns false when the value
// shares a line with other words.
bool MoveValueToBottom(Document& doc, const FieldAnnotation& ann) {
  std::vector<bool> is_value(doc.words.size(), false);
  for (int v : ann.value_indices) is_value[v] = true;

  std::vector<Band> bands;
  for (int v : ann.value_indices) {
    bands.push_back({doc.words[v].box.y1, doc.words[v].box.y2});
  }
  std::sort(bands.begin(), bands.end(),
            [](const Band& a, const Band& b) { return a.y1 < b.y1; });
  std::vector<Band> merged;
  for (const Band& b : bands) {
    if (!merged.empty() && b.y1 < merged.back().y2) {
      merged.back().y2 = std::max(merged.back().y2, b.y2);
    } else {
      merged.push_back(b);
    }
  }

  const double block_top = merged.front().y1;
  const double block_bottom = merged.back().y2;
  double gap_below = -1.0;
  double bottom_above = -1.0;
  for (size_t i = 0; i < doc.words.size(); ++i) {
    if (is_value[i]) continue;
    const BoundingBox& b = doc.words[i].box;
    for (const Band& band : merged) {
      if (b.y1 < band.y2 && b.y2 > band.y1) return false;
    }
    if (b.y1 >= block_bottom &&
        (gap_below < 0.0 || b.y1 - block_bottom < gap_below)) {
      gap_below = b.y1 - block_bottom;
    }
    if (b.y2 <= block_top) bottom_above = std::max(bottom_above, b.y2);
  }
  double gap = 0.0;
  if (gap_below >= 0.0) {
    gap = gap_below;
  } else if (bottom_above >= 0.0) {
    gap = block_top - bottom_above;
  }

  double lowest = 0.0;
  bool any_rest = false;
  for (size_t i = 0; i < doc.words.size(); ++i) {
    if (is_value[i]) continue;
    BoundingBox& b = doc.words[i].box;
    double lift = 0.0;
    for (const Band& band : merged) {
      if (band.y2 <= b.y1) lift += band.y2 - band.y1;
    }
    b.y1 -= lift;
    b.y2 -= lift;
    lowest = any_rest ? std::max(lowest, b.y2) : b.y2;
    any_rest = true;
  }

  const double offset = (any_rest ? lowest + gap : 0.0) - block_top;
  for (int v : ann.value_indices) {
    BoundingBox& b = doc.words[v].box;
    b.y1 = std::max(0.0, b.y1 + offset);
    b.y2 = std::max(b.y1, b.y2 + offset);
    doc.page_height = std::max(doc.page_height, b.y2);
  }

  std::vector<int> order;
  order.reserve(doc.words.size());
  for (size_t i = 0; i < doc.words.size(); ++i) {
    if (!is_value[i]) order.push_back(static_cast<int>(i));
  }
  std::vector<int> moved = ann.value_indices;
  std::sort(moved.begin(), moved.end());
  order.insert(order.end(), moved.begin(), moved.end());
  doc = PermuteWords(doc, order);
  return true;
}

}  // namespace

Document ValueLocationAugmentStar(const Document& doc,
                                  const std::vector<std::string>& fields,
                                  TransformStats* stats) {
  Document out = doc;
  for (const std::string& field : fields) {
    const FieldAnnotation* ann = out.FindAnnotation(field);
    if (ann == nullptr) continue;
    const FieldAnnotation copy = *ann;
    const bool moved = MoveValueToBottom(out, copy);
    if (stats == nullptr) continue;
    if (moved) {
      stats->words_moved += static_cast<int>(copy.value_indices.size());
    } else {
      stats->skipped_fields.push_back(field);
    }
  }
  return out;
}

}  // namespace formattack
