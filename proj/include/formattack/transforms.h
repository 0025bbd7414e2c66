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

#ifndef FORMATTACK_TRANSFORMS_H_
#define FORMATTACK_TRANSFORMS_H_

#include <map>
#include <string>
#include <vector>

#include "formattack/document.h"
#include "formattack/geometry.h"
#include "formattack/lexicon.h"
#include "formattack/rng.h"
#include "formattack/typedgen.h"

namespace formattack {

// Counters filled by the transforms; a null pointer skips bookkeeping.
struct TransformStats {
  int words_dropped = 0;
  int words_changed = 0;    // text rewritten
  int words_moved = 0;      // box changed
  int words_reordered = 0;  // reading-order position changed
  std::vector<std::string> skipped_fields;

  void Merge(const TransformStats& other);
};

// Which words the background transforms may touch. kNonValue includes keys.
enum class EligibleWords { kNonValue, kBackground };

EligibleWords ParseEligibleWords(std::string_view name);

// ---- Location transforms. Texts and reading order are untouched. ----

// Moves each box center by (N(0, shift_std) * width, N(0, shift_std) * height)
// keeping its size. Boxes leaving the page are translated back onto it.
Document CenterShift(const Document& doc, double shift_std, Rng& rng,
                     TransformStats* stats = nullptr);

// Perturbs x1 and x2 by N(0, stretch_std) * width and y1, y2 by
// N(0, stretch_std) * height.
Document BoxStretch(const Document& doc, double stretch_std, Rng& rng,
                    TransformStats* stats = nullptr);

// Adds four independent margins, each uniform in
// [1, max_margin_ratio * page dimension], growing the page.
Document MarginPad(const Document& doc, double max_margin_ratio, Rng& rng,
                   TransformStats* stats = nullptr);

// ---- Order transforms. Words and boxes are untouched. ----

Document GlobalShuffle(const Document& doc, Rng& rng,
                       TransformStats* stats = nullptr);

// Permutes only the positions held by value neighbors.
Document NeighborShuffle(const Document& doc, const NeighborOptions& options,
                         Rng& rng, TransformStats* stats = nullptr);

// Permutes only the positions held by words that are neither values nor
// value neighbors.
Document NonNeighborShuffle(const Document& doc,
                            const NeighborOptions& options, Rng& rng,
                            TransformStats* stats = nullptr);

// ---- Drop transforms. Output words are a subsequence of the input. ----

Document BgDrop(const Document& doc, double drop_prob, EligibleWords eligible,
                Rng& rng, TransformStats* stats = nullptr);

// Drops every non-value word that neighbors some value.
Document NeighborBgDrop(const Document& doc, const NeighborOptions& options,
                        TransformStats* stats = nullptr);

// Drops every key word and empties all key_indices.
Document KeyDrop(const Document& doc, TransformStats* stats = nullptr);

// ---- Text transforms. Boxes and reading order are untouched. ----

Document BgTypo(const Document& doc, double typo_prob, EligibleWords eligible,
                Rng& rng, TransformStats* stats = nullptr);

// Selected words without a lexicon entry stay as they are.
Document BgSynonyms(const Document& doc, double synonym_prob,
                    const SynonymLexicon& lexicon, EligibleWords eligible,
                    Rng& rng, TransformStats* stats = nullptr);

// Replaces selected non-value, non-neighbor words with a random date, number
// or money string.
Document BgAdversarial(const Document& doc, double adversarial_prob,
                       const NeighborOptions& options,
                       const MoneyOptions& money, Rng& rng,
                       TransformStats* stats = nullptr);

struct ValuePolicy {
  enum class Kind { kReplaceTyped, kSkip, kDerivedPercent };
  Kind kind = Kind::kReplaceTyped;
  // kDerivedPercent: money value equal to a uniform fraction in [low, high]
  // of the base field's amount.
  std::string base_field;
  double low = 0.0;
  double high = 0.0;
};

using ValuePolicyMap = std::map<std::string, ValuePolicy, std::less<>>;

// total_amount, amount_due and total are kept; total_tax becomes 0-15% of
// total_amount. Fields not listed are regenerated when typed and kept when
// free text.
ValuePolicyMap DefaultValuePolicies();

// Rewrites value words with generated values of the same data type. A field
// is skipped (and reported) when the new value tokenizes into a different
// number of words than the old one.
Document ValueTextAugment(const Document& doc, const ValuePolicyMap& policies,
                          const MoneyOptions& money, Rng& rng,
                          TransformStats* stats = nullptr);

// ---- Value location transforms. Texts and reading order are kept except
// where noted. ----

// Groups fields by (key word count, value word count) and, inside every
// group of two or more, moves each field's key and value boxes to those of
// another field of the group (a random derangement).
Document ValueLocationAugment(const Document& doc, Rng& rng,
                              TransformStats* stats = nullptr);

// For each listed field whose value occupies whole text lines: removes those
// lines, closes the gap, and re-places the value lines below the lowest
// remaining word. Moved values go last in reading order. Fields sharing a
// line with other words are skipped and reported.
Document ValueLocationAugmentStar(const Document& doc,
                                  const std::vector<std::string>& fields,
                                  TransformStats* stats = nullptr);

}  // namespace formattack

#endif  // FORMATTACK_TRANSFORMS_H_
