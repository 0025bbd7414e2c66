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

#ifndef FORMATTACK_LEXICON_H_
#define FORMATTACK_LEXICON_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "formattack/rng.h"

namespace formattack {

// Word -> synonyms table. File format: one entry per line,
// "word<TAB>syn1,syn2,...". Blank lines and lines starting with '#' are
// ignored. Headwords are stored lowercased.
class SynonymLexicon {
 public:
  SynonymLexicon() = default;

  // Throws ParseError with the line number on a malformed entry.
  static SynonymLexicon Parse(std::istream& in);
  static SynonymLexicon Load(const std::filesystem::path& path);
  // The lexicon shipped in data/synonyms.tsv, compiled in.
  static const SynonymLexicon& Builtin();

  // Synonyms of an already lowercased word, or nullptr.
  const std::vector<std::string>* Find(std::string_view lower_word) const;

  bool empty() const { return entries_.empty(); }
  size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, std::vector<std::string>, std::less<>> entries_;
};

// ASCII lowercase; other bytes pass through.
std::string AsciiLower(std::string_view text);

// Synonym of `word` with its capitalization pattern (ALL CAPS, Title or
// lower) re-applied. Leading and trailing ASCII punctuation is kept around
// the replacement. Returns nullopt when the lexicon has no entry.
std::optional<std::string> Synonym(std::string_view word,
                                   const SynonymLexicon& lexicon, Rng& rng);

}  // namespace formattack

#endif  // FORMATTACK_LEXICON_H_
