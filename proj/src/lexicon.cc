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

#include "formattack/lexicon.h"

#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>

#include "formattack/errors.h"

namespace formattack {

// Defined in the generated builtin_lexicon.cc.
extern const char kBuiltinLexicon[];

namespace {

std::string Trim(std::string_view s) {
  const size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

enum class CasePattern { kLower, kTitle, kUpper };

CasePattern DetectCase(std::string_view word) {
  int letters = 0;
  int upper = 0;
  for (unsigned char c : word) {
    if (std::isalpha(c)) {
      ++letters;
      if (std::isupper(c)) ++upper;
    }
  }
  if (letters >= 2 && upper == letters) return CasePattern::kUpper;
  for (unsigned char c : word) {
    if (std::isalpha(c)) {
      return std::isupper(c) ? CasePattern::kTitle : CasePattern::kLower;
    }
  }
  return CasePattern::kLower;
}

std::string ApplyCase(std::string text, CasePattern pattern) {
  switch (pattern) {
    case CasePattern::kUpper:
      for (char& c : text) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      break;
    case CasePattern::kTitle:
      for (char& c : text) {
        if (std::isalpha(static_cast<unsigned char>(c))) {
          c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
          break;
        }
      }
      break;
    case CasePattern::kLower:
      break;
  }
  return text;
}

}  // namespace

std::string AsciiLower(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

SynonymLexicon SynonymLexicon::Parse(std::istream& in) {
  SynonymLexicon lexicon;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto fail = [&](const std::string& why) {
      throw ParseError("lexicon line " + std::to_string(line_number) + ": " +
                       why);
    };
    const size_t tab = line.find('\t');
    if (tab == std::string::npos) fail("expected word<TAB>synonyms");
    const std::string head = AsciiLower(Trim(line.substr(0, tab)));
    if (head.empty()) fail("empty headword");
    std::vector<std::string> synonyms;
    std::stringstream rest(line.substr(tab + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
      const std::string syn = Trim(item);
      if (syn.empty()) fail("empty synonym for '" + head + "'");
      synonyms.push_back(syn);
    }
    if (synonyms.empty()) fail("no synonyms for '" + head + "'");
    std::vector<std::string>& entry = lexicon.entries_[head];
    entry.insert(entry.end(), synonyms.begin(), synonyms.end());
  }
  return lexicon;
}

SynonymLexicon SynonymLexicon::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open lexicon '" + path.string() + "'");
  return Parse(in);
}

const SynonymLexicon& SynonymLexicon::Builtin() {
  static const SynonymLexicon lexicon = [] {
    std::istringstream in(kBuiltinLexicon);
    return Parse(in);
  }();
  return lexicon;
}

const std::vector<std::string>* SynonymLexicon::Find(
    std::string_view lower_word) const {
  const auto it = entries_.find(lower_word);
  return it == entries_.end() ? nullptr : &it->second;
}

std::optional<std::string> Synonym(std::string_view word,
                                   const SynonymLexicon& lexicon, Rng& rng) {
  size_t begin = 0;
  size_t end = word.size();
  const auto is_punct = [](char c) {
    return std::ispunct(static_cast<unsigned char>(c)) != 0;
  };
  while (begin < end && is_punct(word[begin])) ++begin;
  while (end > begin && is_punct(word[end - 1])) --end;
  const std::string_view core = word.substr(begin, end - begin);
  if (core.empty()) return std::nullopt;
  const std::vector<std::string>* synonyms = lexicon.Find(AsciiLower(core));
  if (synonyms == nullptr) return std::nullopt;
  const std::string& pick = (*synonyms)[rng.UniformInt(0, synonyms->size() - 1)];
  return std::string(word.substr(0, begin)) + ApplyCase(pick, DetectCase(core)) +
         std::string(word.substr(end));
}

}  // namespace formattack
