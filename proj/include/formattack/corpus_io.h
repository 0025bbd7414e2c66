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

#ifndef FORMATTACK_CORPUS_IO_H_
#define FORMATTACK_CORPUS_IO_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "formattack/document.h"
#include "json.hpp"

namespace formattack {

// Corpus files are JSON Lines: one document record per line. See
// docs/corpus_format.md for the record layout. Coordinates are written
// rounded to 6 decimal places.

nlohmann::json DocumentToJson(const Document& doc);
// Throws ParseError on a structurally bad record. Does not validate.
Document DocumentFromJson(const nlohmann::json& record);

// One line, no trailing newline.
std::string SerializeDocument(const Document& doc);
// Parses and validates one record.
Document ParseDocument(std::string_view line);

// Blank lines are skipped. Errors carry the 1-based line number.
std::vector<Document> ReadCorpus(std::istream& in);
std::vector<Document> LoadCorpus(const std::filesystem::path& path);

void WriteCorpus(std::ostream& out, const std::vector<Document>& docs);
void SaveCorpus(const std::filesystem::path& path,
                const std::vector<Document>& docs);

}  // namespace formattack

#endif  // FORMATTACK_CORPUS_IO_H_
