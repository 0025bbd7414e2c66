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

#include "formattack/corpus_io.h"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "formattack/errors.h"

namespace formattack {
namespace {

using nlohmann::json;

double RoundCoordinate(double v) { return std::round(v * 1e6) / 1e6; }

void RequireKeys(const json& obj, const std::set<std::string>& allowed,
                 const char* what) {
  if (!obj.is_object()) {
    throw ParseError(std::string(what) + " must be an object");
  }
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      throw ParseError(std::string("unknown key '") + item.key() + "' in " +
                       what);
    }
  }
  for (const std::string& key : allowed) {
    if (!obj.contains(key)) {
      throw ParseError(std::string("missing key '") + key + "' in " + what);
    }
  }
}

std::vector<int> ParseIndexList(const json& arr, const char* what) {
  if (!arr.is_array()) throw ParseError(std::string(what) + " must be a list");
  std::vector<int> out;
  out.reserve(arr.size());
  for (const json& v : arr) {
    if (!v.is_number_integer()) {
      throw ParseError(std::string(what) + " must hold integers");
    }
    out.push_back(v.get<int>());
  }
  return out;
}

double ParseNumber(const json& v, const char* what) {
  if (!v.is_number()) throw ParseError(std::string(what) + " must be a number");
  return v.get<double>();
}

}  // namespace

json DocumentToJson(const Document& doc) {
  json words = json::array();
  for (const Word& w : doc.words) {
    words.push_back({{"text", w.text},
                     {"box",
                      {RoundCoordinate(w.box.x1), RoundCoordinate(w.box.y1),
                       RoundCoordinate(w.box.x2), RoundCoordinate(w.box.y2)}}});
  }
  json annotations = json::array();
  for (const FieldAnnotation& ann : doc.annotations) {
    annotations.push_back({{"field", ann.field},
                           {"data_type", DataTypeName(ann.data_type)},
                           {"key_indices", ann.key_indices},
                           {"value_indices", ann.value_indices},
                           {"value_text", ann.value_text}});
  }
  return {{"doc_id", doc.doc_id},
          {"page",
           {{"width", RoundCoordinate(doc.page_width)},
            {"height", RoundCoordinate(doc.page_height)}}},
          {"words", std::move(words)},
          {"annotations", std::move(annotations)}};
}

Document DocumentFromJson(const json& record) {
  RequireKeys(record, {"doc_id", "page", "words", "annotations"}, "record");
  Document doc;
  if (!record["doc_id"].is_string()) throw ParseError("doc_id must be a string");
  doc.doc_id = record["doc_id"].get<std::string>();
  const json& page = record["page"];
  RequireKeys(page, {"width", "height"}, "page");
  doc.page_width = ParseNumber(page["width"], "page.width");
  doc.page_height = ParseNumber(page["height"], "page.height");

  const json& words = record["words"];
  if (!words.is_array()) throw ParseError("words must be a list");
  doc.words.reserve(words.size());
  for (const json& w : words) {
    RequireKeys(w, {"text", "box"}, "word");
    if (!w["text"].is_string()) throw ParseError("word text must be a string");
    const json& box = w["box"];
    if (!box.is_array() || box.size() != 4) {
      throw ParseError("word box must be [x1, y1, x2, y2]");
    }
    doc.words.push_back(
        {w["text"].get<std::string>(),
         {ParseNumber(box[0], "box"), ParseNumber(box[1], "box"),
          ParseNumber(box[2], "box"), ParseNumber(box[3], "box")}});
  }

  const json& annotations = record["annotations"];
  if (!annotations.is_array()) throw ParseError("annotations must be a list");
  for (const json& a : annotations) {
    RequireKeys(a,
                {"field", "data_type", "key_indices", "value_indices",
                 "value_text"},
                "annotation");
    if (!a["field"].is_string() || !a["data_type"].is_string() ||
        !a["value_text"].is_string()) {
      throw ParseError("annotation field, data_type and value_text must be strings");
    }
    FieldAnnotation ann;
    ann.field = a["field"].get<std::string>();
    ann.data_type = ParseDataType(a["data_type"].get<std::string>());
    ann.key_indices = ParseIndexList(a["key_indices"], "key_indices");
    ann.value_indices = ParseIndexList(a["value_indices"], "value_indices");
    ann.value_text = a["value_text"].get<std::string>();
    doc.annotations.push_back(std::move(ann));
  }
  return doc;
}

std::string SerializeDocument(const Document& doc) {
  return DocumentToJson(doc).dump();
}

Document ParseDocument(std::string_view line) {
  json record;
  try {
    record = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  Document doc = DocumentFromJson(record);
  ValidateDocument(doc);
  return doc;
}

std::vector<Document> ReadCorpus(std::istream& in) {
  std::vector<Document> docs;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      docs.push_back(ParseDocument(line));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_number) + ": " + e.what());
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(line_number) + ": " +
                            e.what());
    }
  }
  return docs;
}

std::vector<Document> LoadCorpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open corpus '" + path.string() + "'");
  return ReadCorpus(in);
}

void WriteCorpus(std::ostream& out, const std::vector<Document>& docs) {
  for (const Document& doc : docs) out << SerializeDocument(doc) << '\n';
}

void SaveCorpus(const std::filesystem::path& path,
                const std::vector<Document>& docs) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write corpus '" + path.string() + "'");
  WriteCorpus(out, docs);
}

}  // namespace formattack
