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

#ifndef FORMATTACK_REGISTRY_H_
#define FORMATTACK_REGISTRY_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "formattack/document.h"
#include "formattack/lexicon.h"
#include "formattack/rng.h"
#include "formattack/transforms.h"
#include "json.hpp"

namespace formattack {

// A named transformation with its parameters and seed. `params` is a JSON
// object; see docs/transforms.md for the names and defaults.
struct TransformSpec {
  std::string name;
  nlohmann::json params = nlohmann::json::object();
  uint64_t seed = 0;
};

// The fourteen sweepable transforms in canonical order.
const std::vector<std::string>& RegistryOrder();

// RegistryOrder() plus value_location_augment_star.
const std::vector<std::string>& AllTransformNames();

bool IsRegisteredTransform(std::string_view name);

// Default parameters of a transform. Throws ConfigError for unknown names.
const nlohmann::json& DefaultParams(std::string_view name);

// Fills missing parameters with defaults. Throws ConfigError for unknown
// transforms, unknown parameters, wrongly typed or out-of-range values.
TransformSpec ResolveSpec(const TransformSpec& spec);

struct TransformContext {
  // Lexicon for bg_synonyms when its "lexicon" parameter is empty. Null means
  // the built-in lexicon.
  std::shared_ptr<const SynonymLexicon> lexicon;
};

class Transform {
 public:
  using Fn = std::function<Document(const Document&, Rng&, TransformStats*)>;

  Transform(TransformSpec spec, Fn fn)
      : spec_(std::move(spec)), fn_(std::move(fn)) {}

  const std::string& name() const { return spec_.name; }
  const TransformSpec& spec() const { return spec_; }

  // Applies the transform with the document's own substream of spec().seed.
  Document Apply(const Document& doc, TransformStats* stats = nullptr) const;

 private:
  TransformSpec spec_;
  Fn fn_;
};

Transform MakeTransform(const TransformSpec& spec,
                        const TransformContext& context = {});

// Transforms applied left to right.
class TransformChain {
 public:
  TransformChain() = default;
  static TransformChain Create(std::span<const TransformSpec> specs,
                               const TransformContext& context = {});

  // `stats`, when given, receives one entry per transform.
  Document Apply(const Document& doc,
                 std::vector<TransformStats>* stats = nullptr) const;

  // Transform names joined with '+'; "original" for the empty chain.
  std::string Name() const;
  std::vector<TransformSpec> Specs() const;
  size_t size() const { return transforms_.size(); }

 private:
  std::vector<Transform> transforms_;
};

Document ApplyChain(const Document& doc, std::span<const TransformSpec> specs,
                    const TransformContext& context = {});

// Chain config: either a JSON list of {name, params, seed} objects or an
// object {"chain": [...]}. Comments are allowed. Entries without a seed get
// `default_seed`.
std::vector<TransformSpec> ParseChainConfig(const nlohmann::json& config,
                                            uint64_t default_seed);
std::vector<TransformSpec> LoadChainConfig(const std::filesystem::path& path,
                                           uint64_t default_seed);
nlohmann::json ChainToJson(std::span<const TransformSpec> specs);

// Parses JSON text allowing // and /* */ comments. Throws ParseError.
nlohmann::json ParseJsonWithComments(std::string_view text);
nlohmann::json LoadJsonFile(const std::filesystem::path& path);

}  // namespace formattack

#endif  // FORMATTACK_REGISTRY_H_
