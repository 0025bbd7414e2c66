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

#include "formattack/registry.h"

#include <fstream>
#include <map>
#include <sstream>

#include "formattack/errors.h"

namespace formattack {
namespace {

using nlohmann::json;

json NeighborDefaults() {
  return {{"zone_expand_rate", 0.02},
          {"order_neighbors", 2},
          {"zone_expansion", "page_relative"},
          {"overlap_metric", "iou"}};
}

json With(json base, const json& extra) {
  base.update(extra);
  return base;
}

const std::map<std::string, json, std::less<>>& DefaultsTable() {
  static const auto* table = new std::map<std::string, json, std::less<>>{
      {"center_shift", {{"shift_std", 0.5}}},
      {"box_stretch", {{"stretch_std", 0.1}}},
      {"margin_pad", {{"max_margin_ratio", 0.3}}},
      {"global_shuffle", json::object()},
      {"neighbor_shuffle", NeighborDefaults()},
      {"non_neighbor_shuffle", NeighborDefaults()},
      {"bg_drop", {{"drop_prob", 0.1}, {"eligible", "non_value"}}},
      {"neighbor_bg_drop", NeighborDefaults()},
      {"key_drop", json::object()},
      {"bg_typo", {{"typo_prob", 0.1}, {"eligible", "non_value"}}},
      {"bg_synonyms",
       {{"synonym_prob", 0.1}, {"eligible", "non_value"}, {"lexicon", ""}}},
      {"bg_adversarial",
       With(NeighborDefaults(),
            {{"adversarial_prob", 0.1}, {"dollar_prob", 0.5}})},
      {"value_text_augment",
       {{"policy", json::object()}, {"dollar_prob", 0.5}}},
      {"value_location_augment", json::object()},
      {"value_location_augment_star",
       {{"fields", json::array({"company", "address"})}}},
  };
  return *table;
}

[[noreturn]] void Bad(const TransformSpec& spec, const std::string& what) {
  throw ConfigError("transform '" + spec.name + "': " + what);
}

void CheckRange(const TransformSpec& spec, const std::string& key, double lo,
                double hi) {
  const double v = spec.params.at(key).get<double>();
  if (!(v >= lo && v <= hi)) {
    Bad(spec, "parameter '" + key + "' = " + std::to_string(v) +
                  " outside [" + std::to_string(lo) + ", " +
                  std::to_string(hi) + "]");
  }
}

NeighborOptions NeighborParams(const json& p) {
  NeighborOptions options;
  options.expand_rate = p.at("zone_expand_rate").get<double>();
  options.order_neighbors = p.at("order_neighbors").get<int>();
  options.expansion = ParseZoneExpansion(p.at("zone_expansion").get<std::string>());
  options.metric = ParseOverlapMetric(p.at("overlap_metric").get<std::string>());
  return options;
}

ValuePolicy ParsePolicy(const std::string& field, const json& entry) {
  ValuePolicy policy;
  const std::string kind =
      entry.is_string() ? entry.get<std::string>()
                        : entry.value("kind", std::string());
  if (kind == "replace_typed") {
    policy.kind = ValuePolicy::Kind::kReplaceTyped;
  } else if (kind == "skip") {
    policy.kind = ValuePolicy::Kind::kSkip;
  } else if (kind == "derived_percent") {
    if (!entry.is_object() || !entry.contains("base_field")) {
      throw ConfigError("policy for '" + field +
                        "': derived_percent needs base_field");
    }
    policy.kind = ValuePolicy::Kind::kDerivedPercent;
    policy.base_field = entry.at("base_field").get<std::string>();
    policy.low = entry.value("low", 0.0);
    policy.high = entry.value("high", 0.15);
    if (!(policy.low >= 0.0 && policy.low <= policy.high)) {
      throw ConfigError("policy for '" + field + "': need 0 <= low <= high");
    }
  } else {
    throw ConfigError("policy for '" + field + "': unknown kind '" + kind +
                      "'");
  }
  return policy;
}

ValuePolicyMap PolicyParams(const json& p) {
  ValuePolicyMap policies = DefaultValuePolicies();
  for (const auto& item : p.at("policy").items()) {
    policies[item.key()] = ParsePolicy(item.key(), item.value());
  }
  return policies;
}

MoneyOptions MoneyParams(const json& p) {
  MoneyOptions money;
  money.dollar_probability = p.at("dollar_prob").get<double>();
  return money;
}

std::shared_ptr<const SynonymLexicon> LexiconFor(
    const json& p, const TransformContext& context) {
  const std::string path = p.at("lexicon").get<std::string>();
  if (!path.empty()) {
    return std::make_shared<const SynonymLexicon>(SynonymLexicon::Load(path));
  }
  if (context.lexicon) return context.lexicon;
  return std::shared_ptr<const SynonymLexicon>(
      std::shared_ptr<const SynonymLexicon>{}, &SynonymLexicon::Builtin());
}

}  // namespace

const std::vector<std::string>& RegistryOrder() {
  static const auto* order = new std::vector<std::string>{
      "center_shift",     "box_stretch",          "margin_pad",
      "global_shuffle",   "neighbor_shuffle",     "non_neighbor_shuffle",
      "bg_drop",          "neighbor_bg_drop",     "key_drop",
      "bg_typo",          "bg_synonyms",          "bg_adversarial",
      "value_text_augment", "value_location_augment"};
  return *order;
}

const std::vector<std::string>& AllTransformNames() {
  static const auto* names = [] {
    auto* all = new std::vector<std::string>(RegistryOrder());
    all->push_back("value_location_augment_star");
    return all;
  }();
  return *names;
}

bool IsRegisteredTransform(std::string_view name) {
  return DefaultsTable().count(name) > 0;
}

const json& DefaultParams(std::string_view name) {
  const auto it = DefaultsTable().find(name);
  if (it == DefaultsTable().end()) {
    throw ConfigError("unknown transform '" + std::string(name) + "'");
  }
  return it->second;
}

TransformSpec ResolveSpec(const TransformSpec& spec) {
  const json& defaults = DefaultParams(spec.name);
  TransformSpec out = spec;
  if (out.params.is_null()) out.params = json::object();
  if (!out.params.is_object()) Bad(spec, "params must be an object");
  for (const auto& item : out.params.items()) {
    if (!defaults.contains(item.key())) {
      Bad(spec, "unknown parameter '" + item.key() + "'");
    }
    const json& expected = defaults.at(item.key());
    const json& given = item.value();
    const bool ok =
        expected.is_number_integer()
            ? given.is_number_integer()
            : (expected.is_number() ? given.is_number()
                                    : given.type() == expected.type());
    if (!ok) {
      Bad(spec, "parameter '" + item.key() + "' should be " +
                    std::string(expected.type_name()));
    }
  }
  for (const auto& item : defaults.items()) {
    if (!out.params.contains(item.key())) out.params[item.key()] = item.value();
  }

  const json& p = out.params;
  for (const auto& item : p.items()) {
    const std::string& key = item.key();
    const auto ends_with = [&](std::string_view suffix) {
      return key.size() >= suffix.size() &&
             key.compare(key.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    if (ends_with("_prob")) CheckRange(out, key, 0.0, 1.0);
    if (ends_with("_std") || key == "max_margin_ratio" ||
        key == "zone_expand_rate") {
      CheckRange(out, key, 0.0, 1e9);
    }
  }
  if (p.contains("order_neighbors") && p["order_neighbors"].get<int>() < 0) {
    Bad(out, "order_neighbors must be >= 0");
  }
  try {
    if (p.contains("zone_expansion")) NeighborParams(p);
    if (p.contains("eligible")) {
      ParseEligibleWords(p["eligible"].get<std::string>());
    }
    if (p.contains("policy")) PolicyParams(p);
  } catch (const json::exception& e) {
    Bad(out, e.what());
  }
  if (p.contains("fields")) {
    for (const json& f : p["fields"]) {
      if (!f.is_string()) Bad(out, "fields must be a list of strings");
    }
  }
  return out;
}

Document Transform::Apply(const Document& doc, TransformStats* stats) const {
  Rng rng(Rng::DeriveSeed(spec_.seed, spec_.name, doc.doc_id));
  return fn_(doc, rng, stats);
}

Transform MakeTransform(const TransformSpec& raw,
                        const TransformContext& context) {
  const TransformSpec spec = ResolveSpec(raw);
  const json& p = spec.params;
  const std::string& name = spec.name;
  using S = TransformStats;
  Transform::Fn fn;
  if (name == "center_shift") {
    const double s = p["shift_std"].get<double>();
    fn = [s](const Document& d, Rng& r, S* st) { return CenterShift(d, s, r, st); };
  } else if (name == "box_stretch") {
    const double s = p["stretch_std"].get<double>();
    fn = [s](const Document& d, Rng& r, S* st) { return BoxStretch(d, s, r, st); };
  } else if (name == "margin_pad") {
    const double m = p["max_margin_ratio"].get<double>();
    fn = [m](const Document& d, Rng& r, S* st) { return MarginPad(d, m, r, st); };
  } else if (name == "global_shuffle") {
    fn = [](const Document& d, Rng& r, S* st) { return GlobalShuffle(d, r, st); };
  } else if (name == "neighbor_shuffle") {
    const NeighborOptions o = NeighborParams(p);
    fn = [o](const Document& d, Rng& r, S* st) {
      return NeighborShuffle(d, o, r, st);
    };
  } else if (name == "non_neighbor_shuffle") {
    const NeighborOptions o = NeighborParams(p);
    fn = [o](const Document& d, Rng& r, S* st) {
      return NonNeighborShuffle(d, o, r, st);
    };
  } else if (name == "bg_drop") {
    const double q = p["drop_prob"].get<double>();
    const EligibleWords e = ParseEligibleWords(p["eligible"].get<std::string>());
    fn = [q, e](const Document& d, Rng& r, S* st) { return BgDrop(d, q, e, r, st); };
  } else if (name == "neighbor_bg_drop") {
    const NeighborOptions o = NeighborParams(p);
    fn = [o](const Document& d, Rng&, S* st) { return NeighborBgDrop(d, o, st); };
  } else if (name == "key_drop") {
    fn = [](const Document& d, Rng&, S* st) { return KeyDrop(d, st); };
  } else if (name == "bg_typo") {
    const double q = p["typo_prob"].get<double>();
    const EligibleWords e = ParseEligibleWords(p["eligible"].get<std::string>());
    fn = [q, e](const Document& d, Rng& r, S* st) { return BgTypo(d, q, e, r, st); };
  } else if (name == "bg_synonyms") {
    const double q = p["synonym_prob"].get<double>();
    const EligibleWords e = ParseEligibleWords(p["eligible"].get<std::string>());
    std::shared_ptr<const SynonymLexicon> lex = LexiconFor(p, context);
    fn = [q, e, lex](const Document& d, Rng& r, S* st) {
      return BgSynonyms(d, q, *lex, e, r, st);
    };
  } else if (name == "bg_adversarial") {
    const double q = p["adversarial_prob"].get<double>();
    const NeighborOptions o = NeighborParams(p);
    const MoneyOptions m = MoneyParams(p);
    fn = [q, o, m](const Document& d, Rng& r, S* st) {
      return BgAdversarial(d, q, o, m, r, st);
    };
  } else if (name == "value_text_augment") {
    const ValuePolicyMap policies = PolicyParams(p);
    const MoneyOptions m = MoneyParams(p);
    fn = [policies, m](const Document& d, Rng& r, S* st) {
      return ValueTextAugment(d, policies, m, r, st);
    };
  } else if (name == "value_location_augment") {
    fn = [](const Document& d, Rng& r, S* st) {
      return ValueLocationAugment(d, r, st);
    };
  } else if (name == "value_location_augment_star") {
    const auto fields = p["fields"].get<std::vector<std::string>>();
    fn = [fields](const Document& d, Rng&, S* st) {
      return ValueLocationAugmentStar(d, fields, st);
    };
  } else {
    throw ConfigError("unknown transform '" + name + "'");
  }
  return Transform(spec, std::move(fn));
}

TransformChain TransformChain::Create(std::span<const TransformSpec> specs,
                                      const TransformContext& context) {
  TransformChain chain;
  for (const TransformSpec& spec : specs) {
    chain.transforms_.push_back(MakeTransform(spec, context));
  }
  return chain;
}

Document TransformChain::Apply(const Document& doc,
                               std::vector<TransformStats>* stats) const {
  if (stats != nullptr) stats->assign(transforms_.size(), TransformStats{});
  Document current = doc;
  for (size_t i = 0; i < transforms_.size(); ++i) {
    current = transforms_[i].Apply(
        current, stats != nullptr ? &(*stats)[i] : nullptr);
  }
  return current;
}

std::string TransformChain::Name() const {
  if (transforms_.empty()) return "original";
  std::string name;
  for (const Transform& t : transforms_) {
    if (!name.empty()) name += '+';
    name += t.name();
  }
  return name;
}

std::vector<TransformSpec> TransformChain::Specs() const {
  std::vector<TransformSpec> specs;
  for (const Transform& t : transforms_) specs.push_back(t.spec());
  return specs;
}

Document ApplyChain(const Document& doc, std::span<const TransformSpec> specs,
                    const TransformContext& context) {
  return TransformChain::Create(specs, context).Apply(doc);
}

std::vector<TransformSpec> ParseChainConfig(const json& config,
                                            uint64_t default_seed) {
  const json* list = &config;
  if (config.is_object()) {
    if (!config.contains("chain")) {
      throw ConfigError("chain config object needs a 'chain' list");
    }
    list = &config["chain"];
  }
  if (!list->is_array()) throw ConfigError("chain must be a list");
  std::vector<TransformSpec> specs;
  for (const json& entry : *list) {
    TransformSpec spec;
    if (entry.is_string()) {
      spec.name = entry.get<std::string>();
      spec.seed = default_seed;
    } else if (entry.is_object()) {
      for (const auto& item : entry.items()) {
        if (item.key() != "name" && item.key() != "params" &&
            item.key() != "seed") {
          throw ConfigError("unknown key '" + item.key() + "' in chain entry");
        }
      }
      if (!entry.contains("name") || !entry["name"].is_string()) {
        throw ConfigError("chain entry needs a string 'name'");
      }
      spec.name = entry["name"].get<std::string>();
      spec.params = entry.value("params", json::object());
      spec.seed = entry.contains("seed") ? entry["seed"].get<uint64_t>()
                                         : default_seed;
    } else {
      throw ConfigError("chain entries must be names or objects");
    }
    specs.push_back(ResolveSpec(spec));
  }
  return specs;
}

std::vector<TransformSpec> LoadChainConfig(const std::filesystem::path& path,
                                           uint64_t default_seed) {
  return ParseChainConfig(LoadJsonFile(path), default_seed);
}

json ChainToJson(std::span<const TransformSpec> specs) {
  json out = json::array();
  for (const TransformSpec& spec : specs) {
    out.push_back(
        {{"name", spec.name}, {"params", spec.params}, {"seed", spec.seed}});
  }
  return out;
}

json ParseJsonWithComments(std::string_view text) {
  try {
    return json::parse(text, nullptr, /*allow_exceptions=*/true,
                       /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
}

json LoadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return ParseJsonWithComments(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace formattack
