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

#include "cli.h"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "formattack/baseline_extractor.h"
#include "formattack/corpus_io.h"
#include "formattack/errors.h"
#include "formattack/extract.h"
#include "formattack/metrics.h"
#include "formattack/registry.h"
#include "formattack/sweep.h"
#include "formattack/synth.h"
#include "formattack/worker.h"

namespace formattack {
namespace {

using nlohmann::json;

struct ExtractorChoice {
  std::string id;
  ExtractorFactory factory;
};

ExtractorChoice ChooseExtractor(const std::string& selector,
                                const std::vector<FieldConfig>& fields,
                                int timeout_ms, double threshold) {
  if (selector == "baseline") {
    return {selector, [fields] {
              return std::make_unique<BaselineExtractor>(fields);
            }};
  }
  if (selector == "truth") {
    return {selector, [] { return std::make_unique<TruthExtractor>(); }};
  }
  const std::string prefix = "worker:";
  if (selector.rfind(prefix, 0) == 0 && selector.size() > prefix.size()) {
    const std::string command = selector.substr(prefix.size());
    return {selector, [=] {
              return std::make_unique<WorkerExtractor>(
                  command, fields, std::chrono::milliseconds(timeout_ms),
                  threshold);
            }};
  }
  throw ConfigError("unknown extractor '" + selector +
                    "' (expected baseline, truth or worker:<command>)");
}

std::vector<std::string> SplitComma(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << text;
  if (!out) throw ValidationError("failed writing " + path);
}

void PrintScore(std::ostream& out, const CorpusScore& score) {
  char line[160];
  std::snprintf(line, sizeof(line), "%-24s %6s %6s %6s %8s %8s %8s\n",
                "field", "tp", "fp", "fn", "prec", "recall", "f1");
  out << line;
  for (const FieldScore& f : score.per_field) {
    std::snprintf(line, sizeof(line), "%-24s %6lld %6lld %6lld %8.4f %8.4f %8.4f\n",
                  f.field.c_str(), static_cast<long long>(f.tp),
                  static_cast<long long>(f.fp), static_cast<long long>(f.fn),
                  f.precision, f.recall, f.f1);
    out << line;
  }
  std::snprintf(line, sizeof(line), "%-24s %6s %6s %6s %8.4f %8.4f %8.4f\n",
                "macro", "", "", "", score.macro_precision, score.macro_recall,
                score.macro_f1);
  out << line;
}

struct SynthArgs {
  int n = 100;
  std::string kind = "invoice";
  uint64_t seed = 0;
  std::string out;
};

int Synth(const SynthArgs& a, std::ostream& out) {
  const std::vector<Document> corpus =
      SynthCorpus(ParseSynthTemplate(a.kind), a.n, a.seed);
  SaveCorpus(a.out, corpus);
  out << "wrote " << corpus.size() << " " << a.kind << " documents to "
      << a.out << "\n";
  return kExitOk;
}

struct TransformArgs {
  std::string corpus;
  std::string chain;
  std::string transforms;
  std::string out;
  uint64_t seed = 0;
  std::string lexicon;
  bool paper_defaults = false;
};

TransformContext MakeContext(const std::string& lexicon) {
  TransformContext context;
  if (!lexicon.empty()) {
    context.lexicon =
        std::make_shared<SynonymLexicon>(SynonymLexicon::Load(lexicon));
  }
  return context;
}

std::vector<TransformSpec> ChainSpecs(const TransformArgs& a) {
  std::vector<TransformSpec> specs;
  if (!a.chain.empty()) {
    specs = LoadChainConfig(a.chain, a.seed);
  } else {
    json names = json::array();
    for (const std::string& name : SplitComma(a.transforms)) {
      names.push_back(name);
    }
    specs = ParseChainConfig(names, a.seed);
  }
  if (a.paper_defaults) {
    for (TransformSpec& spec : specs) {
      spec = ResolveSpec({spec.name, json::object(), spec.seed});
    }
  }
  return specs;
}

int TransformCmd(const TransformArgs& a, std::ostream& out) {
  const std::vector<TransformSpec> specs = ChainSpecs(a);
  const std::vector<Document> corpus = LoadCorpus(a.corpus);
  const TransformChain chain =
      TransformChain::Create(specs, MakeContext(a.lexicon));
  std::vector<TransformStats> totals(specs.size());
  std::vector<Document> result;
  result.reserve(corpus.size());
  for (const Document& doc : corpus) {
    std::vector<TransformStats> stats;
    result.push_back(chain.Apply(doc, &stats));
    for (size_t i = 0; i < stats.size(); ++i) totals[i].Merge(stats[i]);
  }
  SaveCorpus(a.out, result);
  out << "transformed " << result.size() << " documents with "
      << chain.Name() << "\n";
  for (size_t i = 0; i < specs.size(); ++i) {
    const TransformStats& s = totals[i];
    out << specs[i].name << ": dropped=" << s.words_dropped
        << " changed=" << s.words_changed << " moved=" << s.words_moved
        << " reordered=" << s.words_reordered
        << " skipped_fields=" << s.skipped_fields.size() << "\n";
  }
  return kExitOk;
}

struct EvaluateArgs {
  std::string corpus;
  std::string extractor = "baseline";
  std::string fields = "invoice";
  std::string out;
  int timeout_ms = 30000;
  double threshold = kDefaultScoreThreshold;
  bool case_insensitive = false;
};

int Evaluate(const EvaluateArgs& a, std::ostream& out) {
  const std::vector<FieldConfig> fields = LoadFieldsConfig(a.fields);
  const std::vector<Document> corpus = LoadCorpus(a.corpus);
  const ExtractorChoice choice =
      ChooseExtractor(a.extractor, fields, a.timeout_ms, a.threshold);
  const std::unique_ptr<Extractor> extractor = choice.factory();
  std::vector<ExtractionResult> preds;
  json failures = json::array();
  for (const Document& doc : corpus) {
    preds.push_back(extractor->Extract(doc));
    if (preds.back().failed) {
      failures.push_back(
          {{"doc_id", doc.doc_id}, {"error", preds.back().error}});
    }
  }
  ScoreOptions options;
  options.case_sensitive = !a.case_insensitive;
  ReportRow row;
  row.score = ScoreCorpus(preds, corpus, fields, options);
  json names = json::array();
  for (const FieldConfig& f : fields) names.push_back(f.name);
  const json report = {{"extractor", choice.id},
                       {"fields", names},
                       {"documents", corpus.size()},
                       {"score", RowToJson(row).at("score")},
                       {"failures", failures}};
  if (!a.out.empty()) WriteText(a.out, report.dump(2) + "\n");
  PrintScore(out, row.score);
  out << "documents=" << corpus.size() << " failed=" << failures.size()
      << "\n";
  return failures.empty() ? kExitOk : kExitExtractorFailures;
}

struct SweepArgs {
  std::string plan;
  std::string corpus;
  std::string extractor;
  std::string fields;
  std::string out;
  std::string table;
  std::string cache_dir;
  std::string order;
  std::string lexicon;
  int k = 0;
  uint64_t seed = 0;
  size_t top = 0;
  int threads = 0;
  int timeout_ms = 30000;
  bool paper_defaults = false;
  bool quiet = false;
};

int SweepCmd(const SweepArgs& a, const CLI::App& cmd, std::ostream& out,
             std::ostream& err) {
  SweepPlan plan = a.plan.empty() ? SweepPlan{} : LoadSweepPlan(a.plan);
  if (cmd.count("--k")) plan.k = a.k;
  if (cmd.count("--seed")) plan.seed = a.seed;
  if (cmd.count("--top")) plan.top = a.top;
  if (cmd.count("--order")) plan.order = ParseChainOrder(a.order);
  if (!a.corpus.empty()) plan.corpus = a.corpus;
  if (!a.extractor.empty()) plan.extractor = a.extractor;
  if (!a.fields.empty()) plan.fields = a.fields;
  if (plan.extractor.empty()) plan.extractor = "baseline";
  if (plan.fields.empty()) plan.fields = "invoice";
  if (a.paper_defaults) plan.params.clear();
  if (plan.corpus.empty()) {
    throw ConfigError("sweep needs a corpus (--corpus or the plan's corpus)");
  }

  const std::vector<FieldConfig> fields = LoadFieldsConfig(plan.fields);
  const std::vector<Document> corpus = LoadCorpus(plan.corpus);
  const ExtractorChoice choice =
      ChooseExtractor(plan.extractor, fields, a.timeout_ms,
                      kDefaultScoreThreshold);
  SweepOptions options;
  options.cache_dir = a.cache_dir;
  options.threads =
      a.threads > 0 ? a.threads
                    : std::max(1u, std::thread::hardware_concurrency());
  options.extractor_id = choice.id;
  options.context = MakeContext(a.lexicon);
  if (!a.quiet) {
    options.log = [&err](const std::string& line) { err << line << "\n"; };
  }
  const RobustnessReport report =
      RunSweep(plan, corpus, fields, choice.factory, options);
  if (!a.out.empty()) WriteText(a.out, ReportToJson(report).dump(2) + "\n");
  if (!a.table.empty()) WriteText(a.table, ReportTable(report));
  out << ReportTable(report, plan.top);

  bool failures = report.original.score.docs_failed > 0;
  for (const ReportRow& row : report.rows) {
    failures = failures || row.score.docs_failed > 0;
  }
  return failures ? kExitExtractorFailures : kExitOk;
}

int List(std::ostream& out) {
  for (const std::string& name : AllTransformNames()) {
    out << name << " " << DefaultParams(name).dump() << "\n";
  }
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Robustness toolkit for form field extraction"};
  app.name("formattack");
  app.require_subcommand(1);

  SynthArgs synth;
  CLI::App* synth_cmd = app.add_subcommand("synth", "Generate a synthetic corpus");
  synth_cmd->add_option("--n", synth.n, "Number of documents")
      ->check(CLI::NonNegativeNumber);
  synth_cmd->add_option("--template", synth.kind, "invoice or receipt")
      ->check(CLI::IsMember({"invoice", "receipt"}));
  synth_cmd->add_option("--seed", synth.seed, "Random seed");
  synth_cmd->add_option("--out", synth.out, "Output JSONL corpus")->required();

  TransformArgs transform;
  CLI::App* transform_cmd =
      app.add_subcommand("transform", "Apply a transform chain to a corpus");
  transform_cmd->add_option("--corpus", transform.corpus, "Input corpus")
      ->required();
  auto* chain_opt =
      transform_cmd->add_option("--chain", transform.chain, "Chain config file");
  auto* names_opt = transform_cmd->add_option(
      "--transforms", transform.transforms,
      "Comma-separated transform names (default parameters)");
  chain_opt->excludes(names_opt);
  transform_cmd->add_option("--out", transform.out, "Output corpus")
      ->required();
  transform_cmd->add_option("--seed", transform.seed,
                            "Seed for entries without one");
  transform_cmd->add_option("--lexicon", transform.lexicon,
                            "Synonym lexicon file");
  transform_cmd->add_flag("--paper-defaults", transform.paper_defaults,
                          "Ignore configured parameters, use the defaults");

  EvaluateArgs evaluate;
  CLI::App* evaluate_cmd =
      app.add_subcommand("evaluate", "Extract and score a corpus");
  evaluate_cmd->add_option("--corpus", evaluate.corpus, "Corpus")->required();
  evaluate_cmd->add_option("--extractor", evaluate.extractor,
                           "baseline, truth or worker:<command>");
  evaluate_cmd->add_option("--fields", evaluate.fields,
                           "invoice, receipt or a fields config file");
  evaluate_cmd->add_option("--out", evaluate.out, "Report file (JSON)");
  evaluate_cmd->add_option("--timeout", evaluate.timeout_ms,
                           "Worker timeout per document in ms");
  evaluate_cmd->add_option("--threshold", evaluate.threshold,
                           "Score threshold for worker scores");
  evaluate_cmd->add_flag("--case-insensitive", evaluate.case_insensitive,
                         "Compare values ignoring ASCII case");

  SweepArgs sweep;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Score every k-transform combination");
  sweep_cmd->add_option("--plan", sweep.plan, "Sweep plan file");
  sweep_cmd->add_option("--corpus", sweep.corpus, "Corpus");
  sweep_cmd->add_option("--extractor", sweep.extractor,
                        "baseline, truth or worker:<command>");
  sweep_cmd->add_option("--fields", sweep.fields,
                        "invoice, receipt or a fields config file");
  sweep_cmd->add_option("--k", sweep.k, "Transforms per chain");
  sweep_cmd->add_option("--seed", sweep.seed, "Seed of every transform");
  sweep_cmd->add_option("--top", sweep.top, "Rows printed (0 = all)");
  sweep_cmd->add_option("--order", sweep.order, "canonical or reverse")
      ->check(CLI::IsMember({"canonical", "reverse"}));
  sweep_cmd->add_option("--out", sweep.out, "Report file (JSON)");
  sweep_cmd->add_option("--table", sweep.table, "Full table file (CSV)");
  sweep_cmd->add_option("--cache-dir", sweep.cache_dir,
                        "Directory of cached chain results");
  sweep_cmd->add_option("--threads", sweep.threads,
                        "Parallel chains (default: all cores)");
  sweep_cmd->add_option("--timeout", sweep.timeout_ms,
                        "Worker timeout per document in ms");
  sweep_cmd->add_option("--lexicon", sweep.lexicon, "Synonym lexicon file");
  sweep_cmd->add_flag("--paper-defaults", sweep.paper_defaults,
                      "Ignore the plan's parameters, use the defaults");
  sweep_cmd->add_flag("--quiet", sweep.quiet, "No progress lines");

  CLI::App* list_cmd =
      app.add_subcommand("list", "List transforms and their defaults");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (synth_cmd->parsed()) return Synth(synth, out);
    if (transform_cmd->parsed()) {
      if (transform.chain.empty() && !transform_cmd->count("--transforms")) {
        throw ConfigError("transform needs --chain or --transforms");
      }
      return TransformCmd(transform, out);
    }
    if (evaluate_cmd->parsed()) return Evaluate(evaluate, out);
    if (sweep_cmd->parsed()) return SweepCmd(sweep, *sweep_cmd, out, err);
    if (list_cmd->parsed()) return List(out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const WorkerError& e) {
    err << "extractor error: " << e.what() << "\n";
    return kExitExtractorFailures;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}

}  // namespace formattack
