// Command-line driver: preprocess, train, extract, summarize, evaluate, topics.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "revsum/checkpoint.h"
#include "revsum/config.h"
#include "revsum/corpus.h"
#include "revsum/error.h"
#include "revsum/eval.h"
#include "revsum/filters.h"
#include "revsum/model.h"
#include "revsum/patterns.h"
#include "revsum/pipeline.h"
#include "revsum/topic_report.h"

namespace fs = std::filesystem;
using namespace revsum;

namespace {

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> procedure;
  std::optional<std::string> patterns;
  std::optional<int> top_n;
  std::optional<int> iters;
  std::string entity;
  bool resume = false;
  bool per_pattern = false;
};

PipelineConfig resolve_config(const Options& o) {
  PipelineConfig cfg = load_config(o.config);
  if (o.seed) cfg.rng_seed = *o.seed;
  if (o.procedure) cfg.procedure = *o.procedure;
  if (o.patterns) cfg.patterns = *o.patterns;
  if (o.top_n) cfg.top_n = *o.top_n;
  if (o.iters) cfg.schedule.total = *o.iters;
  cfg.validate();
  return cfg;
}

std::string out_path(const PipelineConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.paths.output_dir);
  return (fs::path(cfg.paths.output_dir) / name).string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << text;
}

void write_jsonl(const std::string& path, const std::vector<nlohmann::json>& lines) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  for (const auto& j : lines) out << j.dump() << "\n";
}

void write_topics(const PipelineConfig& cfg, const ModelState& state, int top_n) {
  auto report = topic_report(state, estimate(state), top_n);
  write_text(out_path(cfg, "topics.json"), topic_report_json(report).dump(2) + "\n");
  const std::string text = topic_report_text(report);
  write_text(out_path(cfg, "topics.txt"), text);
  std::cout << text;
}

int cmd_preprocess(const Options& o) {
  PipelineConfig cfg = resolve_config(o);
  Corpus corpus = load_input_corpus(cfg);
  save_processed_corpus(cfg, corpus);
  nlohmann::json refs = nlohmann::json::object();
  for (const auto& [entity, ref] : build_reference_summaries(corpus))
    refs[entity] = {{"pros", ref.pros}, {"cons", ref.cons}};
  write_text(out_path(cfg, "references.json"), refs.dump(2) + "\n");
  std::cout << "reviews " << corpus.reviews.size() << ", sentences " << corpus.sentence_count() << ", tokens "
            << corpus.token_count() << " -> " << cfg.processed_corpus_path() << "\n";
  return 0;
}

int cmd_train(const Options& o) {
  PipelineConfig cfg = resolve_config(o);
  Corpus corpus = load_processed_corpus(cfg);
  TrainObserver observer;
  observer.on_optimize = [](int sweep, const OptimizeResult& r) {
    std::cerr << "sweep " << sweep << ": objective " << r.objective_before << " -> " << r.objective_after << " ("
              << r.iterations << " iterations)\n";
  };
  std::optional<ModelState> state;
  if (o.resume) {
    state.emplace(load_model(cfg, corpus));
    continue_training(*state, cfg.schedule, &observer);
  } else {
    state.emplace(train_model(cfg, corpus, &observer));
  }
  save_model(cfg, *state);
  std::cerr << "checkpoint " << cfg.checkpoint_path() << " after " << state->sweeps_done() << " sweeps\n";
  write_topics(cfg, *state, cfg.top_n);
  return 0;
}

int cmd_extract(const Options& o) {
  PipelineConfig cfg = resolve_config(o);
  Corpus corpus = load_processed_corpus(cfg);
  auto segments = extract_corpus(corpus, cfg.pattern_ids(), match_options(cfg));
  std::vector<nlohmann::json> lines;
  std::map<int, int> per_pattern;
  for (const auto& s : segments) {
    lines.push_back(segment_to_json(s));
    ++per_pattern[s.pattern_id];
  }
  write_jsonl(out_path(cfg, "segments.jsonl"), lines);
  std::cout << "segments " << segments.size();
  for (const auto& [id, n] : per_pattern) std::cout << ", pattern " << id << ": " << n;
  std::cout << "\n";
  return 0;
}

int cmd_summarize(const Options& o) {
  PipelineConfig cfg = resolve_config(o);
  if (o.entity.empty()) throw ConfigError("summarize needs --entity");
  Corpus corpus = load_processed_corpus(cfg);
  ModelState state = load_model(cfg, corpus);
  PosteriorEstimates est = estimate(state);
  auto lexicon = load_lexicon(cfg);
  Procedure proc = Procedure::parse(cfg.procedure);
  SummaryResult summary = summarize(corpus, state, est, lexicon ? &*lexicon : nullptr, cfg, proc, o.entity,
                                    cfg.top_n);
  write_text(out_path(cfg, "summary_" + o.entity + ".json"), summary.to_json().dump(2) + "\n");
  std::cout << summary.to_text();
  return 0;
}

int cmd_evaluate(const Options& o) {
  PipelineConfig cfg = resolve_config(o);
  Corpus corpus = load_processed_corpus(cfg);
  ModelState state = load_model(cfg, corpus);
  PosteriorEstimates est = estimate(state);
  auto lexicon = load_lexicon(cfg);
  const PolarityLexicon* lex = lexicon ? &*lexicon : nullptr;
  Procedure proc = Procedure::parse(cfg.procedure);

  std::vector<std::pair<std::string, std::set<int>>> runs;
  if (o.per_pattern) {
    for (int id : cfg.pattern_ids()) runs.push_back({"pattern" + std::to_string(id), {id}});
  } else {
    runs.push_back({"", cfg.pattern_ids()});
  }
  std::vector<EvalReport> reports;
  for (const auto& [suffix, ids] : runs) {
    reports.push_back(evaluate_procedure(corpus, state, est, lex, cfg, proc, ids));
    const std::string stem = "eval_" + proc.name + (suffix.empty() ? "" : "_" + suffix);
    write_text(out_path(cfg, stem + ".json"), reports.back().to_json().dump(2) + "\n");
  }
  std::vector<std::pair<std::string, const EvalReport*>> rows;
  for (size_t i = 0; i < runs.size(); ++i)
    rows.push_back({runs[i].first.empty() ? proc.name : proc.name + " " + runs[i].first, &reports[i]});
  const std::string table = eval_table_text(rows);
  write_text(out_path(cfg, "eval_" + proc.name + (o.per_pattern ? "_patterns" : "") + ".txt"), table);
  std::cout << table;
  return 0;
}

int cmd_topics(const Options& o) {
  PipelineConfig cfg = resolve_config(o);
  Corpus corpus = load_processed_corpus(cfg);
  ModelState state = load_model(cfg, corpus);
  write_topics(cfg, state, cfg.top_n);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Review summarization with a joint aspect/sentiment topic model"};
  app.require_subcommand(1);
  Options o;
  auto common = [&o](CLI::App* sub) {
    sub->add_option("--config", o.config, "pipeline config (INI)")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", o.seed, "rng seed override");
    sub->add_option("--patterns", o.patterns, "service, product or a list such as 1,3,5");
    sub->add_option("--procedure", o.procedure, "stage list such as AW+SEN+SW");
    sub->add_option("--top-n", o.top_n, "words per topic or segments per polarity");
  };
  auto* pre = app.add_subcommand("preprocess", "tag/normalize the input corpus");
  auto* tr = app.add_subcommand("train", "fit the model and write a checkpoint");
  auto* ex = app.add_subcommand("extract", "match patterns over the processed corpus");
  auto* su = app.add_subcommand("summarize", "summary for one entity or review");
  auto* ev = app.add_subcommand("evaluate", "score a procedure against pros/cons");
  auto* tp = app.add_subcommand("topics", "print the topic report of a checkpoint");
  for (auto* sub : {pre, tr, ex, su, ev, tp}) common(sub);
  tr->add_option("--iters", o.iters, "total sweeps (overrides schedule.total)");
  tr->add_flag("--resume", o.resume, "continue from the existing checkpoint");
  su->add_option("--entity", o.entity, "entity id (or review id)")->required();
  ev->add_flag("--per-pattern", o.per_pattern, "one report per selected pattern");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*pre) return cmd_preprocess(o);
    if (*tr) return cmd_train(o);
    if (*ex) return cmd_extract(o);
    if (*su) return cmd_summarize(o);
    if (*ev) return cmd_evaluate(o);
    if (*tp) return cmd_topics(o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
