#include "revsum/pipeline.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "revsum/checkpoint.h"
#include "revsum/error.h"
#include "revsum/fixture_tagger.h"
#include "revsum/stemmer.h"
#include "revsum/text.h"
#include "revsum/vocabulary.h"

namespace revsum {

namespace fs = std::filesystem;

SentimentWordRule sentiment_rule(const PipelineConfig& cfg) {
  if (cfg.paths.sentiment_words.empty()) return SentimentWordRule();
  return SentimentWordRule::from_words(read_word_list(cfg.paths.sentiment_words));
}

MatchOptions match_options(const PipelineConfig& cfg) {
  MatchOptions opts;
  opts.max_words = cfg.max_words;
  if (!cfg.paths.negation_words.empty()) {
    opts.negation_words.clear();
    for (const auto& w : read_word_list(cfg.paths.negation_words)) opts.negation_words.insert(to_lower(w));
  }
  return opts;
}

SeedList seed_list(const PipelineConfig& cfg) {
  return cfg.paths.seeds.empty() ? SeedList::defaults() : SeedList::load(cfg.paths.seeds);
}

std::set<std::string> stopword_list(const PipelineConfig& cfg) {
  if (cfg.paths.stopwords.empty()) return default_stopwords();
  std::set<std::string> out;
  for (const auto& w : read_word_list(cfg.paths.stopwords)) out.insert(to_lower(w));
  return out;
}

std::optional<PolarityLexicon> load_lexicon(const PipelineConfig& cfg) {
  if (cfg.paths.lexicon.empty()) return std::nullopt;
  return PolarityLexicon::load(cfg.paths.lexicon);
}

Corpus load_input_corpus(const PipelineConfig& cfg, Diagnostics* diag) {
  if (cfg.paths.corpus.empty()) throw ConfigError("paths.corpus is not set");
  const SentimentWordRule rule = sentiment_rule(cfg);
  if (cfg.paths.corpus_format == "raw") return ingest_raw_jsonl(cfg.paths.corpus, FixtureTagger(), rule, diag);
  return ingest_tagged(cfg.paths.corpus, parse_corpus_format(cfg.paths.corpus_format), rule, diag);
}

void save_processed_corpus(const PipelineConfig& cfg, const Corpus& corpus) {
  fs::create_directories(cfg.paths.output_dir);
  std::ofstream out(cfg.processed_corpus_path());
  if (!out) throw DataError("cannot write " + cfg.processed_corpus_path());
  write_corpus_jsonl(corpus, out);
}

Corpus load_processed_corpus(const PipelineConfig& cfg) {
  if (!fs::is_regular_file(cfg.processed_corpus_path()))
    throw DataError("no processed corpus at " + cfg.processed_corpus_path() + " (run preprocess first)");
  return read_corpus_jsonl(cfg.processed_corpus_path());
}

ModelState train_model(const PipelineConfig& cfg, const Corpus& corpus, const TrainObserver* observer,
                       Diagnostics* diag) {
  Vocabulary vocab = build_vocabulary(corpus, cfg.min_count, stopword_list(cfg));
  return train(corpus, vocab, cfg.hyperparams, seed_list(cfg), cfg.schedule, cfg.rng_seed, observer, diag);
}

void save_model(const PipelineConfig& cfg, const ModelState& state) {
  fs::create_directories(cfg.paths.output_dir);
  std::ofstream out(cfg.vocabulary_path());
  if (!out) throw DataError("cannot write " + cfg.vocabulary_path());
  out << state.vocab().to_json().dump() << "\n";
  out.close();
  const fs::path ckpt(cfg.checkpoint_path());
  if (ckpt.has_parent_path()) fs::create_directories(ckpt.parent_path());
  save_checkpoint(state, cfg.checkpoint_path());
}

ModelState load_model(const PipelineConfig& cfg, const Corpus& corpus) {
  std::ifstream in(cfg.vocabulary_path());
  if (!in) throw DataError("no vocabulary at " + cfg.vocabulary_path() + " (run train first)");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(cfg.vocabulary_path(), 0, e.what());
  }
  Vocabulary vocab = Vocabulary::from_json(j);
  return load_checkpoint(cfg.checkpoint_path(), ModelData::from_corpus(corpus, vocab), vocab);
}

std::vector<Segment> labeled_segments(const Corpus& corpus, const ModelState& state, const PosteriorEstimates& est,
                                      const std::set<int>& pattern_ids, const MatchOptions& options,
                                      Diagnostics* diag) {
  return label_aspects(extract_corpus(corpus, pattern_ids, options), state, est, diag);
}

std::map<std::string, CandidateSplit> candidates_by_entity(const std::vector<Segment>& labeled,
                                                           const Procedure& procedure,
                                                           const ProcedureContext& ctx) {
  std::map<std::string, std::vector<Segment>> groups;
  for (const auto& s : labeled) groups[s.entity_id].push_back(s);
  std::map<std::string, CandidateSplit> out;
  for (auto& [entity, segs] : groups) out[entity] = run_procedure(procedure, std::move(segs), ctx);
  return out;
}

std::vector<nlohmann::json> candidate_records(const std::map<std::string, CandidateSplit>& candidates) {
  std::vector<nlohmann::json> out;
  for (const auto& [entity, split] : candidates) {
    for (const char* polarity : {"positive", "negative"}) {
      const auto& segs = std::string_view(polarity) == "positive" ? split.positive : split.negative;
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& s : segs) arr.push_back(segment_to_json(s));
      out.push_back({{"entity_id", entity}, {"polarity", polarity}, {"segments", std::move(arr)}});
    }
  }
  return out;
}

EvalReport evaluate_procedure(const Corpus& corpus, const ModelState& state, const PosteriorEstimates& est,
                              const PolarityLexicon* lexicon, const PipelineConfig& cfg,
                              const Procedure& procedure, const std::set<int>& pattern_ids, Diagnostics* diag) {
  if (corpus.reviews.empty()) throw DataError("empty corpus");
  const ProcedureContext ctx{&state, &est, lexicon, cfg.filters};
  auto segments = labeled_segments(corpus, state, est, pattern_ids, match_options(cfg), diag);
  auto candidates = candidates_by_entity(segments, procedure, ctx);
  // Entities without any segment still get an (empty) candidate summary.
  for (const auto& r : corpus.reviews) candidates.try_emplace(r.entity_id);
  EvalReport report = evaluate(candidates, build_reference_summaries(corpus), cfg.eval, diag);
  report.procedure = procedure.name;
  return report;
}

SummaryResult summarize(const Corpus& corpus, const ModelState& state, const PosteriorEstimates& est,
                        const PolarityLexicon* lexicon, const PipelineConfig& cfg, const Procedure& procedure,
                        const std::string& id, int top_n, Diagnostics* diag) {
  if (top_n < 1) throw ConfigError("top-n must be >= 1");
  Corpus subset;
  for (const auto& r : corpus.reviews)
    if (r.entity_id == id) subset.reviews.push_back(r);
  if (subset.reviews.empty())
    for (const auto& r : corpus.reviews)
      if (r.id == id) subset.reviews.push_back(r);
  if (subset.reviews.empty()) throw DataError("unknown entity or review id '" + id + "'");

  const ProcedureContext ctx{&state, &est, lexicon, cfg.filters};
  auto segments = labeled_segments(subset, state, est, cfg.pattern_ids(), match_options(cfg), diag);
  CandidateSplit split = run_procedure(procedure, std::move(segments), ctx);

  SummaryResult result;
  result.id = id;
  auto rank = [&](std::vector<Segment>& segs, std::vector<RankedSegment>& out) {
    for (auto& s : segs) {
      double score = rank_score(s, state, est, *s.sentiment, *s.aspect);
      out.push_back({std::move(s), score});
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const RankedSegment& a, const RankedSegment& b) { return a.score > b.score; });
    if (static_cast<int>(out.size()) > top_n) out.resize(top_n);
  };
  rank(split.positive, result.positive);
  rank(split.negative, result.negative);
  return result;
}

nlohmann::json SummaryResult::to_json() const {
  auto list = [](const std::vector<RankedSegment>& segs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : segs) {
      nlohmann::json j = segment_to_json(r.segment);
      j["rank_score"] = r.score;
      arr.push_back(std::move(j));
    }
    return arr;
  };
  return {{"id", id}, {"positive", list(positive)}, {"negative", list(negative)}};
}

std::string SummaryResult::to_text() const {
  std::ostringstream out;
  out << "summary for " << id << "\n";
  for (const auto& [label, segs] : {std::pair{"positive", &positive}, std::pair{"negative", &negative}}) {
    out << label << ":\n";
    if (segs->empty()) out << "  (none)\n";
    for (const auto& r : *segs) out << "  " << r.segment.text() << "\n";
  }
  return out.str();
}

}  // namespace revsum
