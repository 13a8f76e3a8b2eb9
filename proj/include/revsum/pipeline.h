#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "revsum/config.h"
#include "revsum/corpus.h"
#include "revsum/diagnostics.h"
#include "revsum/eval.h"
#include "revsum/filters.h"
#include "revsum/model.h"
#include "revsum/patterns.h"

namespace revsum {

SentimentWordRule sentiment_rule(const PipelineConfig& cfg);
MatchOptions match_options(const PipelineConfig& cfg);
SeedList seed_list(const PipelineConfig& cfg);
std::set<std::string> stopword_list(const PipelineConfig& cfg);
std::optional<PolarityLexicon> load_lexicon(const PipelineConfig& cfg);

// Reads paths.corpus in the configured format.
Corpus load_input_corpus(const PipelineConfig& cfg, Diagnostics* diag = nullptr);
// Writes the processed corpus (stems and sentiment flags included).
void save_processed_corpus(const PipelineConfig& cfg, const Corpus& corpus);
Corpus load_processed_corpus(const PipelineConfig& cfg);

ModelState train_model(const PipelineConfig& cfg, const Corpus& corpus, const TrainObserver* observer = nullptr,
                       Diagnostics* diag = nullptr);
// Writes the vocabulary and the checkpoint.
void save_model(const PipelineConfig& cfg, const ModelState& state);
ModelState load_model(const PipelineConfig& cfg, const Corpus& corpus);

// Pattern matches followed by aspect labeling.
std::vector<Segment> labeled_segments(const Corpus& corpus, const ModelState& state, const PosteriorEstimates& est,
                                      const std::set<int>& pattern_ids, const MatchOptions& options,
                                      Diagnostics* diag = nullptr);

// Runs the procedure separately for each entity (sorted by id).
std::map<std::string, CandidateSplit> candidates_by_entity(const std::vector<Segment>& labeled,
                                                           const Procedure& procedure,
                                                           const ProcedureContext& ctx);

std::vector<nlohmann::json> candidate_records(const std::map<std::string, CandidateSplit>& candidates);

EvalReport evaluate_procedure(const Corpus& corpus, const ModelState& state, const PosteriorEstimates& est,
                              const PolarityLexicon* lexicon, const PipelineConfig& cfg,
                              const Procedure& procedure, const std::set<int>& pattern_ids,
                              Diagnostics* diag = nullptr);

struct RankedSegment {
  Segment segment;
  double score = 0.0;
};

struct SummaryResult {
  std::string id;
  std::vector<RankedSegment> positive;
  std::vector<RankedSegment> negative;

  nlohmann::json to_json() const;
  std::string to_text() const;
};

// Segments of an entity (or, failing that, a review) after the procedure,
// ordered by descending RANK score, at most top_n per polarity.
SummaryResult summarize(const Corpus& corpus, const ModelState& state, const PosteriorEstimates& est,
                        const PolarityLexicon* lexicon, const PipelineConfig& cfg, const Procedure& procedure,
                        const std::string& id, int top_n, Diagnostics* diag = nullptr);

}  // namespace revsum
