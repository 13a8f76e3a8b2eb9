#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "revsum/corpus.h"
#include "revsum/diagnostics.h"
#include "revsum/filters.h"

namespace revsum {

enum class TokenNormalization { kSurfaceLower, kStemmed };

TokenNormalization parse_token_normalization(std::string_view name);
std::string_view token_normalization_name(TokenNormalization n);

struct EvalConfig {
  double recall_threshold = 0.25;  // alpha: minimum R(Y) for a useful segment
  TokenNormalization normalization = TokenNormalization::kStemmed;

  void validate() const;
};

using TokenSeq = std::vector<std::string>;

TokenSeq normalize_text(std::string_view text, TokenNormalization n);
TokenSeq normalize_segment(const Segment& segment, TokenNormalization n);

// Number of ordered pairs (any gap) shared by x and y, each distinct pair
// counted min(#x, #y) times.
long skip2(const TokenSeq& x, const TokenSeq& y);

struct PrPair {
  double precision = 0.0;  // skip2 / C(|y|, 2)
  double recall = 0.0;     // skip2 / C(|x|, 2)
};

// x is a reference item, y a candidate segment. A one-token side has no
// pairs; its ratio is 1 when that token occurs in the other sequence.
PrPair pr_pair(const TokenSeq& x, const TokenSeq& y);

struct SegmentScore {
  double precision = 0.0;
  double recall = 0.0;
  int x_max = -1;  // index into the reference; -1 when the reference is empty
};

// Best-recall reference item for y (first one on ties).
SegmentScore segment_scores(const TokenSeq& y, const std::vector<TokenSeq>& reference);

struct EntityScores {
  double p_skip = 0.0;
  double r_skip = 0.0;
  double p_e = 0.0;
  double r_e = 0.0;
  double p_cb = 0.0;
  double r_cb = 0.0;
  std::vector<SegmentScore> segments;
  size_t num_candidates = 0;
  size_t num_references = 0;
  bool empty_candidate = false;
};

EntityScores entity_scores(const std::vector<TokenSeq>& candidates, const std::vector<TokenSeq>& reference,
                           double alpha);

struct CorpusStats {
  double p_s = 0.0;  // micro-averaged over segments
  double r_s = 0.0;
  double p_e = 0.0;  // macro-averaged over entities
  double r_e = 0.0;
  double p = 0.0;
  double r = 0.0;
  int num_entities = 0;
  long num_segments = 0;
};

// Throws DataError for an empty list.
CorpusStats corpus_stats(const std::vector<EntityScores>& entities);

struct EntityEval {
  std::string entity_id;
  std::optional<EntityScores> pros;  // absent when the entity has no pros reference
  std::optional<EntityScores> cons;
  std::vector<std::string> positive_texts;
  std::vector<std::string> negative_texts;
};

struct EvalReport {
  std::string procedure;
  std::vector<EntityEval> entities;
  std::optional<CorpusStats> pros;
  std::optional<CorpusStats> cons;
  std::vector<std::string> excluded;  // candidates without references
  std::vector<std::string> flagged;   // empty candidate or reference sides

  nlohmann::json to_json() const;
};

// Scores positive candidates against pros and negative candidates against
// cons for every entity that has references.
EvalReport evaluate(const std::map<std::string, CandidateSplit>& candidates,
                    const std::map<std::string, ReferenceSummary>& references, const EvalConfig& cfg,
                    Diagnostics* diag = nullptr);

// Aligned text table with P_s, R_s, P_e, R_e, P, R for pros and cons, one
// row per labelled report, values in percent.
std::string eval_table_text(const std::vector<std::pair<std::string, const EvalReport*>>& rows);

}  // namespace revsum
