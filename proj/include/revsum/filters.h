#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "revsum/classify.h"
#include "revsum/diagnostics.h"
#include "revsum/model.h"
#include "revsum/patterns.h"

namespace revsum {

struct FilterConfig {
  int aw_top_x = 200;
  int sw_top_y = 100;
  double rank_keep_fraction = 0.5;

  void validate() const;  // throws ConfigError
};

enum class Stage { kBaseline, kAw, kSw, kRank, kSen, kSwn };

std::string_view stage_name(Stage stage);
bool is_classifier(Stage stage);

// A "+"-joined stage list such as "AW+SEN+SW", applied left to right.
struct Procedure {
  std::string name;
  std::vector<Stage> stages;

  // Rejects unknown tokens, more than one classifier, a missing
  // classifier, and SW/RANK placed before the classifier.
  static Procedure parse(std::string_view text);
};

// Classifies every segment's aspect. Segments without an in-vocabulary word
// cannot be classified; they are dropped and counted in a warning.
std::vector<Segment> label_aspects(std::vector<Segment> segments, const ModelState& state,
                                   const PosteriorEstimates& est, Diagnostics* diag = nullptr);

// Keeps segments that contain one of the top-x aspect words of their aspect.
std::vector<Segment> filter_aw(std::vector<Segment> segments, const ModelState& state,
                               const PosteriorEstimates& est, int x);

// Keeps segments that contain one of the top-y sentiment words of their
// (sentiment, aspect) pair. Throws ConfigError for unlabeled segments.
std::vector<Segment> filter_sw(std::vector<Segment> segments, const ModelState& state,
                               const PosteriorEstimates& est, int y);

// Length-normalized log score of a segment under one (sentiment, aspect).
double rank_score(const Segment& segment, const ModelState& state, const PosteriorEstimates& est,
                  int sentiment, int aspect);

// Within each (sentiment, aspect) group drops the floor((1 - keep) * n)
// lowest-scoring segments (ties resolved by input order). Survivors keep
// their input order.
std::vector<Segment> filter_rank(std::vector<Segment> segments, const ModelState& state,
                                 const PosteriorEstimates& est, double keep_fraction);

struct CandidateSplit {
  std::vector<Segment> positive;
  std::vector<Segment> negative;
};

struct ProcedureContext {
  const ModelState* state = nullptr;
  const PosteriorEstimates* est = nullptr;
  const PolarityLexicon* lexicon = nullptr;
  FilterConfig filters;
};

// Applies the stages to aspect-labeled segments and splits the survivors
// by sentiment. Missing inputs for a stage are reported before any work.
CandidateSplit run_procedure(const Procedure& proc, std::vector<Segment> segments, const ProcedureContext& ctx);

}  // namespace revsum
