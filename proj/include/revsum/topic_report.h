#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "revsum/model.h"

namespace revsum {

struct RankedWord {
  std::string stem;
  double probability = 0.0;
};

struct TopicSummary {
  int topic = 0;
  std::vector<RankedWord> aspect_words;    // top of phi_k
  std::vector<RankedWord> positive_words;  // top of phi'_{positive,k}
  std::vector<RankedWord> negative_words;  // top of phi'_{negative,k}
};

// Indices of the `n` largest entries, ordered by value descending and
// index ascending on ties.
std::vector<int> top_indices(const double* values, int size, int n);

std::vector<TopicSummary> topic_report(const ModelState& state, const PosteriorEstimates& est, int top_n);

nlohmann::json topic_report_json(const std::vector<TopicSummary>& report);

// One row per topic with the aspect, positive and negative columns.
std::string topic_report_text(const std::vector<TopicSummary>& report);

}  // namespace revsum
