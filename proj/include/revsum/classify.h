#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "revsum/model.h"
#include "revsum/patterns.h"

namespace revsum {

// In-vocabulary ids of a segment's tokens, by role. Out-of-vocabulary
// tokens are skipped.
struct SegmentWords {
  std::vector<int> aspect_words;
  std::vector<int> sentiment_words;

  bool empty() const { return aspect_words.empty() && sentiment_words.empty(); }
};

SegmentWords resolve_words(const Segment& segment, const Vocabulary& vocab);

// Per-topic log score: sum of log phi_k,i over aspect words plus
// sum_j log phi'_j,k,i over sentiment words.
std::vector<double> topic_scores(const SegmentWords& words, const PosteriorEstimates& est);

// Argmax of topic_scores, lowest topic on ties. Throws DataError
// ("unclassifiable") when the segment has no in-vocabulary word.
int classify_topic(const SegmentWords& words, const PosteriorEstimates& est);
int classify_topic(const Segment& segment, const Vocabulary& vocab, const PosteriorEstimates& est);

struct SentimentResult {
  int sentiment = kPositive;
  double polarity = 0.0;
};

// Threshold rule shared by both classifiers: negated segments flip the sign,
// then polarity >= 0 is positive.
SentimentResult polarity_to_sentiment(double raw_polarity, bool negated);

// Sum over in-vocabulary sentiment words of y_senti[pos][i] - y_senti[neg][i].
SentimentResult classify_sentiment_sen(const Segment& segment, const ModelState& state);

class PolarityLexicon {
 public:
  PolarityLexicon() = default;
  explicit PolarityLexicon(std::unordered_map<std::string, double> scores);

  // "stem<TAB>score" lines, '#' comments.
  static PolarityLexicon load(const std::string& path);

  // Score of a token: its stem, else its lowercase surface, else 0.
  double score(const Token& token) const;
  double score(std::string_view stem) const;
  const std::unordered_map<std::string, double>& scores() const { return scores_; }

 private:
  std::unordered_map<std::string, double> scores_;
};

// Sum of lexicon scores over the segment's sentiment tokens.
SentimentResult classify_sentiment_swn(const Segment& segment, const PolarityLexicon& lex);

}  // namespace revsum
