#include "revsum/classify.h"

#include <cmath>
#include <fstream>

#include "revsum/error.h"
#include "revsum/text.h"

namespace revsum {

SegmentWords resolve_words(const Segment& segment, const Vocabulary& vocab) {
  SegmentWords w;
  for (const auto& tok : segment.tokens) {
    auto id = vocab.lookup(tok);
    if (!id) continue;
    (tok.is_sentiment ? w.sentiment_words : w.aspect_words).push_back(*id);
  }
  return w;
}

std::vector<double> topic_scores(const SegmentWords& words, const PosteriorEstimates& est) {
  std::vector<double> scores(est.num_topics, 0.0);
  for (int k = 0; k < est.num_topics; ++k) {
    for (int i : words.aspect_words) scores[k] += std::log(est.phi_at(k, i));
    for (int i : words.sentiment_words)
      for (int j = 0; j < est.num_sentiments; ++j) scores[k] += std::log(est.phi_prime_at(j, k, i));
  }
  return scores;
}

int classify_topic(const SegmentWords& words, const PosteriorEstimates& est) {
  if (words.empty()) throw DataError("unclassifiable: segment has no in-vocabulary word");
  std::vector<double> scores = topic_scores(words, est);
  int best = 0;
  for (int k = 1; k < static_cast<int>(scores.size()); ++k)
    if (scores[k] > scores[best]) best = k;
  return best;
}

int classify_topic(const Segment& segment, const Vocabulary& vocab, const PosteriorEstimates& est) {
  return classify_topic(resolve_words(segment, vocab), est);
}

SentimentResult polarity_to_sentiment(double raw_polarity, bool negated) {
  double p = negated ? -raw_polarity : raw_polarity;
  if (p == 0.0) p = 0.0;  // no negative zero in outputs
  return {p >= 0.0 ? kPositive : kNegative, p};
}

SentimentResult classify_sentiment_sen(const Segment& segment, const ModelState& state) {
  double polarity = 0.0;
  for (const auto& tok : segment.tokens) {
    if (!tok.is_sentiment) continue;
    if (auto id = state.vocab().find_sentiment(tok.stem)) polarity += lexicon_polarity(state, *id);
  }
  return polarity_to_sentiment(polarity, segment.negated);
}

PolarityLexicon::PolarityLexicon(std::unordered_map<std::string, double> scores) : scores_(std::move(scores)) {
  for (const auto& [w, s] : scores_)
    if (!std::isfinite(s)) throw DataError("non-finite lexicon score for '" + w + "'");
}

PolarityLexicon PolarityLexicon::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open lexicon: " + path);
  std::unordered_map<std::string, double> scores;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto tab = t.find('\t');
    if (tab == std::string::npos) throw ParseError(path, lineno, "expected 'stem<TAB>score'");
    std::string stem = to_lower(trim(t.substr(0, tab)));
    std::string value = trim(t.substr(tab + 1));
    double score = 0.0;
    try {
      size_t used = 0;
      score = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw ParseError(path, lineno, "bad score '" + value + "'");
    }
    if (!std::isfinite(score)) throw ParseError(path, lineno, "non-finite score");
    scores[stem] = score;
  }
  return PolarityLexicon(std::move(scores));
}

double PolarityLexicon::score(std::string_view stem) const {
  auto it = scores_.find(std::string(stem));
  return it == scores_.end() ? 0.0 : it->second;
}

double PolarityLexicon::score(const Token& token) const {
  auto it = scores_.find(token.stem);
  if (it != scores_.end()) return it->second;
  it = scores_.find(to_lower(token.surface));
  return it == scores_.end() ? 0.0 : it->second;
}

SentimentResult classify_sentiment_swn(const Segment& segment, const PolarityLexicon& lex) {
  double polarity = 0.0;
  for (const auto& tok : segment.tokens)
    if (tok.is_sentiment) polarity += lex.score(tok);
  return polarity_to_sentiment(polarity, segment.negated);
}

}  // namespace revsum
