#include "revsum/topic_report.h"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>

namespace revsum {

using nlohmann::json;

std::vector<int> top_indices(const double* values, int size, int n) {
  std::vector<int> idx(size);
  std::iota(idx.begin(), idx.end(), 0);
  n = std::clamp(n, 0, size);
  std::partial_sort(idx.begin(), idx.begin() + n, idx.end(), [&](int a, int b) {
    if (values[a] != values[b]) return values[a] > values[b];
    return a < b;
  });
  idx.resize(n);
  return idx;
}

std::vector<TopicSummary> topic_report(const ModelState& state, const PosteriorEstimates& est, int top_n) {
  const auto& vocab = state.vocab();
  const int T = est.num_topics, V = est.vocab_size, Vp = est.sentiment_vocab_size;
  std::vector<TopicSummary> out;
  for (int k = 0; k < T; ++k) {
    TopicSummary t;
    t.topic = k;
    const double* phi = est.phi.data() + static_cast<size_t>(k) * V;
    for (int i : top_indices(phi, V, top_n)) t.aspect_words.push_back({vocab.non_sentiment_words()[i], phi[i]});
    for (int j : {kPositive, kNegative}) {
      const double* pp = est.phi_prime.data() + (static_cast<size_t>(j) * T + k) * Vp;
      auto& dst = j == kPositive ? t.positive_words : t.negative_words;
      for (int i : top_indices(pp, Vp, top_n)) dst.push_back({vocab.sentiment_words()[i], pp[i]});
    }
    out.push_back(std::move(t));
  }
  return out;
}

json topic_report_json(const std::vector<TopicSummary>& report) {
  auto words = [](const std::vector<RankedWord>& ws) {
    json arr = json::array();
    for (const auto& w : ws) arr.push_back({{"stem", w.stem}, {"p", w.probability}});
    return arr;
  };
  json topics = json::array();
  for (const auto& t : report)
    topics.push_back({{"topic", t.topic},
                      {"aspect_words", words(t.aspect_words)},
                      {"positive_words", words(t.positive_words)},
                      {"negative_words", words(t.negative_words)}});
  return {{"topics", topics}};
}

std::string topic_report_text(const std::vector<TopicSummary>& report) {
  auto join = [](const std::vector<RankedWord>& ws) {
    std::string s;
    for (const auto& w : ws) {
      if (!s.empty()) s += ", ";
      s += w.stem;
    }
    return s;
  };
  std::vector<std::array<std::string, 4>> rows;
  rows.push_back({"topic", "top aspect words", "top positive words", "top negative words"});
  for (const auto& t : report)
    rows.push_back({std::to_string(t.topic), join(t.aspect_words), join(t.positive_words), join(t.negative_words)});
  std::array<size_t, 4> width{};
  for (const auto& r : rows)
    for (size_t c = 0; c < 4; ++c) width[c] = std::max(width[c], r[c].size());
  std::ostringstream out;
  for (const auto& r : rows) {
    for (size_t c = 0; c < 4; ++c) {
      out << r[c];
      if (c + 1 < 4) out << std::string(width[c] - r[c].size() + 2, ' ') << "| ";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace revsum
