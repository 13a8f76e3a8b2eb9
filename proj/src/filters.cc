#include "revsum/filters.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

#include "revsum/error.h"
#include "revsum/text.h"
#include "revsum/topic_report.h"

namespace revsum {

void FilterConfig::validate() const {
  if (aw_top_x < 1) throw ConfigError("aw_top_x must be >= 1");
  if (sw_top_y < 1) throw ConfigError("sw_top_y must be >= 1");
  if (!(rank_keep_fraction > 0.0 && rank_keep_fraction <= 1.0))
    throw ConfigError("rank_keep_fraction must be in (0, 1]");
}

std::string_view stage_name(Stage stage) {
  switch (stage) {
    case Stage::kBaseline: return "Baseline";
    case Stage::kAw: return "AW";
    case Stage::kSw: return "SW";
    case Stage::kRank: return "RANK";
    case Stage::kSen: return "SEN";
    case Stage::kSwn: return "SWN";
  }
  return "?";
}

bool is_classifier(Stage stage) { return stage == Stage::kSen || stage == Stage::kSwn; }

Procedure Procedure::parse(std::string_view text) {
  Procedure proc;
  proc.name = trim(text);
  std::string item;
  for (size_t start = 0; start <= proc.name.size();) {
    size_t plus = proc.name.find('+', start);
    if (plus == std::string::npos) plus = proc.name.size();
    item = trim(std::string_view(proc.name).substr(start, plus - start));
    start = plus + 1;
    bool known = false;
    for (Stage s : {Stage::kBaseline, Stage::kAw, Stage::kSw, Stage::kRank, Stage::kSen, Stage::kSwn}) {
      if (stage_name(s) == item) {
        proc.stages.push_back(s);
        known = true;
      }
    }
    if (!known) throw ConfigError("unknown procedure stage '" + item + "' in '" + proc.name + "'");
  }
  bool classified = false;
  for (Stage s : proc.stages) {
    if (is_classifier(s)) {
      if (classified) throw ConfigError("procedure '" + proc.name + "' has more than one sentiment classifier");
      classified = true;
    } else if ((s == Stage::kSw || s == Stage::kRank) && !classified) {
      throw ConfigError("stage " + std::string(stage_name(s)) + " needs sentiment labels but comes before the classifier in '" +
                        proc.name + "'");
    }
  }
  if (!classified) throw ConfigError("procedure '" + proc.name + "' has no sentiment classifier (SEN or SWN)");
  return proc;
}

std::vector<Segment> label_aspects(std::vector<Segment> segments, const ModelState& state,
                                   const PosteriorEstimates& est, Diagnostics* diag) {
  std::vector<Segment> out;
  out.reserve(segments.size());
  size_t dropped = 0;
  for (auto& s : segments) {
    SegmentWords w = resolve_words(s, state.vocab());
    if (w.empty()) {
      ++dropped;
      continue;
    }
    s.aspect = classify_topic(w, est);
    out.push_back(std::move(s));
  }
  if (dropped > 0)
    warn(diag, std::to_string(dropped) + " segment(s) without in-vocabulary words could not be classified");
  return out;
}

namespace {

void require_aspect(const Segment& s) {
  if (!s.aspect) throw ConfigError("segment '" + s.text() + "' has no aspect label");
}

void require_sentiment(const Segment& s) {
  require_aspect(s);
  if (!s.sentiment) throw ConfigError("segment '" + s.text() + "' has no sentiment label");
}

// Lazily built top-n id sets keyed by distribution row.
class TopWords {
 public:
  TopWords(const double* base, int row_size, int n) : base_(base), row_size_(row_size), n_(n) {}
  const std::unordered_set<int>& row(int r) {
    auto it = cache_.find(r);
    if (it != cache_.end()) return it->second;
    auto ids = top_indices(base_ + static_cast<size_t>(r) * row_size_, row_size_, n_);
    return cache_.emplace(r, std::unordered_set<int>(ids.begin(), ids.end())).first->second;
  }

 private:
  const double* base_;
  int row_size_;
  int n_;
  std::map<int, std::unordered_set<int>> cache_;
};

}  // namespace

std::vector<Segment> filter_aw(std::vector<Segment> segments, const ModelState& state,
                               const PosteriorEstimates& est, int x) {
  TopWords top(est.phi.data(), est.vocab_size, x);
  std::vector<Segment> out;
  for (auto& s : segments) {
    require_aspect(s);
    const auto& allowed = top.row(*s.aspect);
    auto w = resolve_words(s, state.vocab());
    if (std::any_of(w.aspect_words.begin(), w.aspect_words.end(), [&](int i) { return allowed.count(i) > 0; }))
      out.push_back(std::move(s));
  }
  return out;
}

std::vector<Segment> filter_sw(std::vector<Segment> segments, const ModelState& state,
                               const PosteriorEstimates& est, int y) {
  TopWords top(est.phi_prime.data(), est.sentiment_vocab_size, y);
  std::vector<Segment> out;
  for (auto& s : segments) {
    require_sentiment(s);
    const auto& allowed = top.row(*s.sentiment * est.num_topics + *s.aspect);
    auto w = resolve_words(s, state.vocab());
    if (std::any_of(w.sentiment_words.begin(), w.sentiment_words.end(), [&](int i) { return allowed.count(i) > 0; }))
      out.push_back(std::move(s));
  }
  return out;
}

double rank_score(const Segment& segment, const ModelState& state, const PosteriorEstimates& est,
                  int sentiment, int aspect) {
  auto w = resolve_words(segment, state.vocab());
  size_t n = w.aspect_words.size() + w.sentiment_words.size();
  if (n == 0) return -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (int i : w.aspect_words) sum += std::log(est.phi_at(aspect, i));
  for (int i : w.sentiment_words) sum += std::log(est.phi_prime_at(sentiment, aspect, i));
  return sum / static_cast<double>(n);
}

std::vector<Segment> filter_rank(std::vector<Segment> segments, const ModelState& state,
                                 const PosteriorEstimates& est, double keep_fraction) {
  std::map<std::pair<int, int>, std::vector<size_t>> groups;
  std::vector<double> score(segments.size());
  for (size_t x = 0; x < segments.size(); ++x) {
    const auto& s = segments[x];
    require_sentiment(s);
    groups[{*s.sentiment, *s.aspect}].push_back(x);
    score[x] = rank_score(s, state, est, *s.sentiment, *s.aspect);
  }
  std::vector<char> keep(segments.size(), 0);
  for (auto& [key, members] : groups) {
    std::stable_sort(members.begin(), members.end(), [&](size_t a, size_t b) { return score[a] > score[b]; });
    const size_t n = members.size();
    size_t eliminated = static_cast<size_t>(std::floor((1.0 - keep_fraction) * static_cast<double>(n) + 1e-9));
    eliminated = std::min(eliminated, n);
    for (size_t r = 0; r < n - eliminated; ++r) keep[members[r]] = 1;
  }
  std::vector<Segment> out;
  for (size_t x = 0; x < segments.size(); ++x)
    if (keep[x]) out.push_back(std::move(segments[x]));
  return out;
}

CandidateSplit run_procedure(const Procedure& proc, std::vector<Segment> segments, const ProcedureContext& ctx) {
  ctx.filters.validate();
  for (Stage s : proc.stages) {
    if (s == Stage::kSwn && ctx.lexicon == nullptr)
      throw ConfigError("procedure '" + proc.name + "' uses SWN but no polarity lexicon was given");
    if (s != Stage::kBaseline && s != Stage::kSwn && (ctx.state == nullptr || ctx.est == nullptr))
      throw ConfigError("procedure '" + proc.name + "' needs a trained model for " + std::string(stage_name(s)));
  }
  for (Stage s : proc.stages) {
    switch (s) {
      case Stage::kBaseline:
        break;
      case Stage::kAw:
        segments = filter_aw(std::move(segments), *ctx.state, *ctx.est, ctx.filters.aw_top_x);
        break;
      case Stage::kSw:
        segments = filter_sw(std::move(segments), *ctx.state, *ctx.est, ctx.filters.sw_top_y);
        break;
      case Stage::kRank:
        segments = filter_rank(std::move(segments), *ctx.state, *ctx.est, ctx.filters.rank_keep_fraction);
        break;
      case Stage::kSen:
        for (auto& seg : segments) {
          auto r = classify_sentiment_sen(seg, *ctx.state);
          seg.sentiment = r.sentiment;
          seg.polarity = r.polarity;
          seg.classifier = "SEN";
        }
        break;
      case Stage::kSwn:
        for (auto& seg : segments) {
          auto r = classify_sentiment_swn(seg, *ctx.lexicon);
          seg.sentiment = r.sentiment;
          seg.polarity = r.polarity;
          seg.classifier = "SWN";
        }
        break;
    }
  }
  CandidateSplit out;
  for (auto& seg : segments) (*seg.sentiment == kPositive ? out.positive : out.negative).push_back(std::move(seg));
  return out;
}

}  // namespace revsum
