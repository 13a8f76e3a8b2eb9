#include "revsum/model.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <boost/math/special_functions/digamma.hpp>

#include "revsum/error.h"
#include "revsum/optim.h"
#include "revsum/stemmer.h"
#include "revsum/text.h"

namespace revsum {

void Hyperparams::validate() const {
  if (!(alpha > 0) || !(beta > 0) || !(gamma > 0)) throw ConfigError("alpha, beta and gamma must be > 0");
  if (!(sigma1_sq > 0) || !(sigma2_sq > 0)) throw ConfigError("prior variances must be > 0");
  if (num_topics < 1) throw ConfigError("number of topics must be >= 1");
  if (num_sentiments != kNumSentiments) throw ConfigError("the model has exactly two sentiments");
  if (!(seed_offset >= 0) || !std::isfinite(seed_offset)) throw ConfigError("seed offset must be finite and >= 0");
}

SeedList SeedList::defaults() {
  return {{"good", "great", "nice", "excellent", "love", "best", "amazing"},
          {"bad", "terrible", "awful", "hate", "worst", "poor", "disappointing"}};
}

SeedList SeedList::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open seed list: " + path);
  SeedList seeds;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::istringstream fields(t);
    std::string polarity, word;
    if (!(fields >> polarity >> word)) throw ParseError(path, lineno, "expected '<positive|negative> word'");
    polarity = to_lower(polarity);
    word = to_lower(word);
    if (polarity == "positive" || polarity == "+") {
      seeds.positive.insert(word);
    } else if (polarity == "negative" || polarity == "-") {
      seeds.negative.insert(word);
    } else {
      throw ParseError(path, lineno, "unknown polarity '" + polarity + "'");
    }
  }
  for (const auto& w : seeds.positive)
    if (seeds.negative.count(w)) throw DataError("seed word '" + w + "' listed as both positive and negative");
  return seeds;
}

namespace {

void fill_repeats(const std::vector<int>& ids, std::vector<int>& repeats) {
  repeats.assign(ids.size(), 0);
  for (size_t a = 0; a < ids.size(); ++a)
    for (size_t b = 0; b < a; ++b)
      if (ids[b] == ids[a]) ++repeats[a];
}

SentenceWords make_sentence_words(std::vector<int> words, std::vector<int> sentiment_words) {
  SentenceWords s;
  s.words = std::move(words);
  s.sentiment_words = std::move(sentiment_words);
  fill_repeats(s.words, s.word_repeats);
  fill_repeats(s.sentiment_words, s.sentiment_repeats);
  return s;
}

}  // namespace

ModelData ModelData::from_corpus(const Corpus& corpus, const Vocabulary& vocab) {
  ModelData data;
  data.vocab_size = vocab.non_sentiment_size();
  data.sentiment_vocab_size = vocab.sentiment_size();
  data.docs.reserve(corpus.reviews.size());
  for (const auto& review : corpus.reviews) {
    std::vector<SentenceWords> doc;
    doc.reserve(review.sentences.size());
    for (const auto& sentence : review.sentences) {
      std::vector<int> words, senti;
      for (const auto& tok : sentence.tokens) {
        auto id = vocab.lookup(tok);
        if (!id) continue;
        (tok.is_sentiment ? senti : words).push_back(*id);
      }
      doc.push_back(make_sentence_words(std::move(words), std::move(senti)));
    }
    data.docs.push_back(std::move(doc));
  }
  return data;
}

ModelData ModelData::from_ids(
    const std::vector<std::vector<std::pair<std::vector<int>, std::vector<int>>>>& docs,
    int vocab_size, int sentiment_vocab_size) {
  ModelData data;
  data.vocab_size = vocab_size;
  data.sentiment_vocab_size = sentiment_vocab_size;
  for (const auto& doc : docs) {
    std::vector<SentenceWords> out;
    for (const auto& [words, senti] : doc) {
      for (int w : words)
        if (w < 0 || w >= vocab_size) throw DataError("word id out of range");
      for (int w : senti)
        if (w < 0 || w >= sentiment_vocab_size) throw DataError("sentiment word id out of range");
      out.push_back(make_sentence_words(words, senti));
    }
    data.docs.push_back(std::move(out));
  }
  return data;
}

size_t ModelData::sentence_count() const {
  size_t n = 0;
  for (const auto& d : docs) n += d.size();
  return n;
}

ModelState::ModelState(ModelData data, Vocabulary vocab, Hyperparams hp)
    : data_(std::move(data)), vocab_(std::move(vocab)), hp_(hp) {
  hp_.validate();
  const int T = num_topics(), S = num_sentiments(), V = vocab_size(), Vp = sentiment_vocab_size();
  const int D = num_docs();
  offsets_.resize(D + 1, 0);
  for (int d = 0; d < D; ++d) offsets_[d + 1] = offsets_[d] + data_.docs[d].size();
  assignments_.assign(offsets_[D], Assignment{});
  y_topic_.assign(static_cast<size_t>(T) * Vp, 0.0);
  y_senti_.assign(static_cast<size_t>(S) * Vp, 0.0);
  frozen_.assign(Vp, 0);
  counts_.topic_word.assign(static_cast<size_t>(T) * V, 0);
  counts_.topic_total.assign(T, 0);
  counts_.senti_topic_word.assign(static_cast<size_t>(S) * T * Vp, 0);
  counts_.senti_topic_total.assign(static_cast<size_t>(S) * T, 0);
  counts_.doc_topic.assign(static_cast<size_t>(D) * T, 0);
  counts_.doc_senti.assign(static_cast<size_t>(D) * S, 0);
  set_smoothers(y_topic_, y_senti_);
  counts_ = recount();
}

void ModelState::set_smoothers(std::vector<double> y_topic, std::vector<double> y_senti) {
  const int T = num_topics(), S = num_sentiments(), Vp = sentiment_vocab_size();
  if (y_topic.size() != static_cast<size_t>(T) * Vp || y_senti.size() != static_cast<size_t>(S) * Vp)
    throw std::invalid_argument("smoother matrices have the wrong shape");
  y_topic_ = std::move(y_topic);
  y_senti_ = std::move(y_senti);
  beta_prime_.assign(static_cast<size_t>(S) * T * Vp, 0.0);
  beta_prime_sum_.assign(static_cast<size_t>(S) * T, 0.0);
  for (int j = 0; j < S; ++j) {
    for (int k = 0; k < T; ++k) {
      double sum = 0.0;
      for (int i = 0; i < Vp; ++i) {
        double b = std::exp(y_topic_[k * Vp + i] + y_senti_[j * Vp + i]);
        beta_prime_[stw(j, k, i)] = b;
        sum += b;
      }
      beta_prime_sum_[j * T + k] = sum;
    }
  }
}

void ModelState::apply(int d, int c, Assignment a, int delta, Counts& counts) const {
  const int T = num_topics(), S = num_sentiments(), V = vocab_size(), Vp = sentiment_vocab_size();
  const SentenceWords& s = data_.docs[d][c];
  for (int i : s.words) counts.topic_word[a.topic * V + i] += delta;
  counts.topic_total[a.topic] += delta * static_cast<int>(s.words.size());
  for (int i : s.sentiment_words)
    counts.senti_topic_word[(static_cast<size_t>(a.sentiment) * T + a.topic) * Vp + i] += delta;
  counts.senti_topic_total[a.sentiment * T + a.topic] += delta * static_cast<int>(s.sentiment_words.size());
  counts.doc_topic[d * T + a.topic] += delta;
  counts.doc_senti[d * S + a.sentiment] += delta;
}

void ModelState::remove_sentence(int d, int c) {
  apply(d, c, assignment(d, c), -1, counts_);
}

void ModelState::add_sentence(int d, int c, Assignment a) {
  assignments_[offsets_[d] + c] = a;
  apply(d, c, a, +1, counts_);
}

void ModelState::set_assignments(std::vector<Assignment> assignments) {
  if (assignments.size() != assignments_.size()) throw DataError("assignment count does not match the corpus");
  for (const auto& a : assignments)
    if (a.topic < 0 || a.topic >= num_topics() || a.sentiment < 0 || a.sentiment >= num_sentiments())
      throw DataError("assignment out of range");
  assignments_ = std::move(assignments);
  counts_ = recount();
}

Counts ModelState::recount() const {
  const int T = num_topics(), S = num_sentiments(), V = vocab_size(), Vp = sentiment_vocab_size();
  const int D = num_docs();
  Counts c;
  c.topic_word.assign(static_cast<size_t>(T) * V, 0);
  c.topic_total.assign(T, 0);
  c.senti_topic_word.assign(static_cast<size_t>(S) * T * Vp, 0);
  c.senti_topic_total.assign(static_cast<size_t>(S) * T, 0);
  c.doc_topic.assign(static_cast<size_t>(D) * T, 0);
  c.doc_senti.assign(static_cast<size_t>(D) * S, 0);
  for (int d = 0; d < D; ++d)
    for (int s = 0; s < num_sentences(d); ++s) apply(d, s, assignment(d, s), +1, c);
  return c;
}

ModelState init_model(const Corpus& corpus, const Vocabulary& vocab, const Hyperparams& hp,
                      const SeedList& seeds, std::uint64_t rng_seed, Diagnostics* diag) {
  return init_model(ModelData::from_corpus(corpus, vocab), vocab, hp, seeds, rng_seed, diag);
}

ModelState init_model(ModelData data, const Vocabulary& vocab, const Hyperparams& hp,
                      const SeedList& seeds, std::uint64_t rng_seed, Diagnostics* diag) {
  ModelState state(std::move(data), vocab, hp);
  state.rng().seed(rng_seed);
  const int T = state.num_topics(), S = state.num_sentiments(), Vp = state.sentiment_vocab_size();
  std::uniform_int_distribution<int> pick(0, S * T - 1);
  std::vector<Assignment> assignments(state.assignments().size());
  for (auto& a : assignments) {
    int draw = pick(state.rng());
    a = Assignment{draw % T, draw / T};
  }
  state.set_assignments(std::move(assignments));

  std::vector<double> y_topic(static_cast<size_t>(T) * Vp, 0.0);
  std::vector<double> y_senti(static_cast<size_t>(S) * Vp, 0.0);
  auto place = [&](const std::string& word, int polarity) {
    auto id = vocab.find_sentiment(word);
    if (!id) id = vocab.find_sentiment(porter_stem(word));
    if (!id) {
      warn(diag, "seed word '" + word + "' is not in the sentiment vocabulary; ignored");
      return;
    }
    double sign = polarity == kPositive ? 1.0 : -1.0;
    y_senti[kPositive * Vp + *id] = sign * hp.seed_offset;
    y_senti[kNegative * Vp + *id] = -sign * hp.seed_offset;
    state.set_frozen(*id, true);
  };
  for (const auto& w : seeds.positive) place(w, kPositive);
  for (const auto& w : seeds.negative) place(w, kNegative);
  state.set_smoothers(std::move(y_topic), std::move(y_senti));
  return state;
}

std::vector<double> log_gibbs_conditional(const ModelState& state, int d, int c) {
  const int T = state.num_topics(), S = state.num_sentiments();
  const Hyperparams& hp = state.hyperparams();
  const SentenceWords& s = state.data().docs[d][c];
  const double v_beta = state.vocab_size() * hp.beta;
  std::vector<double> out(static_cast<size_t>(S) * T);
  for (int k = 0; k < T; ++k) {
    double aspect = std::log(state.n_dt(d, k) + hp.alpha);
    for (size_t x = 0; x < s.words.size(); ++x) {
      aspect += std::log(state.n_tw(k, s.words[x]) + hp.beta + s.word_repeats[x]);
      aspect -= std::log(state.n_t(k) + v_beta + static_cast<double>(x));
    }
    for (int j = 0; j < S; ++j) {
      double senti = std::log(state.n_ds(d, j) + hp.gamma);
      const double denom = state.n_st(j, k) + state.beta_prime_sum(j, k);
      for (size_t x = 0; x < s.sentiment_words.size(); ++x) {
        int i = s.sentiment_words[x];
        senti += std::log(state.n_stw(j, k, i) + state.beta_prime(j, k, i) + s.sentiment_repeats[x]);
        senti -= std::log(denom + static_cast<double>(x));
      }
      out[j * T + k] = aspect + senti;
    }
  }
  return out;
}

std::vector<double> gibbs_conditional(const ModelState& state, int d, int c) {
  std::vector<double> p = log_gibbs_conditional(state, d, c);
  for (double& v : p) v = std::exp(v);
  return p;
}

void gibbs_sweep(ModelState& state, std::mt19937_64& rng) {
  const int T = state.num_topics();
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> cumulative;
  for (int d = 0; d < state.num_docs(); ++d) {
    for (int c = 0; c < state.num_sentences(d); ++c) {
      state.remove_sentence(d, c);
      std::vector<double> lp = log_gibbs_conditional(state, d, c);
      const double top = *std::max_element(lp.begin(), lp.end());
      cumulative.resize(lp.size());
      double total = 0.0;
      for (size_t x = 0; x < lp.size(); ++x) {
        total += std::exp(lp[x] - top);
        cumulative[x] = total;
      }
      const double u = unif(rng) * total;
      size_t pick = std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin();
      if (pick >= lp.size()) pick = lp.size() - 1;
      state.add_sentence(d, c, Assignment{static_cast<int>(pick) % T, static_cast<int>(pick) / T});
    }
  }
  state.set_sweeps_done(state.sweeps_done() + 1);
}

double SmootherObjective::operator()(const std::vector<double>& y_topic, const std::vector<double>& y_senti,
                                     SmootherGradient* grad) const {
  const ModelState& st = state_;
  const int T = st.num_topics(), S = st.num_sentiments(), Vp = st.sentiment_vocab_size();
  const double sigma_sq = st.hyperparams().sigma_sq();
  if (grad) {
    grad->topic.assign(static_cast<size_t>(T) * Vp, 0.0);
    grad->senti.assign(static_cast<size_t>(S) * Vp, 0.0);
  }

  double value = 0.0;
  std::vector<double> bp(Vp);
  for (int j = 0; j < S; ++j) {
    for (int k = 0; k < T; ++k) {
      double b_sum = 0.0;
      for (int i = 0; i < Vp; ++i) {
        bp[i] = std::exp(y_topic[k * Vp + i] + y_senti[j * Vp + i]);
        b_sum += bp[i];
      }
      const int n_sum = st.n_st(j, k);
      // Both brackets vanish for an empty (j, k) cell.
      double cell_term = 0.0;
      if (n_sum > 0) {
        value += std::lgamma(n_sum + b_sum) - std::lgamma(b_sum);
        if (grad) cell_term = boost::math::digamma(n_sum + b_sum) - boost::math::digamma(b_sum);
      }
      for (int i = 0; i < Vp; ++i) {
        const int n = st.n_stw(j, k, i);
        double g = cell_term;
        if (n > 0) {
          value += std::lgamma(bp[i]) - std::lgamma(n + bp[i]);
          if (grad) g += boost::math::digamma(bp[i]) - boost::math::digamma(n + bp[i]);
        }
        const double centered = y_topic[k * Vp + i] + y_senti[j * Vp + i] - kSmootherPriorMean;
        value += centered * centered / (2.0 * sigma_sq);
        if (grad) {
          const double dy = g * bp[i] + centered / sigma_sq;
          grad->topic[k * Vp + i] += dy;
          grad->senti[j * Vp + i] += dy;
        }
      }
    }
  }
  double sum_topic = 0.0, sum_senti = 0.0;
  for (double y : y_topic) sum_topic += y;
  for (double y : y_senti) sum_senti += y;
  value += S * sum_topic + T * sum_senti;
  if (grad) {
    for (double& g : grad->topic) g += S;
    for (double& g : grad->senti) g += T;
  }
  return value;
}

double map_objective(const ModelState& state) {
  return SmootherObjective{state}(state.y_topic(), state.y_senti(), nullptr);
}

SmootherGradient map_gradient(const ModelState& state) {
  SmootherGradient g;
  SmootherObjective{state}(state.y_topic(), state.y_senti(), &g);
  return g;
}

OptimizeResult optimize_smoothers(ModelState& state, int max_iters, double tol, Diagnostics* diag) {
  const int T = state.num_topics(), S = state.num_sentiments(), Vp = state.sentiment_vocab_size();
  const size_t n_topic = static_cast<size_t>(T) * Vp;

  // Free parameters: all topic smoothers, then the sentiment smoothers of
  // non-seed words.
  std::vector<size_t> free_senti;
  for (int j = 0; j < S; ++j)
    for (int i = 0; i < Vp; ++i)
      if (!state.frozen(i)) free_senti.push_back(static_cast<size_t>(j) * Vp + i);

  std::vector<double> x0(state.y_topic());
  for (size_t idx : free_senti) x0.push_back(state.y_senti()[idx]);

  SmootherObjective objective(state);
  std::vector<double> y_topic(n_topic), y_senti(state.y_senti());
  auto unpack = [&](std::span<const double> x) {
    std::copy(x.begin(), x.begin() + n_topic, y_topic.begin());
    for (size_t f = 0; f < free_senti.size(); ++f) y_senti[free_senti[f]] = x[n_topic + f];
  };
  SmootherGradient g;
  Objective fn = [&](std::span<const double> x, std::span<double> grad) {
    unpack(x);
    double v = objective(y_topic, y_senti, &g);
    std::copy(g.topic.begin(), g.topic.end(), grad.begin());
    for (size_t f = 0; f < free_senti.size(); ++f) grad[n_topic + f] = g.senti[free_senti[f]];
    return v;
  };

  OptimizeResult out;
  LbfgsOptions options;
  options.max_iterations = max_iters;
  options.gradient_tolerance = tol;
  LbfgsResult r = minimize_lbfgs(fn, x0, options);
  std::vector<double> scratch(x0.size());
  out.objective_before = fn(x0, scratch);
  out.iterations = r.iterations;
  out.converged = r.converged;
  if (r.value <= out.objective_before) {
    unpack(r.x);
    state.set_smoothers(y_topic, y_senti);
  }
  out.objective_after = map_objective(state);
  if (!r.converged)
    warn(diag, "smoother optimization stopped after " + std::to_string(r.iterations) +
                   " iterations (gradient norm " + std::to_string(r.gradient_norm) + "); keeping best iterate");
  return out;
}

void TrainSchedule::validate() const {
  if (burn_in < 0 || interleave < 1 || total < 1)
    throw ConfigError("schedule needs burn_in >= 0, interleave >= 1 and total >= 1");
}

bool TrainSchedule::optimize_after(int sweep) const {
  return sweep >= 1 && sweep >= burn_in && (sweep - burn_in) % interleave == 0;
}

ModelState train(const Corpus& corpus, const Vocabulary& vocab, const Hyperparams& hp,
                 const SeedList& seeds, const TrainSchedule& schedule, std::uint64_t rng_seed,
                 const TrainObserver* observer, Diagnostics* diag) {
  schedule.validate();
  ModelState state = init_model(corpus, vocab, hp, seeds, rng_seed, diag);
  continue_training(state, schedule, observer, diag);
  return state;
}

void continue_training(ModelState& state, const TrainSchedule& schedule, const TrainObserver* observer,
                       Diagnostics* diag) {
  schedule.validate();
  while (state.sweeps_done() < schedule.total) {
    gibbs_sweep(state, state.rng());
    const int sweep = state.sweeps_done();
    if (observer && observer->on_sweep) observer->on_sweep(sweep);
    if (schedule.optimize_after(sweep)) {
      OptimizeResult r = optimize_smoothers(state, 50, 1e-5, diag);
      if (observer && observer->on_optimize) observer->on_optimize(sweep, r);
    }
  }
}

PosteriorEstimates estimate(const ModelState& state) {
  const Hyperparams& hp = state.hyperparams();
  PosteriorEstimates e;
  e.num_docs = state.num_docs();
  e.num_topics = state.num_topics();
  e.num_sentiments = state.num_sentiments();
  e.vocab_size = state.vocab_size();
  e.sentiment_vocab_size = state.sentiment_vocab_size();
  const int D = e.num_docs, T = e.num_topics, S = e.num_sentiments, V = e.vocab_size,
            Vp = e.sentiment_vocab_size;

  e.pi.resize(static_cast<size_t>(D) * S);
  e.theta.resize(static_cast<size_t>(D) * T);
  for (int d = 0; d < D; ++d) {
    double ns = 0.0, nt = 0.0;
    for (int j = 0; j < S; ++j) ns += state.n_ds(d, j);
    for (int k = 0; k < T; ++k) nt += state.n_dt(d, k);
    for (int j = 0; j < S; ++j) e.pi[d * S + j] = (state.n_ds(d, j) + hp.gamma) / (ns + S * hp.gamma);
    for (int k = 0; k < T; ++k) e.theta[d * T + k] = (state.n_dt(d, k) + hp.alpha) / (nt + T * hp.alpha);
  }
  e.phi.resize(static_cast<size_t>(T) * V);
  for (int k = 0; k < T; ++k) {
    double denom = 0.0;
    for (int i = 0; i < V; ++i) denom += state.n_tw(k, i);
    denom += V * hp.beta;
    for (int i = 0; i < V; ++i) e.phi[k * V + i] = (state.n_tw(k, i) + hp.beta) / denom;
  }
  e.phi_prime.resize(static_cast<size_t>(S) * T * Vp);
  for (int j = 0; j < S; ++j) {
    for (int k = 0; k < T; ++k) {
      double denom = 0.0;
      for (int i = 0; i < Vp; ++i) denom += state.n_stw(j, k, i) + state.beta_prime(j, k, i);
      for (int i = 0; i < Vp; ++i)
        e.phi_prime[(static_cast<size_t>(j) * T + k) * Vp + i] =
            (state.n_stw(j, k, i) + state.beta_prime(j, k, i)) / denom;
    }
  }
  return e;
}

double lexicon_polarity(const ModelState& state, int sentiment_word) {
  if (sentiment_word < 0 || sentiment_word >= state.sentiment_vocab_size())
    throw DataError("sentiment word index out of range");
  return state.y_senti(kPositive, sentiment_word) - state.y_senti(kNegative, sentiment_word);
}

double lexicon_polarity(const ModelState& state, std::string_view stem) {
  auto id = state.vocab().find_sentiment(stem);
  if (!id) throw DataError("'" + std::string(stem) + "' is not in the sentiment vocabulary");
  return lexicon_polarity(state, *id);
}

}  // namespace revsum
