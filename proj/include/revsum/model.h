#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "revsum/corpus.h"
#include "revsum/diagnostics.h"
#include "revsum/vocabulary.h"

namespace revsum {

inline constexpr int kNumSentiments = 2;
inline constexpr int kPositive = 0;
inline constexpr int kNegative = 1;

// Mean of the Gaussian prior on the smoother coefficients.
inline constexpr double kSmootherPriorMean = 0.0;

struct Hyperparams {
  double alpha = 0.1;   // document-topic concentration
  double beta = 0.01;   // non-sentiment word smoother
  double gamma = 0.1;   // document-sentiment concentration
  double sigma1_sq = 1.0;  // prior variance of topic smoothers
  double sigma2_sq = 1.0;  // prior variance of sentiment smoothers
  int num_topics = 7;
  int num_sentiments = kNumSentiments;
  double seed_offset = 2.0;  // |y| assigned to seed words at init

  double sigma_sq() const { return sigma1_sq + sigma2_sq; }
  void validate() const;  // throws ConfigError
  bool operator==(const Hyperparams&) const = default;
};

struct SeedList {
  std::set<std::string> positive;
  std::set<std::string> negative;

  static SeedList defaults();
  // Lines of the form "positive<TAB>word" or "negative<TAB>word".
  static SeedList load(const std::string& path);
};

// Vocabulary ids of one sentence, split by role, in token order.
struct SentenceWords {
  std::vector<int> words;
  std::vector<int> sentiment_words;
  // Number of earlier occurrences of the same id inside the sentence.
  std::vector<int> word_repeats;
  std::vector<int> sentiment_repeats;
};

struct ModelData {
  std::vector<std::vector<SentenceWords>> docs;
  int vocab_size = 0;            // V
  int sentiment_vocab_size = 0;  // V'

  static ModelData from_corpus(const Corpus& corpus, const Vocabulary& vocab);
  // Builds one document per entry; each inner pair holds the non-sentiment
  // and sentiment ids of a sentence.
  static ModelData from_ids(
      const std::vector<std::vector<std::pair<std::vector<int>, std::vector<int>>>>& docs,
      int vocab_size, int sentiment_vocab_size);

  size_t sentence_count() const;
};

struct Assignment {
  int topic = 0;
  int sentiment = 0;
  bool operator==(const Assignment&) const = default;
};

struct Counts {
  std::vector<int> topic_word;         // T x V
  std::vector<int> topic_total;        // T
  std::vector<int> senti_topic_word;   // S x T x V'
  std::vector<int> senti_topic_total;  // S x T
  std::vector<int> doc_topic;          // D x T
  std::vector<int> doc_senti;          // D x S

  bool operator==(const Counts&) const = default;
};

class ModelState {
 public:
  // All sentences start at (topic 0, sentiment 0) with zero smoothers; use
  // init_model() for a random start.
  ModelState(ModelData data, Vocabulary vocab, Hyperparams hp);

  int num_docs() const { return static_cast<int>(data_.docs.size()); }
  int num_topics() const { return hp_.num_topics; }
  int num_sentiments() const { return hp_.num_sentiments; }
  int vocab_size() const { return data_.vocab_size; }
  int sentiment_vocab_size() const { return data_.sentiment_vocab_size; }
  int num_sentences(int d) const { return static_cast<int>(data_.docs[d].size()); }

  const Hyperparams& hyperparams() const { return hp_; }
  const ModelData& data() const { return data_; }
  const Vocabulary& vocab() const { return vocab_; }
  const Counts& counts() const { return counts_; }

  int n_tw(int k, int i) const { return counts_.topic_word[k * vocab_size() + i]; }
  int n_t(int k) const { return counts_.topic_total[k]; }
  int n_stw(int j, int k, int i) const { return counts_.senti_topic_word[stw(j, k, i)]; }
  int n_st(int j, int k) const { return counts_.senti_topic_total[j * num_topics() + k]; }
  int n_dt(int d, int k) const { return counts_.doc_topic[d * num_topics() + k]; }
  int n_ds(int d, int j) const { return counts_.doc_senti[d * num_sentiments() + j]; }

  // Smoother coefficients: y_topic is T x V', y_senti is S x V'.
  const std::vector<double>& y_topic() const { return y_topic_; }
  const std::vector<double>& y_senti() const { return y_senti_; }
  double y_topic(int k, int i) const { return y_topic_[k * sentiment_vocab_size() + i]; }
  double y_senti(int j, int i) const { return y_senti_[j * sentiment_vocab_size() + i]; }
  double beta_prime(int j, int k, int i) const { return beta_prime_[stw(j, k, i)]; }
  double beta_prime_sum(int j, int k) const { return beta_prime_sum_[j * num_topics() + k]; }

  // Replaces the smoothers and recomputes beta' = exp(y_topic + y_senti).
  void set_smoothers(std::vector<double> y_topic, std::vector<double> y_senti);

  // Seed words keep their sentiment smoothers fixed during optimization.
  bool frozen(int i) const { return frozen_[i] != 0; }
  void set_frozen(int i, bool frozen) { frozen_[i] = frozen ? 1 : 0; }

  const Assignment& assignment(int d, int c) const { return assignments_[offsets_[d] + c]; }
  const std::vector<Assignment>& assignments() const { return assignments_; }

  // Moves sentence (d, c) out of / into the counts.
  void remove_sentence(int d, int c);
  void add_sentence(int d, int c, Assignment a);

  // Replaces every assignment and rebuilds the counts.
  void set_assignments(std::vector<Assignment> assignments);

  // Counts recomputed from scratch out of the assignments.
  Counts recount() const;

  std::mt19937_64& rng() { return rng_; }
  const std::mt19937_64& rng() const { return rng_; }
  int sweeps_done() const { return sweeps_done_; }
  void set_sweeps_done(int n) { sweeps_done_ = n; }

 private:
  size_t stw(int j, int k, int i) const {
    return (static_cast<size_t>(j) * num_topics() + k) * sentiment_vocab_size() + i;
  }
  void apply(int d, int c, Assignment a, int delta, Counts& counts) const;

  ModelData data_;
  Vocabulary vocab_;
  Hyperparams hp_;
  std::vector<size_t> offsets_;
  std::vector<Assignment> assignments_;
  Counts counts_;
  std::vector<double> y_topic_;
  std::vector<double> y_senti_;
  std::vector<double> beta_prime_;
  std::vector<double> beta_prime_sum_;
  std::vector<char> frozen_;
  std::mt19937_64 rng_;
  int sweeps_done_ = 0;
};

// Random (topic, sentiment) for every sentence, smoothers at zero except
// seed words: positive seeds get y_senti = (+offset, -offset), negative
// seeds the mirror image, and both rows are frozen. Seeds missing from the
// sentiment vocabulary are reported and ignored.
ModelState init_model(const Corpus& corpus, const Vocabulary& vocab, const Hyperparams& hp,
                      const SeedList& seeds, std::uint64_t rng_seed, Diagnostics* diag = nullptr);
ModelState init_model(ModelData data, const Vocabulary& vocab, const Hyperparams& hp,
                      const SeedList& seeds, std::uint64_t rng_seed, Diagnostics* diag = nullptr);

// Log of the unnormalized collapsed conditional of (topic k, sentiment j)
// for sentence (d, c), laid out as [j * T + k]. The sentence must already
// be removed from the counts.
std::vector<double> log_gibbs_conditional(const ModelState& state, int d, int c);
std::vector<double> gibbs_conditional(const ModelState& state, int d, int c);

// Resamples every sentence in corpus order.
void gibbs_sweep(ModelState& state, std::mt19937_64& rng);

// Collapsed negative log likelihood of the sentiment words plus the
// negative log prior of the smoothers, for the current y.
double map_objective(const ModelState& state);

struct SmootherGradient {
  std::vector<double> topic;  // T x V'
  std::vector<double> senti;  // S x V'
};

SmootherGradient map_gradient(const ModelState& state);

// Evaluates the objective (and optionally its gradient) at arbitrary
// smoother values against the counts of `state`.
class SmootherObjective {
 public:
  explicit SmootherObjective(const ModelState& state) : state_(state) {}
  double operator()(const std::vector<double>& y_topic, const std::vector<double>& y_senti,
                    SmootherGradient* grad) const;

 private:
  const ModelState& state_;
};

struct OptimizeResult {
  double objective_before = 0.0;
  double objective_after = 0.0;
  int iterations = 0;
  bool converged = false;
};

OptimizeResult optimize_smoothers(ModelState& state, int max_iters = 50, double tol = 1e-5,
                                  Diagnostics* diag = nullptr);

struct TrainSchedule {
  int burn_in = 500;
  int interleave = 100;
  int total = 2000;

  void validate() const;
  // True when the optimizer runs right after sweep `sweep` (1-based).
  bool optimize_after(int sweep) const;
};

struct TrainObserver {
  std::function<void(int sweep)> on_sweep;
  std::function<void(int sweep, const OptimizeResult&)> on_optimize;
};

ModelState train(const Corpus& corpus, const Vocabulary& vocab, const Hyperparams& hp,
                 const SeedList& seeds, const TrainSchedule& schedule, std::uint64_t rng_seed,
                 const TrainObserver* observer = nullptr, Diagnostics* diag = nullptr);

// Runs the remaining sweeps (state.sweeps_done() + 1 .. schedule.total).
void continue_training(ModelState& state, const TrainSchedule& schedule,
                       const TrainObserver* observer = nullptr, Diagnostics* diag = nullptr);

struct PosteriorEstimates {
  int num_docs = 0;
  int num_topics = 0;
  int num_sentiments = 0;
  int vocab_size = 0;
  int sentiment_vocab_size = 0;
  std::vector<double> pi;         // D x S
  std::vector<double> theta;      // D x T
  std::vector<double> phi;        // T x V
  std::vector<double> phi_prime;  // S x T x V'

  double pi_at(int d, int j) const { return pi[d * num_sentiments + j]; }
  double theta_at(int d, int k) const { return theta[d * num_topics + k]; }
  double phi_at(int k, int i) const { return phi[k * vocab_size + i]; }
  double phi_prime_at(int j, int k, int i) const {
    return phi_prime[(static_cast<size_t>(j) * num_topics + k) * sentiment_vocab_size + i];
  }
};

PosteriorEstimates estimate(const ModelState& state);

// y_senti[positive][i] - y_senti[negative][i].
double lexicon_polarity(const ModelState& state, int sentiment_word);
double lexicon_polarity(const ModelState& state, std::string_view stem);  // throws DataError

}  // namespace revsum
