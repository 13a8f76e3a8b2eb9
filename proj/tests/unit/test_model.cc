#include <doctest.h>

#include <cmath>
#include <numeric>

#include "fixtures.h"
#include "oracles.h"
#include "revsum/error.h"
#include "revsum/model.h"
#include "revsum/vocabulary.h"
#include "synthetic.h"

using namespace revsum;
using namespace revsum::testing;

namespace {

std::vector<double> normalized(std::vector<double> v) {
  const double z = std::accumulate(v.begin(), v.end(), 0.0);
  for (double& x : v) x /= z;
  return v;
}

void check_count_invariants(const ModelState& s) {
  CHECK(s.recount() == s.counts());
  long tw = 0, stw = 0, words = 0, swords = 0;
  for (int v : s.counts().topic_word) tw += v;
  for (int v : s.counts().senti_topic_word) stw += v;
  for (int d = 0; d < s.num_docs(); ++d) {
    int sk = 0, sj = 0;
    for (int k = 0; k < s.num_topics(); ++k) sk += s.n_dt(d, k);
    for (int j = 0; j < s.num_sentiments(); ++j) sj += s.n_ds(d, j);
    CHECK(sk == s.num_sentences(d));
    CHECK(sj == s.num_sentences(d));
    for (const auto& sent : s.data().docs[d]) {
      words += static_cast<long>(sent.words.size());
      swords += static_cast<long>(sent.sentiment_words.size());
    }
  }
  CHECK(tw == words);
  CHECK(stw == swords);
}

GenerativeCorpus small_corpus(int reviews = 50) {
  GenerativeSpec spec;
  spec.num_reviews = reviews;
  return generate_corpus(spec);
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("hyperparameter validation") {
  Hyperparams hp;
  CHECK_NOTHROW(hp.validate());
  hp.alpha = 0;
  CHECK_THROWS_AS(hp.validate(), ConfigError);
  hp = {};
  hp.num_topics = 0;
  CHECK_THROWS_AS(hp.validate(), ConfigError);
  hp = {};
  hp.num_sentiments = 3;
  CHECK_THROWS_AS(hp.validate(), ConfigError);
  CHECK(Hyperparams{}.sigma_sq() == 2.0);
}

TEST_CASE("init: counts agree, zero smoothers give beta' = 1, seeds get exp(+-2)") {
  GenerativeCorpus g = small_corpus();
  Vocabulary vocab = build_vocabulary(g.corpus, 1, {});
  Hyperparams hp;
  hp.num_topics = 3;
  SeedList seeds{{"pos00"}, {"neg00"}};
  ModelState s = init_model(g.corpus, vocab, hp, seeds, 5);
  check_count_invariants(s);
  const int good = *vocab.find_sentiment("pos00");
  const int bad = *vocab.find_sentiment("neg00");
  const int other = *vocab.find_sentiment("pos05");
  for (int k = 0; k < 3; ++k) {
    CHECK(s.beta_prime(0, k, other) == 1.0);
    CHECK(s.beta_prime(1, k, other) == 1.0);
    CHECK(s.beta_prime(0, k, good) == doctest::Approx(std::exp(2.0)).epsilon(1e-15));
    CHECK(s.beta_prime(1, k, good) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
    CHECK(s.beta_prime(0, k, bad) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
  }
  CHECK(s.frozen(good));
  CHECK(s.frozen(bad));
  CHECK_FALSE(s.frozen(other));
  CHECK(lexicon_polarity(s, good) == 4.0);
  CHECK(lexicon_polarity(s, "neg00") == -4.0);
  CHECK(lexicon_polarity(s, other) == 0.0);
  CHECK_THROWS_AS(lexicon_polarity(s, "nosuchword"), DataError);
}

TEST_CASE("missing seed words are reported and ignored") {
  GenerativeCorpus g = small_corpus();
  Vocabulary vocab = build_vocabulary(g.corpus, 1, {});
  Diagnostics diag;
  ModelState s = init_model(g.corpus, vocab, Hyperparams{}, SeedList{{"absent"}, {}}, 1, &diag);
  CHECK(diag.warnings().size() == 1);
  for (double y : s.y_senti()) CHECK(y == 0.0);
}

TEST_CASE("seed lookup falls back to the stem") {
  Corpus c;
  c.reviews.push_back({"r", "e", {parse_tagged("delicious/JJ food/NN")}, {}, {}});
  Vocabulary vocab = build_vocabulary(c, 1, {});
  Diagnostics diag;
  ModelState s = init_model(c, vocab, Hyperparams{}, SeedList{{"delicious"}, {}}, 1, &diag);
  CHECK(diag.warnings().empty());
  CHECK(lexicon_polarity(s, "delici") == 4.0);
}

TEST_CASE("conditional with an empty sentence is the document factor") {
  Hyperparams hp;
  hp.num_topics = 2;
  ModelState s = state_from_ids({{{{}, {}}, {{0}, {0}}, {{1}, {}}}}, 2, 1, hp);
  s.set_assignments({{0, 0}, {1, 0}, {1, 1}});
  s.remove_sentence(0, 0);
  auto p = gibbs_conditional(s, 0, 0);
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k)
      CHECK(p[j * 2 + k] == doctest::Approx((s.n_dt(0, k) + hp.alpha) * (s.n_ds(0, j) + hp.gamma)).epsilon(1e-12));
}

TEST_CASE("conditional with one word and one topic") {
  Hyperparams hp;
  hp.num_topics = 1;
  ModelState s = state_from_ids({{{{0}, {}}, {{0, 1, 1}, {}}}}, 3, 1, hp);
  s.set_assignments({{0, 0}, {0, 0}});
  s.remove_sentence(0, 0);
  auto p = gibbs_conditional(s, 0, 0);
  const double word = (1 + hp.beta) / (3 + 3 * hp.beta) * (1 + hp.alpha);
  CHECK(p[0] == doctest::Approx(word * (1 + hp.gamma)).epsilon(1e-12));
  CHECK(p[1] == doctest::Approx(word * hp.gamma).epsilon(1e-12));
}

TEST_CASE("conditional matches the urn oracle on random states") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    ModelState s = random_state(rng, 2, 2 + trial % 3, 4, 5, 5, 1.5);
    for (int d = 0; d < s.num_docs(); ++d) {
      for (int c = 0; c < s.num_sentences(d); ++c) {
        auto expect = oracle_conditional(s, d, c);
        const Assignment a = s.assignment(d, c);
        const Counts before = s.counts();
        s.remove_sentence(d, c);
        auto got = normalized(gibbs_conditional(s, d, c));
        s.add_sentence(d, c, a);
        CHECK(s.counts() == before);  // exchange restores counts bitwise
        REQUIRE(got.size() == expect.size());
        double total = 0.0;
        for (size_t x = 0; x < got.size(); ++x) {
          CHECK(got[x] == doctest::Approx(expect[x]).epsilon(1e-12));
          total += got[x];
        }
        CHECK(std::abs(total - 1.0) <= 1e-12);
      }
    }
  }
}

TEST_CASE("log conditional survives long sentences") {
  Hyperparams hp;
  hp.num_topics = 2;
  std::vector<int> many(400, 0), senti(400, 0);
  ModelState s = state_from_ids({{{many, senti}, {{1}, {1}}}}, 2, 2, hp);
  s.set_assignments({{0, 0}, {1, 1}});
  s.remove_sentence(0, 0);
  auto lp = log_gibbs_conditional(s, 0, 0);
  for (double v : lp) CHECK(std::isfinite(v));
}

TEST_CASE("degenerate conditional picks the dominant cell") {
  Hyperparams hp;
  hp.num_topics = 2;
  // Sentence 40 carries 60 copies of word 0, which only topic 1 has seen;
  // topic 0 holds 100 copies of word 1.
  std::vector<IdDoc> docs(1);
  for (int c = 0; c < 40; ++c) docs[0].push_back({{0, 0, 0}, {}});
  docs[0].push_back({std::vector<int>(60, 0), {}});
  docs[0].push_back({std::vector<int>(100, 1), {}});
  ModelState s = state_from_ids(docs, 2, 1, hp);
  std::vector<Assignment> a(docs[0].size(), {1, 0});
  a.back() = {0, 0};
  s.set_assignments(a);
  s.remove_sentence(0, 40);
  auto p = normalized(gibbs_conditional(s, 0, 40));
  s.add_sentence(0, 40, {1, 0});
  REQUIRE(p[1] + p[3] >= 1 - 1e-12);  // topic 1 under either sentiment
  std::mt19937_64 rng(1);
  gibbs_sweep(s, rng);
  CHECK(s.assignment(0, 40).topic == 1);
}

TEST_CASE("sweeps keep counts consistent and are deterministic") {
  GenerativeCorpus g = small_corpus();
  Vocabulary vocab = build_vocabulary(g.corpus, 1, {});
  Hyperparams hp;
  hp.num_topics = 3;
  ModelState a = init_model(g.corpus, vocab, hp, g.seeds, 9);
  ModelState b = init_model(g.corpus, vocab, hp, g.seeds, 9);
  for (int i = 0; i < 20; ++i) {
    gibbs_sweep(a, a.rng());
    gibbs_sweep(b, b.rng());
  }
  check_count_invariants(a);
  CHECK(a.assignments() == b.assignments());
  CHECK(a.sweeps_done() == 20);
  ModelState c = init_model(g.corpus, vocab, hp, g.seeds, 10);
  for (int i = 0; i < 20; ++i) gibbs_sweep(c, c.rng());
  CHECK(c.assignments() != a.assignments());
}

TEST_CASE("beta' tracks the smoothers after every mutation") {
  std::mt19937_64 rng(4);
  ModelState s = random_state(rng, 3, 3, 4, 6);
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 3; ++k) {
      double sum = 0.0;
      for (int i = 0; i < 6; ++i) {
        CHECK(s.beta_prime(j, k, i) == std::exp(s.y_topic(k, i) + s.y_senti(j, i)));
        sum += s.beta_prime(j, k, i);
      }
      CHECK(s.beta_prime_sum(j, k) == doctest::Approx(sum).epsilon(1e-14));
    }
  optimize_smoothers(s, 5);
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 6; ++i) CHECK(s.beta_prime(j, k, i) == std::exp(s.y_topic(k, i) + s.y_senti(j, i)));
}

TEST_CASE("schedule arithmetic") {
  TrainSchedule def;
  std::vector<int> at;
  for (int s = 1; s <= def.total; ++s)
    if (def.optimize_after(s)) at.push_back(s);
  REQUIRE(at.size() == 16);
  CHECK(at.front() == 500);
  CHECK(at.back() == 2000);
  CHECK(at[1] == 600);
  CHECK_THROWS_AS((TrainSchedule{0, 0, 10}.validate()), ConfigError);
  CHECK_THROWS_AS((TrainSchedule{0, 1, 0}.validate()), ConfigError);
}

TEST_CASE("schedule {0,1,1} on a one-sentence corpus: one sweep, one optimization") {
  Corpus c;
  c.reviews.push_back({"r", "e", {parse_tagged("great/JJ food/NN")}, {}, {}});
  Vocabulary vocab = build_vocabulary(c, 1, {});
  int sweeps = 0, opts = 0;
  TrainObserver obs;
  obs.on_sweep = [&](int) { ++sweeps; };
  obs.on_optimize = [&](int, const OptimizeResult&) { ++opts; };
  Hyperparams hp;
  hp.num_topics = 2;
  ModelState s = train(c, vocab, hp, SeedList{}, {0, 1, 1}, 1, &obs);
  CHECK(sweeps == 1);
  CHECK(opts == 1);
  CHECK(s.sweeps_done() == 1);
}

TEST_CASE("training is deterministic and resumable") {
  GenerativeCorpus g = small_corpus(30);
  Vocabulary vocab = build_vocabulary(g.corpus, 1, {});
  Hyperparams hp;
  hp.num_topics = 3;
  ModelState full = train(g.corpus, vocab, hp, g.seeds, {5, 5, 20}, 2);
  ModelState again = train(g.corpus, vocab, hp, g.seeds, {5, 5, 20}, 2);
  CHECK(full.assignments() == again.assignments());
  CHECK(full.y_senti() == again.y_senti());
  ModelState part = train(g.corpus, vocab, hp, g.seeds, {5, 5, 12}, 2);
  continue_training(part, {5, 5, 20});
  CHECK(part.assignments() == full.assignments());
  CHECK(part.y_topic() == full.y_topic());
}

TEST_CASE("estimates") {
  Hyperparams hp;
  hp.num_topics = 2;
  // Document 0: three sentences on topic 0, one on topic 1, all positive.
  ModelState s = state_from_ids({{{{0}, {0}}, {{0}, {}}, {{1}, {1}}, {{1}, {}}}, {{{}, {}}}}, 2, 2, hp);
  s.set_assignments({{0, 0}, {0, 0}, {0, 0}, {1, 0}, {0, 0}});
  PosteriorEstimates est = estimate(s);
  CHECK(est.theta_at(0, 0) == doctest::Approx(3.1 / 4.2).epsilon(1e-15));
  CHECK(est.theta_at(0, 1) == doctest::Approx(1.1 / 4.2).epsilon(1e-15));
  CHECK(est.pi_at(0, 0) == doctest::Approx(4.1 / 4.2).epsilon(1e-15));
  CHECK(est.phi_at(0, 0) == doctest::Approx((2 + hp.beta) / (3 + 2 * hp.beta)).epsilon(1e-15));
  CHECK(est.phi_prime_at(0, 0, 1) == doctest::Approx((1 + 1.0) / (2 + 2.0)).epsilon(1e-15));

  std::mt19937_64 rng(8);
  ModelState r = random_state(rng, 4, 3, 5, 6);
  PosteriorEstimates e = estimate(r);
  for (int d = 0; d < 4; ++d) {
    double sp = 0, st = 0;
    for (int j = 0; j < 2; ++j) sp += e.pi_at(d, j);
    for (int k = 0; k < 3; ++k) st += e.theta_at(d, k);
    CHECK(std::abs(sp - 1) <= 1e-9);
    CHECK(std::abs(st - 1) <= 1e-9);
  }
  for (int k = 0; k < 3; ++k) {
    double sum = 0;
    for (int i = 0; i < 5; ++i) {
      CHECK(e.phi_at(k, i) > 0);
      sum += e.phi_at(k, i);
    }
    CHECK(std::abs(sum - 1) <= 1e-9);
    for (int j = 0; j < 2; ++j) {
      double sj = 0;
      for (int i = 0; i < 6; ++i) sj += e.phi_prime_at(j, k, i);
      CHECK(std::abs(sj - 1) <= 1e-9);
    }
  }
}

TEST_CASE("symmetric document smoothing") {
  Hyperparams hp;
  hp.num_topics = 1;
  ModelState s = state_from_ids({{{{0}, {}}}, {{{0}, {}}}}, 1, 1, hp);
  s.set_assignments({{0, 0}, {0, 0}});
  // Empty the second document's counts by moving it out.
  s.remove_sentence(1, 0);
  PosteriorEstimates est = estimate(s);
  CHECK(est.pi_at(1, 0) == 0.5);
  CHECK(est.pi_at(1, 1) == 0.5);
  s.add_sentence(1, 0, {0, 0});
}

}
