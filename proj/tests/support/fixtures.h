#pragma once

#include <random>
#include <string>
#include <vector>

#include "revsum/model.h"
#include "revsum/vocabulary.h"

namespace revsum::testing {

using IdSentence = std::pair<std::vector<int>, std::vector<int>>;
using IdDoc = std::vector<IdSentence>;

inline Vocabulary numbered_vocab(int V, int Vp) {
  std::vector<std::string> a, s;
  for (int i = 0; i < V; ++i) a.push_back("w" + std::to_string(100 + i));
  for (int i = 0; i < Vp; ++i) s.push_back("s" + std::to_string(100 + i));
  return Vocabulary(a, s);
}

inline ModelState state_from_ids(const std::vector<IdDoc>& docs, int V, int Vp, Hyperparams hp) {
  return ModelState(ModelData::from_ids(docs, V, Vp), numbered_vocab(V, Vp), hp);
}

// Random documents, random assignments and random smoothers.
inline ModelState random_state(std::mt19937_64& rng, int D, int T, int V, int Vp, int max_words = 4,
                               double y_scale = 1.0) {
  std::uniform_int_distribution<int> nsent(1, 4), nw(0, max_words), wv(0, V - 1), wvp(0, Vp - 1);
  std::vector<IdDoc> docs(D);
  for (auto& doc : docs) {
    const int n = nsent(rng);
    for (int c = 0; c < n; ++c) {
      IdSentence s;
      for (int x = nw(rng); x > 0; --x) s.first.push_back(wv(rng));
      for (int x = nw(rng); x > 0; --x) s.second.push_back(wvp(rng));
      doc.push_back(s);
    }
  }
  Hyperparams hp;
  hp.num_topics = T;
  ModelState state = state_from_ids(docs, V, Vp, hp);
  std::uniform_int_distribution<int> tk(0, T - 1), sj(0, 1);
  std::vector<Assignment> a(state.data().sentence_count());
  for (auto& x : a) x = {tk(rng), sj(rng)};
  state.set_assignments(a);
  std::normal_distribution<double> g(0.0, y_scale);
  std::vector<double> yt(T * Vp), ys(2 * Vp);
  for (auto& y : yt) y = g(rng);
  for (auto& y : ys) y = g(rng);
  state.set_smoothers(yt, ys);
  return state;
}

}  // namespace revsum::testing
