#include "revsum/checkpoint.h"

#include <fstream>
#include <sstream>

#include "revsum/error.h"

namespace revsum {

using nlohmann::json;

json hyperparams_to_json(const Hyperparams& hp) {
  return {{"alpha", hp.alpha},         {"beta", hp.beta},           {"gamma", hp.gamma},
          {"sigma1_sq", hp.sigma1_sq}, {"sigma2_sq", hp.sigma2_sq}, {"num_topics", hp.num_topics},
          {"num_sentiments", hp.num_sentiments}, {"seed_offset", hp.seed_offset}};
}

Hyperparams hyperparams_from_json(const json& j) {
  Hyperparams hp;
  hp.alpha = j.at("alpha").get<double>();
  hp.beta = j.at("beta").get<double>();
  hp.gamma = j.at("gamma").get<double>();
  hp.sigma1_sq = j.at("sigma1_sq").get<double>();
  hp.sigma2_sq = j.at("sigma2_sq").get<double>();
  hp.num_topics = j.at("num_topics").get<int>();
  hp.num_sentiments = j.at("num_sentiments").get<int>();
  hp.seed_offset = j.at("seed_offset").get<double>();
  return hp;
}

json checkpoint_to_json(const ModelState& state) {
  std::vector<int> shape, topics, sentiments, frozen;
  for (int d = 0; d < state.num_docs(); ++d) shape.push_back(state.num_sentences(d));
  for (const auto& a : state.assignments()) {
    topics.push_back(a.topic);
    sentiments.push_back(a.sentiment);
  }
  for (int i = 0; i < state.sentiment_vocab_size(); ++i)
    if (state.frozen(i)) frozen.push_back(i);
  const Counts& c = state.counts();
  std::ostringstream rng;
  rng << state.rng();
  return {{"format", "revsum-checkpoint"},
          {"version", kCheckpointVersion},
          {"hyperparams", hyperparams_to_json(state.hyperparams())},
          {"vocab_digest", state.vocab().digest()},
          {"vocab_size", state.vocab_size()},
          {"sentiment_vocab_size", state.sentiment_vocab_size()},
          {"sentences_per_doc", shape},
          {"topics", topics},
          {"sentiments", sentiments},
          {"counts",
           {{"topic_word", c.topic_word},
            {"topic_total", c.topic_total},
            {"senti_topic_word", c.senti_topic_word},
            {"senti_topic_total", c.senti_topic_total},
            {"doc_topic", c.doc_topic},
            {"doc_senti", c.doc_senti}}},
          {"y_topic", state.y_topic()},
          {"y_senti", state.y_senti()},
          {"frozen", frozen},
          {"rng_state", rng.str()},
          {"sweeps_done", state.sweeps_done()}};
}

ModelState checkpoint_from_json(const json& j, ModelData data, const Vocabulary& vocab) {
  try {
    if (j.at("format").get<std::string>() != "revsum-checkpoint") throw DataError("not a model checkpoint");
    if (j.at("version").get<int>() != kCheckpointVersion)
      throw DataError("unsupported checkpoint version " + std::to_string(j.at("version").get<int>()));
    if (j.at("vocab_digest").get<std::string>() != vocab.digest())
      throw DataError("checkpoint was trained with a different vocabulary");
    auto shape = j.at("sentences_per_doc").get<std::vector<int>>();
    if (shape.size() != data.docs.size()) throw DataError("checkpoint document count does not match the corpus");
    for (size_t d = 0; d < shape.size(); ++d)
      if (static_cast<size_t>(shape[d]) != data.docs[d].size())
        throw DataError("checkpoint sentence count differs for document " + std::to_string(d));

    ModelState state(std::move(data), vocab, hyperparams_from_json(j.at("hyperparams")));
    auto topics = j.at("topics").get<std::vector<int>>();
    auto sentiments = j.at("sentiments").get<std::vector<int>>();
    if (topics.size() != sentiments.size()) throw DataError("assignment arrays differ in length");
    std::vector<Assignment> assignments;
    for (size_t x = 0; x < topics.size(); ++x) assignments.push_back({topics[x], sentiments[x]});
    state.set_assignments(std::move(assignments));

    const json& jc = j.at("counts");
    Counts stored{jc.at("topic_word").get<std::vector<int>>(),       jc.at("topic_total").get<std::vector<int>>(),
                  jc.at("senti_topic_word").get<std::vector<int>>(), jc.at("senti_topic_total").get<std::vector<int>>(),
                  jc.at("doc_topic").get<std::vector<int>>(),        jc.at("doc_senti").get<std::vector<int>>()};
    if (!(stored == state.counts())) throw DataError("checkpoint counts do not match its assignments");

    for (int i : j.at("frozen").get<std::vector<int>>()) {
      if (i < 0 || i >= state.sentiment_vocab_size()) throw DataError("frozen index out of range");
      state.set_frozen(i, true);
    }
    state.set_smoothers(j.at("y_topic").get<std::vector<double>>(), j.at("y_senti").get<std::vector<double>>());
    std::istringstream rng(j.at("rng_state").get<std::string>());
    rng >> state.rng();
    if (!rng) throw DataError("corrupt RNG state in checkpoint");
    state.set_sweeps_done(j.at("sweeps_done").get<int>());
    return state;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed checkpoint: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("malformed checkpoint: ") + e.what());
  }
}

void save_checkpoint(const ModelState& state, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write checkpoint: " + path);
  out << checkpoint_to_json(state).dump() << "\n";
}

ModelState load_checkpoint(const std::string& path, ModelData data, const Vocabulary& vocab) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open checkpoint: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw DataError("checkpoint " + path + " is not valid JSON: " + e.what());
  }
  return checkpoint_from_json(j, std::move(data), vocab);
}

}  // namespace revsum
