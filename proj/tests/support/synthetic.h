#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "revsum/corpus.h"
#include "revsum/model.h"

namespace revsum::testing {

// Corpus drawn from the model's own generative story with planted topics
// (disjoint aspect vocabularies) and planted word polarities.
struct GenerativeSpec {
  int num_reviews = 500;
  int num_topics = 3;
  int aspect_words_per_topic = 30;
  int sentiment_words_per_polarity = 20;
  int sentences_per_review = 6;
  int aspect_tokens_per_sentence = 3;
  int sentiment_tokens_per_sentence = 2;
  double alpha = 0.1;
  double gamma = 0.1;
  double aspect_concentration = 1.0;
  double planted_y = 2.0;  // y_ji is +planted_y for the word's own polarity, -planted_y otherwise
  int seeds_per_polarity = 4;
  std::uint64_t seed = 7;
};

struct GenerativeCorpus {
  Corpus corpus;
  std::vector<std::vector<std::string>> topic_words;
  std::vector<std::string> positive_words;
  std::vector<std::string> negative_words;
  SeedList seeds;
  std::vector<Assignment> planted;  // per sentence, corpus order
  std::vector<std::vector<double>> planted_phi;  // per topic, over topic_words[k]
};

GenerativeCorpus generate_corpus(const GenerativeSpec& spec);

std::vector<double> sample_dirichlet(const std::vector<double>& concentration, std::mt19937_64& rng);

// Fifty-odd pattern-shaped reviews over a handful of entities. Every entity
// has planted liked and disliked aspects; pros/cons list "adj noun" items.
struct SmokeSpec {
  int num_reviews = 50;
  int num_entities = 5;
  std::uint64_t seed = 11;
};

Corpus generate_smoke_corpus(const SmokeSpec& spec);

// Writes the corpus as tagged JSONL (surface/pos pairs) for ingestion.
void write_tagged_jsonl(const Corpus& corpus, const std::string& path);

Token tagged(const std::string& surface, const std::string& pos);
Sentence tagged_sentence(const std::vector<std::pair<std::string, std::string>>& words,
                         const std::string& review_id = "r");
// "word/TAG word/TAG ..." shorthand.
Sentence parse_tagged(const std::string& text, const std::string& review_id = "r");

}  // namespace revsum::testing
