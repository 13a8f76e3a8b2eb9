#include "revsum/fixture_tagger.h"

#include <cctype>
#include <fstream>

#include <json.hpp>

#include "revsum/error.h"
#include "revsum/text.h"

namespace revsum {

namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() > suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

FixtureTagger::FixtureTagger() {
  const std::vector<std::pair<const char*, std::vector<const char*>>> groups = {
      {"DT", {"the", "a", "an", "this", "that", "these", "those", "every", "each", "some", "any", "all", "its",
              "their", "our", "my", "his", "her", "your"}},
      {"TO", {"to"}},
      {"RB", {"not", "n't", "never", "hardly", "very", "really", "so", "too", "quite", "extremely", "always",
              "also", "just", "rather", "pretty", "fairly", "still", "again", "even", "often", "here", "there",
              "well", "much", "more", "most", "less", "least", "super", "incredibly", "totally", "somewhat"}},
      {"JJ", {"good", "great", "nice", "excellent", "bad", "terrible", "awful", "poor", "amazing", "friendly",
              "rude", "slow", "fast", "quick", "small", "large", "big", "cheap", "expensive", "clean", "dirty",
              "fresh", "stale", "hot", "cold", "warm", "easy", "hard", "simple", "clear", "striking", "tasty",
              "bland", "delicious", "cozy", "noisy", "quiet", "loud", "helpful", "attentive", "beautiful",
              "romantic", "strong", "weak", "bitter", "sweet", "sour", "salty", "spicy", "tiny", "huge", "new",
              "old", "decent", "fine", "ok", "okay", "perfect", "solid", "sturdy", "flimsy", "reliable",
              "broken", "leaky", "noisy", "pleasant", "crowded", "lovely", "wonderful", "horrible", "mediocre",
              "overpriced", "reasonable", "generous", "long", "short", "high", "low", "full", "empty", "favorite",
              "happy", "sad", "slick", "durable", "fragile", "disappointing", "worth"}},
      {"JJS", {"best", "worst"}},
      {"JJR", {"better", "worse"}},
      {"VBZ", {"is", "has", "does", "includes", "tastes", "looks", "seems", "makes", "feels", "works", "comes",
               "needs", "gets", "brews", "holds", "leaks", "serves", "offers"}},
      {"VBP", {"are", "have", "do", "look", "seem", "taste", "feel", "work", "come", "need"}},
      {"VBD", {"was", "were", "had", "did", "came", "got", "made", "felt", "looked", "seemed", "tasted"}},
      {"VB", {"be", "remove", "clean", "use", "make", "eat", "get", "go", "love", "hate", "enjoy", "recommend",
              "buy", "brew", "fill", "open", "pour", "find", "return", "wait"}},
      {"VBN", {"been"}},
      {"MD", {"will", "would", "can", "could", "should", "must", "may", "might"}},
      {"PRP", {"i", "we", "you", "it", "they", "he", "she", "me", "us", "them"}},
      {"IN", {"of", "in", "on", "at", "for", "with", "from", "by", "about", "than", "as", "into", "after",
              "before", "if", "because", "while"}},
      {"CC", {"and", "but", "or", "yet", "nor"}},
      {"WRB", {"when", "where", "how", "why"}},
      {"WP", {"who", "what"}},
  };
  for (const auto& [pos, words] : groups)
    for (const char* w : words) lexicon_[w] = pos;
  lexicon_["no"] = "DT";
}

void FixtureTagger::add(std::string word, std::string pos) { lexicon_[to_lower(word)] = std::move(pos); }

std::vector<std::string> FixtureTagger::tokenize(std::string_view sentence) const {
  std::vector<std::string> out;
  for (const auto& w : tokenize_words(sentence)) {
    std::string lw = to_lower(w);
    if (ends_with(lw, "n't")) {
      std::string head = w.substr(0, w.size() - 3);
      if (to_lower(head) == "ca") head += "n";
      if (to_lower(head) == "wo") head = "will";
      out.push_back(head);
      out.push_back(w.substr(w.size() - 3));
    } else {
      out.push_back(w);
    }
  }
  return out;
}

std::string FixtureTagger::tag(std::string_view word) const {
  std::string w = to_lower(word);
  if (auto it = lexicon_.find(w); it != lexicon_.end()) return it->second;
  bool numeric = !w.empty();
  for (char c : w) numeric = numeric && (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == ',');
  if (numeric) return "CD";
  if (ends_with(w, "ly")) return "RB";
  for (const char* suffix : {"ous", "ful", "ive", "able", "ible", "less", "ish", "ic", "al"})
    if (ends_with(w, suffix)) return "JJ";
  if (ends_with(w, "ing")) return "VBG";
  if (ends_with(w, "ed")) return "VBN";
  if (ends_with(w, "ss") || ends_with(w, "us")) return "NN";
  if (ends_with(w, "s")) return "NNS";
  return "NN";
}

std::vector<std::pair<std::string, std::string>> FixtureTagger::tag_sentence(std::string_view sentence) const {
  std::vector<std::pair<std::string, std::string>> out;
  for (auto& w : tokenize(sentence)) {
    std::string pos = tag(w);
    out.emplace_back(std::move(w), std::move(pos));
  }
  return out;
}

Review tag_review(std::string id, std::string entity_id, std::string_view text, const FixtureTagger& tagger,
                  const SentimentWordRule& rule, Diagnostics* diag) {
  Review r;
  r.id = std::move(id);
  r.entity_id = std::move(entity_id);
  for (const auto& fragment : split_sentences(text)) {
    Sentence s;
    s.review_id = r.id;
    for (const auto& [surface, pos] : tagger.tag_sentence(fragment))
      s.tokens.push_back(make_token(surface, pos, rule, diag));
    if (!s.tokens.empty()) r.sentences.push_back(std::move(s));
  }
  return r;
}

Corpus parse_raw_jsonl(std::istream& in, const std::string& source, const FixtureTagger& tagger,
                       const SentimentWordRule& rule, Diagnostics* diag) {
  Corpus corpus;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(source, lineno, e.what());
    }
    try {
      Review r = tag_review(j.at("id").get<std::string>(), j.at("entity_id").get<std::string>(),
                            j.at("text").get<std::string>(), tagger, rule, diag);
      r.pros = j.value("pros", std::vector<std::string>{});
      r.cons = j.value("cons", std::vector<std::string>{});
      corpus.reviews.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(source, lineno, e.what());
    }
  }
  if (corpus.reviews.empty()) throw DataError("no reviews in " + source);
  return corpus;
}

Corpus ingest_raw_jsonl(const std::string& path, const FixtureTagger& tagger, const SentimentWordRule& rule,
                        Diagnostics* diag) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus: " + path);
  return parse_raw_jsonl(in, path, tagger, rule, diag);
}

}  // namespace revsum
