#include "revsum/vocabulary.h"

#include <algorithm>
#include <cctype>

#include "revsum/error.h"
#include "revsum/stemmer.h"
#include "revsum/text.h"

namespace revsum {

using nlohmann::json;

std::string_view drop_reason_name(DropReason reason) {
  switch (reason) {
    case DropReason::kNonWord: return "non_word";
    case DropReason::kStopword: return "stopword";
    case DropReason::kRoleConflict: return "role_conflict";
    case DropReason::kBelowMinCount: return "below_min_count";
    case DropReason::kOutOfVocabulary: return "out_of_vocabulary";
  }
  return "unknown";
}

namespace {

DropReason drop_reason_from_name(std::string_view name) {
  for (auto r : {DropReason::kNonWord, DropReason::kStopword, DropReason::kRoleConflict,
                 DropReason::kBelowMinCount, DropReason::kOutOfVocabulary})
    if (drop_reason_name(r) == name) return r;
  throw DataError("unknown drop reason '" + std::string(name) + "'");
}

bool has_alnum(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)); });
}

}  // namespace

Vocabulary::Vocabulary(std::vector<std::string> non_sentiment, std::vector<std::string> sentiment)
    : non_sentiment_(std::move(non_sentiment)), sentiment_(std::move(sentiment)) {
  reindex();
}

void Vocabulary::reindex() {
  non_sentiment_index_.clear();
  sentiment_index_.clear();
  for (size_t i = 0; i < non_sentiment_.size(); ++i) {
    if (!non_sentiment_index_.emplace(non_sentiment_[i], static_cast<int>(i)).second)
      throw DataError("duplicate non-sentiment stem '" + non_sentiment_[i] + "'");
  }
  for (size_t i = 0; i < sentiment_.size(); ++i) {
    if (non_sentiment_index_.count(sentiment_[i]))
      throw DataError("stem '" + sentiment_[i] + "' indexed in both vocabularies");
    if (!sentiment_index_.emplace(sentiment_[i], static_cast<int>(i)).second)
      throw DataError("duplicate sentiment stem '" + sentiment_[i] + "'");
  }
}

std::optional<int> Vocabulary::find_non_sentiment(std::string_view stem) const {
  auto it = non_sentiment_index_.find(std::string(stem));
  if (it == non_sentiment_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Vocabulary::find_sentiment(std::string_view stem) const {
  auto it = sentiment_index_.find(std::string(stem));
  if (it == sentiment_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Vocabulary::lookup(const Token& token) const {
  return token.is_sentiment ? find_sentiment(token.stem) : find_non_sentiment(token.stem);
}

std::optional<DropReason> Vocabulary::drop_reason(const Token& token) const {
  if (lookup(token)) return std::nullopt;
  auto it = drops_.find({token.stem, token.is_sentiment});
  if (it != drops_.end()) return it->second;
  if (!has_alnum(token.stem)) return DropReason::kNonWord;
  return DropReason::kOutOfVocabulary;
}

void Vocabulary::record_drop(std::string stem, bool sentiment_role, DropReason reason) {
  drops_[{std::move(stem), sentiment_role}] = reason;
}

std::string Vocabulary::digest() const {
  Fnv1a h;
  for (const auto& w : non_sentiment_) {
    h.update(w);
    h.update_separator();
  }
  h.update("|");
  for (const auto& w : sentiment_) {
    h.update(w);
    h.update_separator();
  }
  return h.hex();
}

json Vocabulary::to_json() const {
  json drops = json::array();
  for (const auto& [key, reason] : drops_)
    drops.push_back({{"stem", key.first}, {"sentiment", key.second}, {"reason", drop_reason_name(reason)}});
  return {{"non_sentiment", non_sentiment_}, {"sentiment", sentiment_}, {"dropped", drops}};
}

Vocabulary Vocabulary::from_json(const json& j) {
  try {
    Vocabulary v(j.at("non_sentiment").get<std::vector<std::string>>(),
                 j.at("sentiment").get<std::vector<std::string>>());
    if (j.contains("dropped")) {
      for (const auto& d : j.at("dropped"))
        v.record_drop(d.at("stem").get<std::string>(), d.at("sentiment").get<bool>(),
                      drop_reason_from_name(d.at("reason").get<std::string>()));
    }
    return v;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed vocabulary: ") + e.what());
  }
}

std::set<std::string> default_stopwords() {
  return {"a",     "about", "above", "after", "again",  "against", "all",   "am",    "an",
          "and",   "any",   "are",   "as",    "at",     "be",      "been",  "before", "being",
          "below", "between", "both", "but",  "by",     "can",     "could", "did",   "do",
          "does",  "doing", "down",  "during", "each",  "for",     "from",  "further", "had",
          "has",   "have",  "having", "he",   "her",    "here",    "hers",  "herself", "him",
          "himself", "his", "how",   "i",     "if",     "in",      "into",  "is",    "it",
          "its",   "itself", "me",   "my",    "myself", "nor",     "of",    "off",   "on",
          "once",  "only",  "or",    "other", "ought",  "our",     "ours",  "ourselves", "out",
          "over",  "own",   "same",  "she",   "should", "so",      "some",  "such",  "than",
          "that",  "the",   "their", "theirs", "them",  "themselves", "then", "there", "these",
          "they",  "this",  "those", "through", "to",   "under",   "until", "up",
          "was",   "we",    "were",  "what",  "when",   "where",   "which", "while", "who",
          "whom",  "why",   "will",  "with",  "would", "you",     "your",  "yours", "yourself",
          "yourselves", "'s", "n't", "'m",   "'re",    "'ve",     "'ll",   "'d",    "get",
          "got",   "go",    "went",  "also",  "just"};
}

Vocabulary build_vocabulary(const Corpus& corpus, int min_count,
                            const std::set<std::string>& stopwords) {
  if (corpus.reviews.empty()) throw DataError("cannot build a vocabulary from an empty corpus");
  if (min_count < 1) throw ConfigError("min_count must be >= 1");

  struct RoleCounts {
    long sentiment = 0;
    long non_sentiment = 0;
  };
  std::map<std::string, RoleCounts> counts;
  std::map<std::pair<std::string, bool>, DropReason> drops;

  for (const auto& review : corpus.reviews) {
    for (const auto& sentence : review.sentences) {
      for (const auto& tok : sentence.tokens) {
        if (!has_alnum(tok.stem)) {
          drops[{tok.stem, tok.is_sentiment}] = DropReason::kNonWord;
          continue;
        }
        if (!tok.is_sentiment && (stopwords.count(tok.stem) || stopwords.count(to_lower(tok.surface)))) {
          drops[{tok.stem, false}] = DropReason::kStopword;
          continue;
        }
        auto& c = counts[tok.stem];
        (tok.is_sentiment ? c.sentiment : c.non_sentiment)++;
      }
    }
  }

  std::vector<std::string> non_sentiment, sentiment;
  for (const auto& [stem, c] : counts) {
    bool as_sentiment = c.sentiment >= c.non_sentiment;
    long kept = as_sentiment ? c.sentiment : c.non_sentiment;
    long other = as_sentiment ? c.non_sentiment : c.sentiment;
    if (other > 0) drops[{stem, !as_sentiment}] = DropReason::kRoleConflict;
    if (kept < min_count) {
      drops[{stem, as_sentiment}] = DropReason::kBelowMinCount;
      continue;
    }
    (as_sentiment ? sentiment : non_sentiment).push_back(stem);
  }
  if (non_sentiment.empty() && sentiment.empty())
    throw DataError("vocabulary is empty after filtering (min_count=" + std::to_string(min_count) + ")");

  Vocabulary vocab(std::move(non_sentiment), std::move(sentiment));
  for (auto& [key, reason] : drops) vocab.record_drop(key.first, key.second, reason);
  return vocab;
}

}  // namespace revsum
