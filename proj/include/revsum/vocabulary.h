#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "revsum/corpus.h"

namespace revsum {

enum class DropReason {
  kNonWord,         // no alphanumeric character (punctuation)
  kStopword,        // non-sentiment token on the stopword list
  kRoleConflict,    // stem indexed under the other role
  kBelowMinCount,
  kOutOfVocabulary  // stem never seen when the vocabulary was built
};

std::string_view drop_reason_name(DropReason reason);

// Two disjoint stem vocabularies: non-sentiment (aspect) words indexed
// 0..V-1 and sentiment words indexed 0..V'-1.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::vector<std::string> non_sentiment, std::vector<std::string> sentiment);

  int non_sentiment_size() const { return static_cast<int>(non_sentiment_.size()); }
  int sentiment_size() const { return static_cast<int>(sentiment_.size()); }
  const std::vector<std::string>& non_sentiment_words() const { return non_sentiment_; }
  const std::vector<std::string>& sentiment_words() const { return sentiment_; }

  std::optional<int> find_non_sentiment(std::string_view stem) const;
  std::optional<int> find_sentiment(std::string_view stem) const;

  // Index of the token in the vocabulary of its own role, if indexed.
  std::optional<int> lookup(const Token& token) const;

  // Why the token is not indexed; nullopt when lookup() succeeds.
  std::optional<DropReason> drop_reason(const Token& token) const;

  void record_drop(std::string stem, bool sentiment_role, DropReason reason);
  const std::map<std::pair<std::string, bool>, DropReason>& drops() const { return drops_; }

  // Content digest over both index spaces.
  std::string digest() const;

  nlohmann::json to_json() const;
  static Vocabulary from_json(const nlohmann::json& j);

 private:
  void reindex();

  std::vector<std::string> non_sentiment_;
  std::vector<std::string> sentiment_;
  std::unordered_map<std::string, int> non_sentiment_index_;
  std::unordered_map<std::string, int> sentiment_index_;
  std::map<std::pair<std::string, bool>, DropReason> drops_;
};

std::set<std::string> default_stopwords();

// Partitions corpus stems into the two vocabularies. A stem seen in both
// roles is indexed under its majority role (ties go to sentiment) and the
// minority occurrences are dropped. Stopwords (matched on stem or lowercase
// surface) are removed from the non-sentiment side only. Throws DataError
// when both vocabularies end up empty.
Vocabulary build_vocabulary(const Corpus& corpus, int min_count,
                            const std::set<std::string>& stopwords);

}  // namespace revsum
