#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "revsum/corpus.h"
#include "revsum/diagnostics.h"

namespace revsum {

// Small lexicon tagger with suffix fallbacks. It exists to build test
// fixtures from plain text and is not meant for real corpora.
class FixtureTagger {
 public:
  FixtureTagger();

  // Splits on whitespace, strips edge punctuation and separates "n't".
  std::vector<std::string> tokenize(std::string_view sentence) const;
  std::string tag(std::string_view word) const;
  std::vector<std::pair<std::string, std::string>> tag_sentence(std::string_view sentence) const;

  void add(std::string word, std::string pos);

 private:
  std::unordered_map<std::string, std::string> lexicon_;
};

// Plain-text reviews, one JSON object per line:
// {"id", "entity_id", "text", "pros": [...], "cons": [...]}.
Corpus ingest_raw_jsonl(const std::string& path, const FixtureTagger& tagger, const SentimentWordRule& rule,
                        Diagnostics* diag = nullptr);
Corpus parse_raw_jsonl(std::istream& in, const std::string& source, const FixtureTagger& tagger,
                       const SentimentWordRule& rule, Diagnostics* diag = nullptr);

Review tag_review(std::string id, std::string entity_id, std::string_view text, const FixtureTagger& tagger,
                  const SentimentWordRule& rule, Diagnostics* diag = nullptr);

}  // namespace revsum
