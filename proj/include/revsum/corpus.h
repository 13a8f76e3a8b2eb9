#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "revsum/diagnostics.h"

namespace revsum {

struct Token {
  std::string surface;
  std::string stem;  // lowercase Porter stem, never empty
  std::string pos;   // Penn Treebank tag
  bool is_sentiment = false;

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::vector<Token> tokens;  // never empty
  std::string review_id;

  bool operator==(const Sentence&) const = default;
};

struct Review {
  std::string id;
  std::string entity_id;
  std::vector<Sentence> sentences;
  std::vector<std::string> pros;
  std::vector<std::string> cons;

  bool operator==(const Review&) const = default;
};

struct Corpus {
  std::vector<Review> reviews;

  size_t sentence_count() const;
  size_t token_count() const;
  bool operator==(const Corpus&) const = default;
};

// Decides which tokens are sentiment words. Adjectives and adverbs always
// are; `extra_sentiment_stems` adds non-adjectival opinion words.
class SentimentWordRule {
 public:
  SentimentWordRule();  // default extra list: love, hate, enjoy, worth, disappoint
  explicit SentimentWordRule(std::set<std::string> extra_sentiment_stems);

  // Builds the rule from raw words, stemming each entry.
  static SentimentWordRule from_words(const std::vector<std::string>& words);

  bool is_sentiment(std::string_view pos, std::string_view stem) const;
  const std::set<std::string>& extra_stems() const { return extra_; }

 private:
  std::set<std::string> extra_;
};

bool is_penn_tag(std::string_view tag);

// Builds a Token from a surface form and its tag. Unknown tags produce a
// warning and a non-sentiment token.
Token make_token(std::string_view surface, std::string_view pos, const SentimentWordRule& rule,
                 Diagnostics* diag = nullptr);

// Splits raw text on '.', '!' and '?'. Delimiters are removed and empty or
// whitespace-only fragments dropped; other fragments are kept verbatim.
std::vector<std::string> split_sentences(std::string_view raw_review_text);

enum class CorpusFormat { kJsonl, kConll };

CorpusFormat parse_corpus_format(std::string_view name);

// Reads a pre-tagged corpus. Throws ParseError (with line number) on
// malformed input.
Corpus ingest_tagged(const std::string& path, CorpusFormat format, const SentimentWordRule& rule,
                     Diagnostics* diag = nullptr);
Corpus parse_tagged_jsonl(std::istream& in, const std::string& source,
                          const SentimentWordRule& rule, Diagnostics* diag = nullptr);
Corpus parse_tagged_conll(std::istream& in, const std::string& source,
                          const SentimentWordRule& rule, Diagnostics* diag = nullptr);

// Writes the same JSONL layout ingest_tagged reads, with stems and
// sentiment flags included so the output can be reloaded losslessly.
void write_corpus_jsonl(const Corpus& corpus, std::ostream& out);
Corpus read_corpus_jsonl(const std::string& path);

struct ReferenceSummary {
  std::vector<std::string> pros;  // deduplicated, first-seen order
  std::vector<std::string> cons;
};

// Per-entity union of every reviewer's pros and cons. Duplicates are
// detected on the lowercased, whitespace-normalized string.
std::map<std::string, ReferenceSummary> build_reference_summaries(const Corpus& corpus);

}  // namespace revsum
