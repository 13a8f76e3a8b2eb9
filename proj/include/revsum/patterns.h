#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "revsum/corpus.h"

namespace revsum {

// Lexical classes used in extraction patterns. `nn` matches a maximal run
// of noun tags; `neg` matches a token from the negation list. Tokens on the
// negation list match no other class.
enum class Category { kNn, kVb, kDt, kRb, kJj, kTo, kNeg };
enum class Quantifier { kOne, kOptional, kStar };

struct PatternAtom {
  Category category = Category::kNn;
  Quantifier quantifier = Quantifier::kOne;
  bool operator==(const PatternAtom&) const = default;
};

struct Pattern {
  int id = 0;  // 1..5
  std::vector<PatternAtom> atoms;
  bool negated = false;

  // e.g. "nn? vb dt? rb* jj nn"
  std::string to_string() const;
  static Pattern parse(int id, std::string_view text, bool negated = false);
};

// The five positive patterns, ids 1..5.
std::vector<Pattern> standard_patterns();

// Order in which patterns are tried at a start position; patterns that
// extend others come first.
const std::vector<int>& pattern_priority();

// For each positive pattern: one variant with a negation token before its
// first verb (when it has one) and one with a negation token before the
// adverb run leading into the adjective.
std::vector<Pattern> negation_variants(const std::vector<Pattern>& patterns);

// "service" -> {1,3,5}, "product" -> {1..5}, or a comma list like "1,3,5".
std::set<int> parse_pattern_ids(std::string_view spec);

std::set<std::string> default_negation_words();

struct Segment {
  std::vector<Token> tokens;
  std::string review_id;
  std::string entity_id;
  int sentence_index = 0;
  int start = 0;  // token offsets in the sentence, end exclusive
  int end = 0;
  int pattern_id = 0;
  bool negated = false;
  std::optional<int> aspect;
  std::optional<int> sentiment;
  std::optional<double> polarity;
  std::string classifier;  // "SEN" or "SWN" once a sentiment is assigned

  int size() const { return end - start; }
  std::string text() const;  // surfaces joined by single spaces
};

nlohmann::json segment_to_json(const Segment& s);

struct MatchOptions {
  int max_words = 7;
  std::set<std::string> negation_words = default_negation_words();
};

class SegmentMatcher {
 public:
  // `patterns` may mix positive patterns and negation variants.
  SegmentMatcher(std::vector<Pattern> patterns, MatchOptions options = {});

  // Positive patterns with the given ids plus their negation variants.
  static SegmentMatcher for_ids(const std::set<int>& pattern_ids, MatchOptions options = {});

  // Non-overlapping matches scanned left to right. At each start position
  // the patterns are tried in priority order and the longest expansion of
  // the first matching pattern that fits in max_words is taken; scanning
  // resumes after it. A segment never starts right after a negation token.
  std::vector<Segment> match(const Sentence& sentence, int sentence_index = 0,
                             const std::string& entity_id = "") const;

  const std::vector<Pattern>& patterns() const { return patterns_; }
  const MatchOptions& options() const { return options_; }

 private:
  bool is_negation(const Token& t) const;
  bool matches(Category c, const Token& t) const;
  void expand(const Pattern& p, size_t atom, int pos, const std::vector<Token>& toks,
              std::vector<int>& ends) const;

  std::vector<Pattern> patterns_;
  MatchOptions options_;
};

std::vector<Segment> match_sentence(const Sentence& sentence, const std::vector<Pattern>& patterns,
                                    int max_words);

// Matches every sentence of the corpus with the selected patterns (and
// their negation variants), in corpus order.
std::vector<Segment> extract_corpus(const Corpus& corpus, const std::set<int>& pattern_ids,
                                    const MatchOptions& options = {});

}  // namespace revsum
