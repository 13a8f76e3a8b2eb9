#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace revsum {

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);

// Lowercases and collapses every whitespace run to a single space.
std::string normalize_whitespace_lower(std::string_view s);

// Splits free text into word tokens: whitespace separated, leading and
// trailing punctuation stripped (apostrophes inside a word are kept).
std::vector<std::string> tokenize_words(std::string_view text);

// Reads a word list file: one entry per line, '#' comments and blank lines
// ignored, entries lowercased.
std::vector<std::string> read_word_list(const std::string& path);

// Stable 64-bit FNV-1a hash, used for content digests written to disk.
class Fnv1a {
 public:
  void update(std::string_view bytes);
  void update_separator() { update(std::string_view("\x1f", 1)); }
  std::uint64_t digest() const { return state_; }
  std::string hex() const;

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

}  // namespace revsum
