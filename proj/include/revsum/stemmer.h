#pragma once

#include <string>
#include <string_view>

namespace revsum {

// Porter (1980) suffix-stripping stemmer for lowercase English words.
// Words of one or two letters and words containing non-letters are
// returned unchanged (lowercased).
std::string porter_stem(std::string_view word);

}  // namespace revsum
