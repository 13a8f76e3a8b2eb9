#include <doctest.h>

#include <utility>
#include <vector>

#include "revsum/corpus.h"
#include "revsum/stemmer.h"
#include "revsum/text.h"

using namespace revsum;

TEST_SUITE("text") {

TEST_CASE("porter stemmer reference pairs") {
  const std::vector<std::pair<const char*, const char*>> pairs = {
      {"caresses", "caress"}, {"ponies", "poni"},     {"ties", "ti"},           {"caress", "caress"},
      {"cats", "cat"},        {"feed", "feed"},       {"agreed", "agre"},       {"plastered", "plaster"},
      {"motoring", "motor"},  {"sing", "sing"},       {"conflated", "conflat"}, {"troubled", "troubl"},
      {"sized", "size"},      {"hopping", "hop"},     {"tanned", "tan"},        {"falling", "fall"},
      {"hissing", "hiss"},    {"fizzed", "fizz"},     {"failing", "fail"},      {"filing", "file"},
      {"happy", "happi"},     {"sky", "sky"},         {"relational", "relat"},  {"conditional", "condit"},
      {"rational", "ration"}, {"digitizer", "digit"}, {"operator", "oper"},     {"feudalism", "feudal"},
      {"decisiveness", "decis"}, {"hopefulness", "hope"}, {"callousness", "callous"},
      {"triplicate", "triplic"}, {"formative", "form"}, {"formalize", "formal"}, {"electrical", "electr"},
      {"hopeful", "hope"},    {"goodness", "good"},   {"revival", "reviv"},     {"allowance", "allow"},
      {"inference", "infer"}, {"airliner", "airlin"}, {"gyroscopic", "gyroscop"}, {"adjustable", "adjust"},
      {"defensible", "defens"}, {"irritant", "irrit"}, {"replacement", "replac"}, {"adjustment", "adjust"},
      {"dependent", "depend"}, {"adoption", "adopt"}, {"communism", "commun"},  {"activate", "activ"},
      {"homologous", "homolog"}, {"effective", "effect"}, {"bowdlerize", "bowdler"}, {"probate", "probat"},
      {"rate", "rate"},       {"cease", "ceas"},      {"controll", "control"},  {"roll", "roll"},
      {"generalizations", "gener"}, {"oscillators", "oscil"},
  };
  for (const auto& [word, stem] : pairs) {
    CAPTURE(word);
    CHECK(porter_stem(word) == stem);
  }
}

TEST_CASE("stems seen in topic reports") {
  CHECK(porter_stem("delicious") == "delici");
  CHECK(porter_stem("beautiful") == "beauti");
  CHECK(porter_stem("romantic") == "romant");
  CHECK(porter_stem("atmosphere") == "atmospher");
  CHECK(porter_stem("sauce") == "sauc");
  CHECK(porter_stem("enjoy") == "enjoi");
}

TEST_CASE("stemmer lowercases and leaves short or non-alphabetic words") {
  CHECK(porter_stem("Delicious") == "delici");
  CHECK(porter_stem("is") == "is");
  CHECK(porter_stem("n't") == "n't");
  CHECK(porter_stem("b52s") == "b52s");
}

TEST_CASE("tokenize strips edge punctuation") {
  CHECK(tokenize_words("Hello, world!  (ok)") == std::vector<std::string>{"Hello", "world", "ok"});
  CHECK(tokenize_words(" ... ").empty());
  CHECK(tokenize_words("don't") == std::vector<std::string>{"don't"});
}

TEST_CASE("whitespace normalization") {
  CHECK(normalize_whitespace_lower("  Easy \t to   CLEAN ") == "easy to clean");
}

TEST_CASE("split_sentences") {
  CHECK(split_sentences("Great food. Bad service!") == std::vector<std::string>{"Great food", " Bad service"});
  CHECK(split_sentences("").empty());
  CHECK(split_sentences("No delimiters here") == std::vector<std::string>{"No delimiters here"});
  CHECK(split_sentences("Really?! Yes.  .") == std::vector<std::string>{"Really", " Yes"});
}

TEST_CASE("split_sentences is idempotent on its outputs") {
  for (const char* text : {"Great food. Bad service!", "a.b?c!d", "  one  .  two ", "x"}) {
    for (const auto& piece : split_sentences(text)) CHECK(split_sentences(piece) == std::vector<std::string>{piece});
  }
}

TEST_CASE("fnv digest is stable and order sensitive") {
  Fnv1a a, b;
  a.update("ab");
  a.update_separator();
  a.update("c");
  b.update("a");
  b.update_separator();
  b.update("bc");
  CHECK(a.hex() != b.hex());
  Fnv1a c;
  c.update("ab");
  c.update_separator();
  c.update("c");
  CHECK(a.hex() == c.hex());
}

}
