#include "revsum/corpus.h"

#include <array>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "revsum/error.h"
#include "revsum/stemmer.h"
#include "revsum/text.h"

namespace revsum {

using nlohmann::json;

size_t Corpus::sentence_count() const {
  size_t n = 0;
  for (const auto& r : reviews) n += r.sentences.size();
  return n;
}

size_t Corpus::token_count() const {
  size_t n = 0;
  for (const auto& r : reviews)
    for (const auto& s : r.sentences) n += s.tokens.size();
  return n;
}

SentimentWordRule::SentimentWordRule()
    : SentimentWordRule(from_words({"love", "hate", "enjoy", "worth", "disappoint"})) {}

SentimentWordRule::SentimentWordRule(std::set<std::string> extra_sentiment_stems)
    : extra_(std::move(extra_sentiment_stems)) {}

SentimentWordRule SentimentWordRule::from_words(const std::vector<std::string>& words) {
  std::set<std::string> stems;
  for (const auto& w : words) stems.insert(porter_stem(w));
  return SentimentWordRule(std::move(stems));
}

bool SentimentWordRule::is_sentiment(std::string_view pos, std::string_view stem) const {
  if (pos.starts_with("JJ") || pos.starts_with("RB")) return true;
  return extra_.count(std::string(stem)) > 0;
}

bool is_penn_tag(std::string_view tag) {
  static const std::set<std::string_view> kTags = {
      "CC",  "CD",  "DT",   "EX",   "FW",    "IN",    "JJ",  "JJR", "JJS", "LS",  "MD",
      "NN",  "NNS", "NNP",  "NNPS", "PDT",   "POS",   "PRP", "PRP$", "RB", "RBR", "RBS",
      "RP",  "SYM", "TO",   "UH",   "VB",    "VBD",   "VBG", "VBN", "VBP", "VBZ", "WDT",
      "WP",  "WP$", "WRB",  ".",    ",",     ":",     "``",  "''",  "#",   "$",   "-LRB-",
      "-RRB-", "(", ")",    "HYPH", "NFP",   "-NONE-"};
  return kTags.count(tag) > 0;
}

Token make_token(std::string_view surface, std::string_view pos, const SentimentWordRule& rule,
                 Diagnostics* diag) {
  Token t;
  t.surface = std::string(surface);
  t.pos = std::string(pos);
  t.stem = porter_stem(surface);
  if (!is_penn_tag(pos)) {
    warn(diag, "unknown tag '" + t.pos + "' for token '" + t.surface + "', treated as non-sentiment");
    t.is_sentiment = false;
    return t;
  }
  t.is_sentiment = rule.is_sentiment(pos, t.stem);
  return t;
}

std::vector<std::string> split_sentences(std::string_view raw_review_text) {
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    if (!trim(current).empty()) out.push_back(current);
    current.clear();
  };
  for (char c : raw_review_text) {
    if (c == '.' || c == '!' || c == '?') {
      flush();
    } else {
      current.push_back(c);
    }
  }
  flush();
  return out;
}

CorpusFormat parse_corpus_format(std::string_view name) {
  if (name == "jsonl") return CorpusFormat::kJsonl;
  if (name == "conll") return CorpusFormat::kConll;
  throw ConfigError("unknown corpus format '" + std::string(name) + "' (expected jsonl or conll)");
}

namespace {

std::vector<std::string> string_list(const json& j, const char* key, const std::string& source,
                                     int line) {
  std::vector<std::string> out;
  if (!j.contains(key)) return out;
  const json& arr = j.at(key);
  if (!arr.is_array()) throw ParseError(source, line, std::string("'") + key + "' must be an array");
  for (const auto& item : arr) {
    if (!item.is_string()) throw ParseError(source, line, std::string("'") + key + "' entries must be strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::string id_field(const json& j, const char* key, const std::string& source, int line) {
  if (!j.contains(key)) throw ParseError(source, line, std::string("missing field '") + key + "'");
  const json& v = j.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw ParseError(source, line, std::string("field '") + key + "' must be a string or integer");
}

Token token_from_json(const json& entry, const std::string& source, int line,
                      const SentimentWordRule& rule, Diagnostics* diag) {
  if (!entry.is_array() || (entry.size() != 2 && entry.size() != 4))
    throw ParseError(source, line, "token must be [surface, pos] or [surface, pos, stem, is_sentiment]");
  if (!entry[0].is_string() || !entry[1].is_string())
    throw ParseError(source, line, "token surface and tag must be strings");
  std::string surface = entry[0].get<std::string>();
  std::string pos = entry[1].get<std::string>();
  if (surface.empty()) throw ParseError(source, line, "empty token surface");
  if (pos.empty()) throw ParseError(source, line, "token '" + surface + "' has no tag");
  if (entry.size() == 2) return make_token(surface, pos, rule, diag);
  if (!entry[2].is_string() || !entry[3].is_boolean())
    throw ParseError(source, line, "token stem must be a string and is_sentiment a boolean");
  Token t{surface, entry[2].get<std::string>(), pos, entry[3].get<bool>()};
  if (t.stem.empty()) throw ParseError(source, line, "empty stem for token '" + surface + "'");
  return t;
}

}  // namespace

Corpus parse_tagged_jsonl(std::istream& in, const std::string& source,
                          const SentimentWordRule& rule, Diagnostics* diag) {
  Corpus corpus;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(source, lineno, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError(source, lineno, "expected a JSON object");
    Review r;
    r.id = id_field(j, "id", source, lineno);
    r.entity_id = id_field(j, "entity_id", source, lineno);
    if (r.entity_id.empty()) throw ParseError(source, lineno, "empty entity_id");
    r.pros = string_list(j, "pros", source, lineno);
    r.cons = string_list(j, "cons", source, lineno);
    if (!j.contains("sentences") || !j.at("sentences").is_array())
      throw ParseError(source, lineno, "missing 'sentences' array");
    for (const auto& sent : j.at("sentences")) {
      if (!sent.is_array()) throw ParseError(source, lineno, "sentence must be an array of tokens");
      Sentence s;
      s.review_id = r.id;
      for (const auto& entry : sent) s.tokens.push_back(token_from_json(entry, source, lineno, rule, diag));
      if (!s.tokens.empty()) r.sentences.push_back(std::move(s));
    }
    corpus.reviews.push_back(std::move(r));
  }
  return corpus;
}

Corpus parse_tagged_conll(std::istream& in, const std::string& source,
                          const SentimentWordRule& rule, Diagnostics* diag) {
  Corpus corpus;
  Sentence current;
  auto close_sentence = [&] {
    if (!current.tokens.empty()) corpus.reviews.back().sentences.push_back(std::move(current));
    current = Sentence{};
  };
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) {
      if (!corpus.reviews.empty()) close_sentence();
      continue;
    }
    if (line.starts_with("#REVIEW")) {
      if (!corpus.reviews.empty()) close_sentence();
      std::istringstream fields(line.substr(7));
      Review r;
      if (!(fields >> r.id >> r.entity_id))
        throw ParseError(source, lineno, "#REVIEW header needs an id and an entity_id");
      corpus.reviews.push_back(std::move(r));
      continue;
    }
    if (line.starts_with("#PROS") || line.starts_with("#CONS")) {
      if (corpus.reviews.empty()) throw ParseError(source, lineno, "pros/cons line before any #REVIEW header");
      std::string item = trim(std::string_view(line).substr(5));
      if (item.empty()) throw ParseError(source, lineno, "empty pros/cons item");
      (line[1] == 'P' ? corpus.reviews.back().pros : corpus.reviews.back().cons).push_back(item);
      continue;
    }
    if (line[0] == '#') continue;  // comment
    if (corpus.reviews.empty()) throw ParseError(source, lineno, "token line before any #REVIEW header");
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError(source, lineno, "expected 'surface<TAB>pos'");
    std::string surface = line.substr(0, tab);
    std::string pos = trim(line.substr(tab + 1));
    if (surface.empty() || pos.empty()) throw ParseError(source, lineno, "empty surface or tag");
    current.review_id = corpus.reviews.back().id;
    current.tokens.push_back(make_token(surface, pos, rule, diag));
  }
  if (!corpus.reviews.empty()) close_sentence();
  return corpus;
}

Corpus ingest_tagged(const std::string& path, CorpusFormat format, const SentimentWordRule& rule,
                     Diagnostics* diag) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file: " + path);
  return format == CorpusFormat::kJsonl ? parse_tagged_jsonl(in, path, rule, diag)
                                        : parse_tagged_conll(in, path, rule, diag);
}

void write_corpus_jsonl(const Corpus& corpus, std::ostream& out) {
  for (const auto& r : corpus.reviews) {
    json sentences = json::array();
    for (const auto& s : r.sentences) {
      json toks = json::array();
      for (const auto& t : s.tokens) toks.push_back({t.surface, t.pos, t.stem, t.is_sentiment});
      sentences.push_back(std::move(toks));
    }
    json j = {{"id", r.id},   {"entity_id", r.entity_id}, {"sentences", std::move(sentences)},
              {"pros", r.pros}, {"cons", r.cons}};
    out << j.dump() << "\n";
  }
}

Corpus read_corpus_jsonl(const std::string& path) {
  return ingest_tagged(path, CorpusFormat::kJsonl, SentimentWordRule{});
}

std::map<std::string, ReferenceSummary> build_reference_summaries(const Corpus& corpus) {
  std::map<std::string, ReferenceSummary> refs;
  std::map<std::string, std::array<std::set<std::string>, 2>> seen;
  auto add = [](std::vector<std::string>& items, std::set<std::string>& keys, const std::string& item) {
    std::string key = normalize_whitespace_lower(item);
    if (key.empty()) return;
    if (keys.insert(key).second) items.push_back(item);
  };
  for (const auto& r : corpus.reviews) {
    auto& ref = refs[r.entity_id];
    auto& keys = seen[r.entity_id];
    for (const auto& p : r.pros) add(ref.pros, keys[0], p);
    for (const auto& c : r.cons) add(ref.cons, keys[1], c);
  }
  return refs;
}

}  // namespace revsum
