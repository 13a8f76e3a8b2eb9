#include "revsum/patterns.h"

#include <algorithm>
#include <sstream>

#include "revsum/error.h"
#include "revsum/text.h"

namespace revsum {

using nlohmann::json;

namespace {

constexpr std::string_view kCategoryNames[] = {"nn", "vb", "dt", "rb", "jj", "to", "neg"};

bool tag_in(std::string_view tag, std::initializer_list<std::string_view> tags) {
  return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

bool is_noun_tag(std::string_view tag) { return tag_in(tag, {"NN", "NNS", "NNP", "NNPS"}); }

}  // namespace

std::string Pattern::to_string() const {
  std::string out;
  for (const auto& a : atoms) {
    if (!out.empty()) out += ' ';
    out += kCategoryNames[static_cast<int>(a.category)];
    if (a.quantifier == Quantifier::kOptional) out += '?';
    if (a.quantifier == Quantifier::kStar) out += '*';
  }
  return out;
}

Pattern Pattern::parse(int id, std::string_view text, bool negated) {
  Pattern p;
  p.id = id;
  p.negated = negated;
  std::istringstream in{std::string(text)};
  std::string item;
  while (in >> item) {
    PatternAtom atom;
    if (item.back() == '?' || item.back() == '*') {
      atom.quantifier = item.back() == '?' ? Quantifier::kOptional : Quantifier::kStar;
      item.pop_back();
    }
    auto it = std::find(std::begin(kCategoryNames), std::end(kCategoryNames), item);
    if (it == std::end(kCategoryNames)) throw ConfigError("unknown pattern category '" + item + "'");
    atom.category = static_cast<Category>(it - std::begin(kCategoryNames));
    p.atoms.push_back(atom);
  }
  if (p.atoms.empty()) throw ConfigError("empty pattern");
  return p;
}

std::vector<Pattern> standard_patterns() {
  return {Pattern::parse(1, "nn? vb dt? rb* jj nn"), Pattern::parse(2, "nn? vb rb* jj to vb"),
          Pattern::parse(3, "nn? vb rb* jj"), Pattern::parse(4, "rb* jj to vb nn?"),
          Pattern::parse(5, "rb* jj nn")};
}

const std::vector<int>& pattern_priority() {
  static const std::vector<int> kPriority = {1, 2, 4, 3, 5};
  return kPriority;
}

std::vector<Pattern> negation_variants(const std::vector<Pattern>& patterns) {
  std::vector<Pattern> out;
  const PatternAtom neg{Category::kNeg, Quantifier::kOne};
  for (const auto& p : patterns) {
    if (p.negated) continue;
    const auto& atoms = p.atoms;
    auto vb = std::find_if(atoms.begin(), atoms.end(), [](const PatternAtom& a) { return a.category == Category::kVb; });
    auto jj = std::find_if(atoms.begin(), atoms.end(), [](const PatternAtom& a) { return a.category == Category::kJj; });
    std::vector<size_t> positions;
    if (vb != atoms.end() && vb < jj) positions.push_back(vb - atoms.begin());
    if (jj != atoms.end()) {
      size_t at = jj - atoms.begin();
      while (at > 0 && atoms[at - 1].category == Category::kRb) --at;
      if (positions.empty() || positions.back() != at) positions.push_back(at);
    }
    for (size_t at : positions) {
      Pattern v = p;
      v.negated = true;
      v.atoms.insert(v.atoms.begin() + at, neg);
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::set<int> parse_pattern_ids(std::string_view spec) {
  if (spec == "service") return {1, 3, 5};
  if (spec == "product") return {1, 2, 3, 4, 5};
  std::set<int> ids;
  std::string item;
  std::istringstream in{std::string(spec)};
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    int id = 0;
    try {
      size_t used = 0;
      id = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("bad pattern id '" + item + "'");
    }
    if (id < 1 || id > 5) throw ConfigError("pattern id " + item + " is outside 1..5");
    ids.insert(id);
  }
  return ids;
}

std::set<std::string> default_negation_words() { return {"not", "n't", "never", "no", "hardly"}; }

std::string Segment::text() const {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t.surface;
  }
  return out;
}

json segment_to_json(const Segment& s) {
  json j = {{"review_id", s.review_id}, {"entity_id", s.entity_id}, {"sentence_index", s.sentence_index},
            {"start", s.start},         {"end", s.end},             {"text", s.text()},
            {"pattern_id", s.pattern_id}, {"negated", s.negated}};
  if (s.aspect) j["aspect"] = *s.aspect;
  if (s.sentiment) j["sentiment"] = *s.sentiment == 0 ? "positive" : "negative";
  if (s.polarity) j["polarity"] = *s.polarity;
  if (!s.classifier.empty()) j["classifier"] = s.classifier;
  return j;
}

SegmentMatcher::SegmentMatcher(std::vector<Pattern> patterns, MatchOptions options)
    : patterns_(std::move(patterns)), options_(std::move(options)) {
  if (options_.max_words < 1) throw ConfigError("max_words must be >= 1");
  std::set<std::string> lowered;
  for (const auto& w : options_.negation_words) lowered.insert(to_lower(w));
  options_.negation_words = std::move(lowered);
}

SegmentMatcher SegmentMatcher::for_ids(const std::set<int>& pattern_ids, MatchOptions options) {
  std::vector<Pattern> selected;
  for (auto& p : standard_patterns())
    if (pattern_ids.count(p.id)) selected.push_back(p);
  auto variants = negation_variants(selected);
  selected.insert(selected.end(), variants.begin(), variants.end());
  return SegmentMatcher(std::move(selected), std::move(options));
}

bool SegmentMatcher::is_negation(const Token& t) const {
  return options_.negation_words.count(to_lower(t.surface)) > 0;
}

bool SegmentMatcher::matches(Category c, const Token& t) const {
  if (c == Category::kNeg) return is_negation(t);
  if (is_negation(t)) return false;
  const std::string& tag = t.pos;
  switch (c) {
    case Category::kNn: return is_noun_tag(tag);
    case Category::kVb: return tag_in(tag, {"VB", "VBD", "VBG", "VBN", "VBP", "VBZ"});
    case Category::kDt: return tag == "DT";
    case Category::kRb: return tag_in(tag, {"RB", "RBR", "RBS"});
    case Category::kJj: return tag_in(tag, {"JJ", "JJR", "JJS"});
    case Category::kTo: return tag == "TO";
    case Category::kNeg: break;
  }
  return false;
}

// Collects every end offset at which atoms[atom..] can finish when started
// at `pos`.
void SegmentMatcher::expand(const Pattern& p, size_t atom, int pos, const std::vector<Token>& toks,
                            std::vector<int>& ends) const {
  if (atom == p.atoms.size()) {
    ends.push_back(pos);
    return;
  }
  const int n = static_cast<int>(toks.size());
  const PatternAtom& a = p.atoms[atom];
  if (a.quantifier != Quantifier::kOne) expand(p, atom + 1, pos, toks, ends);
  if (pos >= n || !matches(a.category, toks[pos])) return;

  if (a.category == Category::kNn) {
    int run_end = pos;
    while (run_end < n && matches(Category::kNn, toks[run_end])) ++run_end;
    expand(p, atom + 1, run_end, toks, ends);
    return;
  }
  if (a.quantifier == Quantifier::kStar) {
    int q = pos;
    while (q < n && matches(a.category, toks[q])) {
      ++q;
      expand(p, atom + 1, q, toks, ends);
    }
    return;
  }
  expand(p, atom + 1, pos + 1, toks, ends);
}

std::vector<Segment> SegmentMatcher::match(const Sentence& sentence, int sentence_index,
                                           const std::string& entity_id) const {
  std::vector<Segment> out;
  const auto& toks = sentence.tokens;
  const int n = static_cast<int>(toks.size());
  std::vector<int> ends;
  int pos = 0;
  while (pos < n) {
    if (pos > 0 && is_negation(toks[pos - 1])) {
      ++pos;
      continue;
    }
    bool found = false;
    for (int id : pattern_priority()) {
      int best_end = -1;
      const Pattern* best = nullptr;
      for (const auto& p : patterns_) {
        if (p.id != id) continue;
        ends.clear();
        expand(p, 0, pos, toks, ends);
        for (int e : ends) {
          if (e - pos < 1 || e - pos > options_.max_words) continue;
          if (e > best_end || (e == best_end && best->negated && !p.negated)) {
            best_end = e;
            best = &p;
          }
        }
      }
      if (best == nullptr) continue;
      Segment s;
      s.tokens.assign(toks.begin() + pos, toks.begin() + best_end);
      s.review_id = sentence.review_id;
      s.entity_id = entity_id;
      s.sentence_index = sentence_index;
      s.start = pos;
      s.end = best_end;
      s.pattern_id = id;
      s.negated = best->negated;
      out.push_back(std::move(s));
      pos = best_end;
      found = true;
      break;
    }
    if (!found) ++pos;
  }
  return out;
}

std::vector<Segment> match_sentence(const Sentence& sentence, const std::vector<Pattern>& patterns,
                                    int max_words) {
  MatchOptions options;
  options.max_words = max_words;
  return SegmentMatcher(patterns, options).match(sentence);
}

std::vector<Segment> extract_corpus(const Corpus& corpus, const std::set<int>& pattern_ids,
                                    const MatchOptions& options) {
  std::vector<Segment> out;
  if (pattern_ids.empty()) return out;
  SegmentMatcher matcher = SegmentMatcher::for_ids(pattern_ids, options);
  for (const auto& review : corpus.reviews) {
    for (size_t c = 0; c < review.sentences.size(); ++c) {
      auto segs = matcher.match(review.sentences[c], static_cast<int>(c), review.entity_id);
      std::move(segs.begin(), segs.end(), std::back_inserter(out));
    }
  }
  return out;
}

}  // namespace revsum
