#include "revsum/eval.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "revsum/error.h"
#include "revsum/stemmer.h"
#include "revsum/text.h"

namespace revsum {

using nlohmann::json;

TokenNormalization parse_token_normalization(std::string_view name) {
  if (name == "stemmed") return TokenNormalization::kStemmed;
  if (name == "surface_lower") return TokenNormalization::kSurfaceLower;
  throw ConfigError("unknown token normalization '" + std::string(name) + "' (stemmed or surface_lower)");
}

std::string_view token_normalization_name(TokenNormalization n) {
  return n == TokenNormalization::kStemmed ? "stemmed" : "surface_lower";
}

void EvalConfig::validate() const {
  if (!(recall_threshold > 0.0 && recall_threshold <= 1.0))
    throw ConfigError("recall threshold must be in (0, 1]");
}

namespace {

std::string normalize_word(std::string_view w, TokenNormalization n) {
  return n == TokenNormalization::kStemmed ? porter_stem(w) : to_lower(w);
}

double choose2(size_t n) { return static_cast<double>(n) * static_cast<double>(n - 1) / 2.0; }

bool contains(const TokenSeq& seq, const std::string& w) { return std::find(seq.begin(), seq.end(), w) != seq.end(); }

std::map<std::pair<std::string, std::string>, long> pair_counts(const TokenSeq& s) {
  std::map<std::pair<std::string, std::string>, long> counts;
  for (size_t a = 0; a < s.size(); ++a)
    for (size_t b = a + 1; b < s.size(); ++b) ++counts[{s[a], s[b]}];
  return counts;
}

}  // namespace

TokenSeq normalize_text(std::string_view text, TokenNormalization n) {
  TokenSeq out;
  for (const auto& w : tokenize_words(text)) out.push_back(normalize_word(w, n));
  return out;
}

TokenSeq normalize_segment(const Segment& segment, TokenNormalization n) {
  TokenSeq out;
  for (const auto& t : segment.tokens) {
    for (const auto& w : tokenize_words(t.surface)) out.push_back(normalize_word(w, n));
  }
  return out;
}

long skip2(const TokenSeq& x, const TokenSeq& y) {
  auto cx = pair_counts(x);
  auto cy = pair_counts(y);
  long matches = 0;
  for (const auto& [pair, n] : cx) {
    auto it = cy.find(pair);
    if (it != cy.end()) matches += std::min(n, it->second);
  }
  return matches;
}

PrPair pr_pair(const TokenSeq& x, const TokenSeq& y) {
  PrPair out;
  const long shared = (x.size() >= 2 && y.size() >= 2) ? skip2(x, y) : 0;
  if (y.size() >= 2) {
    out.precision = shared / choose2(y.size());
  } else if (y.size() == 1) {
    out.precision = contains(x, y[0]) ? 1.0 : 0.0;
  }
  if (x.size() >= 2) {
    out.recall = shared / choose2(x.size());
  } else if (x.size() == 1) {
    out.recall = contains(y, x[0]) ? 1.0 : 0.0;
  }
  return out;
}

SegmentScore segment_scores(const TokenSeq& y, const std::vector<TokenSeq>& reference) {
  SegmentScore best;
  for (size_t x = 0; x < reference.size(); ++x) {
    PrPair pr = pr_pair(reference[x], y);
    if (best.x_max < 0 || pr.recall > best.recall) {
      best = {pr.precision, pr.recall, static_cast<int>(x)};
    }
  }
  return best;
}

EntityScores entity_scores(const std::vector<TokenSeq>& candidates, const std::vector<TokenSeq>& reference,
                           double alpha) {
  EntityScores e;
  e.num_candidates = candidates.size();
  e.num_references = reference.size();
  if (candidates.empty()) {
    e.empty_candidate = true;
    return e;
  }
  if (reference.empty()) throw DataError("entity_scores needs a non-empty reference");

  std::vector<char> covered(reference.size(), 0);
  size_t useful = 0;
  for (const auto& y : candidates) {
    SegmentScore s = segment_scores(y, reference);
    e.p_skip += s.precision;
    e.r_skip += s.recall;
    if (s.recall >= alpha) {
      ++useful;
      for (size_t x = 0; x < reference.size(); ++x)
        if (pr_pair(reference[x], y).recall == s.recall) covered[x] = 1;
    }
    e.segments.push_back(s);
  }
  const double nc = static_cast<double>(candidates.size());
  e.p_skip /= nc;
  e.r_skip /= nc;
  e.p_e = useful / nc;
  e.r_e = std::count(covered.begin(), covered.end(), 1) / static_cast<double>(reference.size());
  e.p_cb = (e.p_skip + e.p_e) / 2.0;
  e.r_cb = (e.r_skip + e.r_e) / 2.0;
  return e;
}

CorpusStats corpus_stats(const std::vector<EntityScores>& entities) {
  if (entities.empty()) throw DataError("corpus statistics need at least one scored entity");
  CorpusStats c;
  double sum_p = 0.0, sum_r = 0.0;
  for (const auto& e : entities) {
    for (const auto& s : e.segments) {
      sum_p += s.precision;
      sum_r += s.recall;
    }
    c.num_segments += static_cast<long>(e.segments.size());
    c.p_e += e.p_e;
    c.r_e += e.r_e;
    c.p += e.p_cb;
    c.r += e.r_cb;
  }
  const double n = static_cast<double>(entities.size());
  c.num_entities = static_cast<int>(entities.size());
  c.p_s = c.num_segments > 0 ? sum_p / c.num_segments : 0.0;
  c.r_s = c.num_segments > 0 ? sum_r / c.num_segments : 0.0;
  c.p_e /= n;
  c.r_e /= n;
  c.p /= n;
  c.r /= n;
  return c;
}

EvalReport evaluate(const std::map<std::string, CandidateSplit>& candidates,
                    const std::map<std::string, ReferenceSummary>& references, const EvalConfig& cfg,
                    Diagnostics* diag) {
  cfg.validate();
  if (candidates.empty()) throw DataError("no candidate summaries to evaluate");
  EvalReport report;
  for (const auto& [entity, _] : candidates) {
    if (!references.count(entity)) {
      report.excluded.push_back(entity);
      warn(diag, "entity '" + entity + "' has candidates but no reference summary; excluded");
    }
  }

  std::vector<EntityScores> pros_scores, cons_scores;
  static const CandidateSplit kEmpty;
  for (const auto& [entity, ref] : references) {
    auto it = candidates.find(entity);
    const CandidateSplit& split = it == candidates.end() ? kEmpty : it->second;
    EntityEval ev;
    ev.entity_id = entity;
    for (const auto& s : split.positive) ev.positive_texts.push_back(s.text());
    for (const auto& s : split.negative) ev.negative_texts.push_back(s.text());

    auto score_side = [&](const std::vector<Segment>& segs, const std::vector<std::string>& items,
                          const char* side, std::vector<EntityScores>& sink) -> std::optional<EntityScores> {
      if (items.empty()) {
        report.flagged.push_back(entity + ":" + side + ":empty_reference");
        return std::nullopt;
      }
      std::vector<TokenSeq> cand, refs;
      for (const auto& s : segs) cand.push_back(normalize_segment(s, cfg.normalization));
      for (const auto& item : items) refs.push_back(normalize_text(item, cfg.normalization));
      EntityScores e = entity_scores(cand, refs, cfg.recall_threshold);
      if (e.empty_candidate) report.flagged.push_back(entity + ":" + side + ":empty_candidate");
      sink.push_back(e);
      return e;
    };
    ev.pros = score_side(split.positive, ref.pros, "pros", pros_scores);
    ev.cons = score_side(split.negative, ref.cons, "cons", cons_scores);
    report.entities.push_back(std::move(ev));
  }
  if (!pros_scores.empty()) report.pros = corpus_stats(pros_scores);
  if (!cons_scores.empty()) report.cons = corpus_stats(cons_scores);
  if (!report.pros && !report.cons) throw DataError("no entity has a pros or cons reference");
  if (!report.pros) warn(diag, "no entity has a pros reference; pros statistics omitted");
  if (!report.cons) warn(diag, "no entity has a cons reference; cons statistics omitted");
  return report;
}

namespace {

json entity_json(const EntityScores& e) {
  json segs = json::array();
  for (const auto& s : e.segments) segs.push_back({{"P", s.precision}, {"R", s.recall}, {"x_max", s.x_max}});
  return {{"P_skip", e.p_skip}, {"R_skip", e.r_skip}, {"P_E", e.p_e},   {"R_E", e.r_e},
          {"P_cb", e.p_cb},     {"R_cb", e.r_cb},     {"num_candidates", e.num_candidates},
          {"num_references", e.num_references},       {"empty_candidate", e.empty_candidate},
          {"segments", segs}};
}

json corpus_json(const std::optional<CorpusStats>& c) {
  if (!c) return nullptr;
  return {{"P_s", c->p_s}, {"R_s", c->r_s}, {"P_e", c->p_e}, {"R_e", c->r_e}, {"P", c->p}, {"R", c->r},
          {"num_entities", c->num_entities}, {"num_segments", c->num_segments}};
}

}  // namespace

json EvalReport::to_json() const {
  json ents = json::array();
  for (const auto& e : entities) {
    json j = {{"entity_id", e.entity_id}, {"positive", e.positive_texts}, {"negative", e.negative_texts}};
    j["pros"] = e.pros ? entity_json(*e.pros) : json(nullptr);
    j["cons"] = e.cons ? entity_json(*e.cons) : json(nullptr);
    ents.push_back(std::move(j));
  }
  return {{"procedure", procedure},
          {"corpus", {{"pros", corpus_json(pros)}, {"cons", corpus_json(cons)}}},
          {"entities", ents},
          {"excluded", excluded},
          {"flagged", flagged}};
}

std::string eval_table_text(const std::vector<std::pair<std::string, const EvalReport*>>& rows) {
  auto cells = [](const std::optional<CorpusStats>& c) {
    std::vector<std::string> out;
    for (double v : c ? std::vector<double>{c->p_s, c->r_s, c->p_e, c->r_e, c->p, c->r} : std::vector<double>{}) {
      char buf[16];
      std::snprintf(buf, sizeof(buf), "%.1f", 100.0 * v);
      out.push_back(buf);
    }
    if (!c) out.assign(6, "-");
    return out;
  };
  std::vector<std::vector<std::string>> table;
  table.push_back({"", "pros", "", "", "", "", "", "cons", "", "", "", "", ""});
  table.push_back({"procedure", "P_s", "R_s", "P_e", "R_e", "P", "R", "P_s", "R_s", "P_e", "R_e", "P", "R"});
  for (const auto& [label, report] : rows) {
    std::vector<std::string> row{label};
    for (auto& v : cells(report->pros)) row.push_back(v);
    for (auto& v : cells(report->cons)) row.push_back(v);
    table.push_back(std::move(row));
  }
  std::vector<size_t> width(13, 0);
  for (const auto& r : table)
    for (size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  std::ostringstream out;
  for (const auto& r : table) {
    for (size_t c = 0; c < r.size(); ++c) {
      if (c == 1 || c == 7) out << "| ";
      out << r[c] << std::string(width[c] - r[c].size() + 1, ' ');
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace revsum
