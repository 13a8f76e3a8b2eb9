#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.h"
#include "revsum/error.h"
#include "revsum/eval.h"
#include "synthetic.h"

using namespace revsum;
using namespace revsum::testing;

namespace {

TokenSeq words(const std::string& text) { return normalize_text(text, TokenNormalization::kSurfaceLower); }

std::vector<TokenSeq> random_items(std::mt19937_64& rng, int max_items, bool allow_empty) {
  static const std::vector<std::string> kWords = {"a", "b", "c", "d"};
  std::uniform_int_distribution<int> count(allow_empty ? 0 : 1, max_items), len(1, 6), w(0, 3);
  std::vector<TokenSeq> out(count(rng));
  for (auto& s : out) {
    const int n = len(rng);
    for (int i = 0; i < n; ++i) s.push_back(kWords[w(rng)]);
  }
  return out;
}

void check_entity(const EntityScores& got, const OracleEntity& want) {
  CHECK(got.p_skip == want.p_skip);
  CHECK(got.r_skip == want.r_skip);
  CHECK(got.p_e == want.p_e);
  CHECK(got.r_e == want.r_e);
  CHECK(got.p_cb == want.p_cb);
  CHECK(got.r_cb == want.r_cb);
  REQUIRE(got.segments.size() == want.seg_p.size());
  for (size_t i = 0; i < got.segments.size(); ++i) {
    CHECK(got.segments[i].precision == want.seg_p[i]);
    CHECK(got.segments[i].recall == want.seg_r[i]);
    CHECK(got.segments[i].x_max == want.seg_xmax[i]);
  }
}

Segment seg(const std::string& tagged_text) {
  Segment s;
  s.tokens = parse_tagged(tagged_text).tokens;
  s.end = static_cast<int>(s.tokens.size());
  return s;
}

}  // namespace

TEST_SUITE("eval") {

TEST_CASE("normalization") {
  CHECK(parse_token_normalization("stemmed") == TokenNormalization::kStemmed);
  CHECK(parse_token_normalization("surface_lower") == TokenNormalization::kSurfaceLower);
  CHECK_THROWS_AS(parse_token_normalization("raw"), ConfigError);
  CHECK(normalize_text("Cleaning Rooms", TokenNormalization::kStemmed) == TokenSeq{"clean", "room"});
  CHECK(normalize_text("Cleaning Rooms", TokenNormalization::kSurfaceLower) == TokenSeq{"cleaning", "rooms"});
  Segment s = seg("Rooms/NNS clean/JJ");
  CHECK(normalize_segment(s, TokenNormalization::kStemmed) == TokenSeq{"room", "clean"});
  CHECK_NOTHROW(EvalConfig{}.validate());
  CHECK_THROWS_AS((EvalConfig{0.0, TokenNormalization::kStemmed}.validate()), ConfigError);
  CHECK_THROWS_AS((EvalConfig{1.5, TokenNormalization::kStemmed}.validate()), ConfigError);
  CHECK_NOTHROW((EvalConfig{1.0, TokenNormalization::kStemmed}.validate()));
}

TEST_CASE("skip2 examples") {
  CHECK(skip2(words("easy to clean"), words("very easy to clean")) == 3);
  CHECK(skip2(words("a b c d"), words("a b c d")) == 6);
  CHECK(skip2(words("a b"), words("c d")) == 0);
  CHECK(skip2(words("a b"), words("b a")) == 0);  // order matters
  // (a,a) appears once in "a a" and three times in "a a a": clipped to one.
  CHECK(skip2(words("a a"), words("a a a")) == 1);
  CHECK(skip2(words("a"), words("a")) == 0);
  CHECK(skip2({}, words("a b")) == 0);
}

TEST_CASE("precision and recall pairs") {
  PrPair hand = pr_pair(words("great food"), words("really great food"));
  CHECK(hand.precision == 1.0 / 3.0);
  CHECK(hand.recall == 1.0);
  PrPair same = pr_pair(words("very easy to clean"), words("very easy to clean"));
  CHECK(same.precision == 1.0);
  CHECK(same.recall == 1.0);
  PrPair none = pr_pair(words("good food"), words("bad service"));
  CHECK(none.precision == 0.0);
  CHECK(none.recall == 0.0);
  // Single-token sides score by membership.
  PrPair single = pr_pair(words("noise"), words("too much noise"));
  CHECK(single.recall == 1.0);
  CHECK(single.precision == 0.0);
  PrPair single_y = pr_pair(words("loud noise"), words("noise"));
  CHECK(single_y.precision == 1.0);
  CHECK(single_y.recall == 0.0);
  CHECK(pr_pair(words("noise"), words("quiet")).recall == 0.0);
}

TEST_CASE("segment scores choose the first best-recall reference") {
  std::vector<TokenSeq> ref = {words("bad wifi"), words("great food"), words("really great food")};
  SegmentScore s = segment_scores(words("really great food"), ref);
  CHECK(s.x_max == 1);  // R = 1 for items 1 and 2, first wins
  CHECK(s.recall == 1.0);
  CHECK(s.precision == 1.0 / 3.0);
  CHECK(segment_scores(words("x y"), {words("a b")}).x_max == 0);
  CHECK(segment_scores(words("x y"), {}).x_max == -1);
}

TEST_CASE("alpha threshold fixture") {
  std::vector<TokenSeq> ref = {words("a b c d e")};
  std::vector<TokenSeq> cand = {words("a b c"), words("a b")};
  EntityScores e = entity_scores(cand, ref, 0.25);
  CHECK(e.segments[0].recall == 0.3);
  CHECK(e.segments[1].recall == 0.1);
  CHECK(e.p_e == 0.5);
  CHECK(e.r_e == 1.0);
  CHECK(e.p_skip == (1.0 + 1.0) / 2);
  CHECK(e.r_skip == (0.3 + 0.1) / 2);
  CHECK(e.p_cb == (e.p_skip + e.p_e) / 2);
  CHECK(e.r_cb == (e.r_skip + e.r_e) / 2);
}

TEST_CASE("perfect match and empty sides") {
  std::vector<TokenSeq> ref = {words("great food"), words("friendly staff"), words("noise")};
  EntityScores e = entity_scores(ref, ref, 0.25);
  CHECK(e.p_skip == 1.0);
  CHECK(e.r_skip == 1.0);
  CHECK(e.p_e == 1.0);
  CHECK(e.r_e == 1.0);
  EntityScores empty = entity_scores({}, ref, 0.25);
  CHECK(empty.empty_candidate);
  CHECK(empty.p_cb == 0.0);
  CHECK(empty.r_cb == 0.0);
  CHECK(empty.num_references == 3);
  CHECK_THROWS_AS(entity_scores(ref, {}, 0.25), DataError);
}

TEST_CASE("random instances agree with the oracle") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> alpha(0.05, 1.0);
  for (int trial = 0; trial < 400; ++trial) {
    auto x = random_items(rng, 1, false)[0], y = random_items(rng, 1, false)[0];
    CHECK(skip2(x, y) == oracle_skip2(x, y));
    CHECK(skip2(x, y) == skip2(y, x));
    PrPair pr = pr_pair(x, y);
    CHECK(pr.precision == oracle_precision(x, y));
    CHECK(pr.recall == oracle_recall(x, y));
    CHECK(pr.precision >= 0.0);
    CHECK(pr.precision <= 1.0);
    CHECK(pr.recall >= 0.0);
    CHECK(pr.recall <= 1.0);

    std::vector<EntityScores> got;
    std::vector<OracleEntity> want;
    const double a = trial % 4 == 0 ? 0.25 : alpha(rng);
    for (int e = 0; e < 3; ++e) {
      auto cand = random_items(rng, 6, true), ref = random_items(rng, 6, false);
      got.push_back(entity_scores(cand, ref, a));
      want.push_back(oracle_entity(cand, ref, a));
      check_entity(got.back(), want.back());
      // Raising alpha never helps.
      EntityScores strict = entity_scores(cand, ref, std::min(1.0, a + 0.2));
      CHECK(strict.p_e <= got.back().p_e);
      CHECK(strict.r_e <= got.back().r_e);
    }
    CorpusStats cs = corpus_stats(got);
    OracleCorpus oc = oracle_corpus(want);
    CHECK(cs.p_s == oc.p_s);
    CHECK(cs.r_s == oc.r_s);
    CHECK(cs.p_e == oc.p_e);
    CHECK(cs.r_e == oc.r_e);
    CHECK(cs.p == oc.p);
    CHECK(cs.r == oc.r);
  }
}

TEST_CASE("corpus statistics") {
  CHECK_THROWS_AS(corpus_stats({}), DataError);
  std::vector<TokenSeq> ref = {words("great food")};
  EntityScores hit = entity_scores({words("great food")}, ref, 0.25);
  EntityScores miss = entity_scores({words("bad wifi"), words("slow staff")}, ref, 0.25);
  CorpusStats one = corpus_stats({hit});
  CHECK(one.p_s == hit.p_skip);
  CHECK(one.p == hit.p_cb);
  CorpusStats two = corpus_stats({hit, miss});
  CHECK(two.p_e == 0.5);
  CHECK(two.num_entities == 2);
  CHECK(two.num_segments == 3);
  CHECK(two.r_s == doctest::Approx(1.0 / 3.0).epsilon(1e-15));  // micro over 3 segments
  CHECK(two.r_e == 0.5);                                        // macro over 2 entities
}

TEST_CASE("evaluate pairs candidates with their counterpart side") {
  std::map<std::string, ReferenceSummary> refs;
  refs["e1"] = {{"great food"}, {"slow service"}};
  refs["e2"] = {{"nice view"}, {}};
  std::map<std::string, CandidateSplit> cands;
  cands["e1"].positive = {seg("great/JJ food/NN")};
  cands["e1"].negative = {seg("slow/JJ service/NN"), seg("great/JJ food/NN")};
  cands["e2"].positive = {};
  cands["e3"].positive = {seg("nice/JJ view/NN")};
  Diagnostics diag;
  EvalReport r = evaluate(cands, refs, EvalConfig{}, &diag);
  CHECK(r.excluded == std::vector<std::string>{"e3"});
  REQUIRE(r.entities.size() == 2);
  const EntityEval& e1 = r.entities[0];
  CHECK(e1.entity_id == "e1");
  REQUIRE(e1.pros.has_value());
  CHECK(e1.pros->p_skip == 1.0);
  REQUIRE(e1.cons.has_value());
  CHECK(e1.cons->p_e == 0.5);  // the positive-sounding segment is not moved to pros
  const EntityEval& e2 = r.entities[1];
  CHECK(e2.pros->empty_candidate);
  CHECK_FALSE(e2.cons.has_value());
  REQUIRE(r.pros.has_value());
  CHECK(r.pros->num_entities == 2);
  CHECK(r.cons->num_entities == 1);
  CHECK(std::find(r.flagged.begin(), r.flagged.end(), "e2:cons:empty_reference") != r.flagged.end());
  CHECK(std::find(r.flagged.begin(), r.flagged.end(), "e2:pros:empty_candidate") != r.flagged.end());
  CHECK_FALSE(diag.empty());

  nlohmann::json j = r.to_json();
  CHECK(j.at("entities").size() == 2);
  for (const char* side : {"pros", "cons"})
    for (const auto& [k, v] : j.at("corpus").at(side).items())
      if (v.is_number_float()) {
        CHECK(v.get<double>() >= 0.0);
        CHECK(v.get<double>() <= 1.0);
      }
  std::string table = eval_table_text({{"AW+SEN+SW", &r}});
  CHECK(table.find("AW+SEN+SW") != std::string::npos);
  CHECK(table.find("P_s") != std::string::npos);

  CHECK_THROWS_AS(evaluate({}, refs, EvalConfig{}), DataError);
}

}
