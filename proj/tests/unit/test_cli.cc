#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "revsum/config.h"
#include "revsum/pipeline.h"
#include "synthetic.h"

using namespace revsum;
using namespace revsum::testing;
namespace fs = std::filesystem;

namespace {

int run(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string(REVSUM_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

nlohmann::json read_json(const fs::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

struct Project {
  fs::path dir;
  fs::path ini;
  fs::path log;
};

Project project(const std::string& name, const std::string& extra = "") {
  Project p;
  p.dir = fs::temp_directory_path() / ("revsum_cli_" + name);
  fs::remove_all(p.dir);
  fs::create_directories(p.dir);
  write_tagged_jsonl(generate_smoke_corpus({}), (p.dir / "reviews.jsonl").string());
  p.ini = p.dir / "run.ini";
  p.log = p.dir / "log.txt";
  std::ofstream(p.ini) << "[paths]\ncorpus = reviews.jsonl\noutput_dir = out\n"
                          "[model]\nnum_topics = 3\nmin_count = 1\n"
                          "[schedule]\nburn_in = 20\ninterleave = 10\ntotal = 60\n"
                          "[filters]\naw_top_x = 10\nsw_top_y = 10\n"
                       << extra;
  return p;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("usage and configuration errors exit with 1") {
  Project p = project("usage");
  CHECK(run("", p.log) == 1);
  CHECK(run("--help", p.log) == 0);
  CHECK(run("frobnicate", p.log) == 1);
  CHECK(run("preprocess", p.log) == 1);
  CHECK(run("preprocess --config " + (p.dir / "nope.ini").string(), p.log) == 1);
  CHECK(run("preprocess --config " + p.ini.string() + " --procedure AW+SW", p.log) == 1);
  CHECK(run("preprocess --config " + p.ini.string() + " --patterns 9", p.log) == 1);
  CHECK(run("summarize --config " + p.ini.string(), p.log) == 1);
  std::ofstream(p.dir / "bad.ini") << "[model]\nbogus = 1\n";
  CHECK(run("train --config " + (p.dir / "bad.ini").string(), p.log) == 1);
  fs::remove_all(p.dir);
}

TEST_CASE("data errors exit with 2") {
  Project p = project("data");
  const std::string cfg = " --config " + p.ini.string();
  CHECK(run("train" + cfg, p.log) == 2);  // nothing preprocessed yet
  std::ofstream(p.dir / "reviews.jsonl") << "{not json\n";
  CHECK(run("preprocess" + cfg, p.log) == 2);
  fs::remove_all(p.dir);
}

TEST_CASE("full run writes every artifact") {
  Project p = project("full");
  const std::string cfg = " --config " + p.ini.string();
  const fs::path out = p.dir / "out";
  REQUIRE(run("preprocess" + cfg, p.log) == 0);
  CHECK(fs::exists(out / "corpus.jsonl"));
  CHECK(read_json(out / "references.json").size() == 5);

  REQUIRE(run("train" + cfg, p.log) == 0);
  CHECK(fs::exists(out / "vocabulary.json"));
  CHECK(read_json(out / "checkpoint.json").at("sweeps_done") == 60);
  CHECK(read_json(out / "topics.json").at("topics").size() == 3);

  REQUIRE(run("train" + cfg + " --iters 80 --resume", p.log) == 0);
  CHECK(read_json(out / "checkpoint.json").at("sweeps_done") == 80);

  REQUIRE(run("extract" + cfg + " --patterns 1,3,5", p.log) == 0);
  std::ifstream seg_in(out / "segments.jsonl");
  int lines = 0;
  for (std::string line; std::getline(seg_in, line); ++lines) {
    auto j = nlohmann::json::parse(line);
    const int id = j.at("pattern_id");
    CHECK((id == 1 || id == 3 || id == 5));
  }
  CHECK(lines > 0);

  REQUIRE(run("summarize" + cfg + " --entity e0 --top-n 2", p.log) == 0);
  auto summary = read_json(out / "summary_e0.json");
  CHECK(summary.at("positive").size() <= 2);
  CHECK(summary.at("negative").size() <= 2);
  CHECK(run("summarize" + cfg + " --entity nobody", p.log) == 2);

  REQUIRE(run("evaluate" + cfg, p.log) == 0);
  auto report = read_json(out / "eval_AW+SEN+SW.json");
  CHECK(fs::exists(out / "eval_AW+SEN+SW.txt"));

  // The command adds nothing beyond the library calls.
  PipelineConfig pc = load_config(p.ini.string());
  pc.schedule.total = 80;
  Corpus corpus = load_processed_corpus(pc);
  ModelState state = load_model(pc, corpus);
  PosteriorEstimates est = estimate(state);
  EvalReport lib = evaluate_procedure(corpus, state, est, nullptr, pc, Procedure::parse(pc.procedure), pc.pattern_ids());
  CHECK(report == nlohmann::json::parse(lib.to_json().dump(2)));

  REQUIRE(run("evaluate" + cfg + " --per-pattern --procedure Baseline+SEN", p.log) == 0);
  for (int id = 1; id <= 5; ++id) CHECK(fs::exists(out / ("eval_Baseline+SEN_pattern" + std::to_string(id) + ".json")));
  CHECK(fs::exists(out / "eval_Baseline+SEN_patterns.txt"));

  CHECK(run("evaluate" + cfg + " --procedure Baseline+SWN", p.log) == 1);  // no lexicon configured

  REQUIRE(run("topics" + cfg + " --top-n 4", p.log) == 0);
  for (const auto& t : read_json(out / "topics.json").at("topics")) CHECK(t.at("aspect_words").size() == 4);
  fs::remove_all(p.dir);
}

}
