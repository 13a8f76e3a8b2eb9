#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>

#include "revsum/eval.h"
#include "revsum/filters.h"
#include "revsum/model.h"

namespace revsum {

struct PathsConfig {
  std::string corpus;             // input reviews
  std::string corpus_format = "jsonl";  // jsonl, conll or raw (fixture-tagged text)
  std::string output_dir = ".";
  std::string checkpoint;         // default: <output_dir>/checkpoint.json
  std::string lexicon;            // stem<TAB>score, needed by SWN
  std::string seeds;
  std::string stopwords;
  std::string negation_words;
  std::string sentiment_words;    // extra sentiment stems beyond JJ*/RB*
};

struct PipelineConfig {
  PathsConfig paths;
  Hyperparams hyperparams;
  TrainSchedule schedule;
  FilterConfig filters;
  EvalConfig eval;
  int min_count = 5;
  std::string patterns = "product";
  int max_words = 7;
  std::string procedure = "AW+SEN+SW";
  std::uint64_t rng_seed = 1;
  int top_n = 10;

  std::string processed_corpus_path() const;  // <output_dir>/corpus.jsonl
  std::string vocabulary_path() const;        // <output_dir>/vocabulary.json
  std::string checkpoint_path() const;

  std::set<int> pattern_ids() const;

  // Checks value ranges and that every configured input file exists.
  void validate() const;
};

// Reads an INI file with sections [paths], [model], [schedule], [filters],
// [eval], [patterns] and [pipeline]. Unknown sections or keys are rejected.
// Relative paths are resolved against the config file's directory.
PipelineConfig load_config(const std::string& path);
PipelineConfig parse_config(std::istream& in, const std::string& base_dir);

std::string config_to_ini(const PipelineConfig& cfg);

}  // namespace revsum
