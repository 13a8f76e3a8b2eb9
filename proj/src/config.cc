#include "revsum/config.h"

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "revsum/error.h"
#include "revsum/patterns.h"

namespace revsum {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;

namespace {

std::string join_path(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T out{};
  if (!(in >> out) || !(in >> std::ws).eof()) throw ConfigError("bad value for " + key + ": '" + value + "'");
  return out;
}

using Setter = std::function<void(PipelineConfig&, const std::string&)>;

std::map<std::string, Setter> make_setters(const std::string& base_dir) {
  auto path = [base_dir](std::string PathsConfig::*field) {
    return [base_dir, field](PipelineConfig& c, const std::string& v) {
      fs::path p(v);
      c.paths.*field = (v.empty() || p.is_absolute()) ? v : (fs::path(base_dir) / p).string();
    };
  };
  std::map<std::string, Setter> s;
  s["paths.corpus"] = path(&PathsConfig::corpus);
  s["paths.corpus_format"] = [](PipelineConfig& c, const std::string& v) { c.paths.corpus_format = v; };
  s["paths.output_dir"] = path(&PathsConfig::output_dir);
  s["paths.checkpoint"] = path(&PathsConfig::checkpoint);
  s["paths.lexicon"] = path(&PathsConfig::lexicon);
  s["paths.seeds"] = path(&PathsConfig::seeds);
  s["paths.stopwords"] = path(&PathsConfig::stopwords);
  s["paths.negation_words"] = path(&PathsConfig::negation_words);
  s["paths.sentiment_words"] = path(&PathsConfig::sentiment_words);

  s["model.alpha"] = [](PipelineConfig& c, const std::string& v) { c.hyperparams.alpha = parse_number<double>("model.alpha", v); };
  s["model.beta"] = [](PipelineConfig& c, const std::string& v) { c.hyperparams.beta = parse_number<double>("model.beta", v); };
  s["model.gamma"] = [](PipelineConfig& c, const std::string& v) { c.hyperparams.gamma = parse_number<double>("model.gamma", v); };
  s["model.sigma1_sq"] = [](PipelineConfig& c, const std::string& v) { c.hyperparams.sigma1_sq = parse_number<double>("model.sigma1_sq", v); };
  s["model.sigma2_sq"] = [](PipelineConfig& c, const std::string& v) { c.hyperparams.sigma2_sq = parse_number<double>("model.sigma2_sq", v); };
  s["model.num_topics"] = [](PipelineConfig& c, const std::string& v) { c.hyperparams.num_topics = parse_number<int>("model.num_topics", v); };
  s["model.seed_offset"] = [](PipelineConfig& c, const std::string& v) { c.hyperparams.seed_offset = parse_number<double>("model.seed_offset", v); };
  s["model.min_count"] = [](PipelineConfig& c, const std::string& v) { c.min_count = parse_number<int>("model.min_count", v); };

  s["schedule.burn_in"] = [](PipelineConfig& c, const std::string& v) { c.schedule.burn_in = parse_number<int>("schedule.burn_in", v); };
  s["schedule.interleave"] = [](PipelineConfig& c, const std::string& v) { c.schedule.interleave = parse_number<int>("schedule.interleave", v); };
  s["schedule.total"] = [](PipelineConfig& c, const std::string& v) { c.schedule.total = parse_number<int>("schedule.total", v); };

  s["filters.aw_top_x"] = [](PipelineConfig& c, const std::string& v) { c.filters.aw_top_x = parse_number<int>("filters.aw_top_x", v); };
  s["filters.sw_top_y"] = [](PipelineConfig& c, const std::string& v) { c.filters.sw_top_y = parse_number<int>("filters.sw_top_y", v); };
  s["filters.rank_keep_fraction"] = [](PipelineConfig& c, const std::string& v) { c.filters.rank_keep_fraction = parse_number<double>("filters.rank_keep_fraction", v); };

  s["eval.recall_threshold"] = [](PipelineConfig& c, const std::string& v) { c.eval.recall_threshold = parse_number<double>("eval.recall_threshold", v); };
  s["eval.normalization"] = [](PipelineConfig& c, const std::string& v) { c.eval.normalization = parse_token_normalization(v); };

  s["patterns.preset"] = [](PipelineConfig& c, const std::string& v) { c.patterns = v; };
  s["patterns.max_words"] = [](PipelineConfig& c, const std::string& v) { c.max_words = parse_number<int>("patterns.max_words", v); };

  s["pipeline.procedure"] = [](PipelineConfig& c, const std::string& v) { c.procedure = v; };
  s["pipeline.rng_seed"] = [](PipelineConfig& c, const std::string& v) { c.rng_seed = parse_number<std::uint64_t>("pipeline.rng_seed", v); };
  s["pipeline.top_n"] = [](PipelineConfig& c, const std::string& v) { c.top_n = parse_number<int>("pipeline.top_n", v); };
  return s;
}

void require_file(const std::string& key, const std::string& path) {
  if (!path.empty() && !fs::is_regular_file(path)) throw ConfigError(key + ": file not found: " + path);
}

}  // namespace

std::string PipelineConfig::processed_corpus_path() const { return join_path(paths.output_dir, "corpus.jsonl"); }
std::string PipelineConfig::vocabulary_path() const { return join_path(paths.output_dir, "vocabulary.json"); }
std::string PipelineConfig::checkpoint_path() const {
  return paths.checkpoint.empty() ? join_path(paths.output_dir, "checkpoint.json") : paths.checkpoint;
}

std::set<int> PipelineConfig::pattern_ids() const { return parse_pattern_ids(patterns); }

void PipelineConfig::validate() const {
  hyperparams.validate();
  schedule.validate();
  filters.validate();
  eval.validate();
  if (min_count < 1) throw ConfigError("model.min_count must be >= 1");
  if (max_words < 1) throw ConfigError("patterns.max_words must be >= 1");
  if (top_n < 1) throw ConfigError("pipeline.top_n must be >= 1");
  if (paths.corpus_format != "jsonl" && paths.corpus_format != "conll" && paths.corpus_format != "raw")
    throw ConfigError("paths.corpus_format must be jsonl, conll or raw");
  if (pattern_ids().empty()) throw ConfigError("patterns.preset selects no pattern");
  Procedure::parse(procedure);
  require_file("paths.corpus", paths.corpus);
  require_file("paths.lexicon", paths.lexicon);
  require_file("paths.seeds", paths.seeds);
  require_file("paths.stopwords", paths.stopwords);
  require_file("paths.negation_words", paths.negation_words);
  require_file("paths.sentiment_words", paths.sentiment_words);
}

PipelineConfig parse_config(std::istream& in, const std::string& base_dir) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  const auto setters = make_setters(base_dir);
  PipelineConfig cfg;
  cfg.paths.output_dir = base_dir.empty() ? "." : base_dir;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty())
      throw ConfigError("config: key '" + section + "' outside a section");
    for (const auto& [key, value] : body) {
      const std::string full = section + "." + key;
      auto it = setters.find(full);
      if (it == setters.end()) throw ConfigError("config: unknown key '" + full + "'");
      it->second(cfg, value.data());
    }
  }
  return cfg;
}

PipelineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  std::string dir = fs::path(path).parent_path().string();
  return parse_config(in, dir.empty() ? "." : dir);
}

std::string config_to_ini(const PipelineConfig& c) {
  std::ostringstream o;
  o.precision(17);
  o << "[paths]\ncorpus = " << c.paths.corpus << "\ncorpus_format = " << c.paths.corpus_format
    << "\noutput_dir = " << c.paths.output_dir << "\ncheckpoint = " << c.paths.checkpoint
    << "\nlexicon = " << c.paths.lexicon << "\nseeds = " << c.paths.seeds << "\nstopwords = " << c.paths.stopwords
    << "\nnegation_words = " << c.paths.negation_words << "\nsentiment_words = " << c.paths.sentiment_words
    << "\n\n[model]\nalpha = " << c.hyperparams.alpha << "\nbeta = " << c.hyperparams.beta
    << "\ngamma = " << c.hyperparams.gamma << "\nsigma1_sq = " << c.hyperparams.sigma1_sq
    << "\nsigma2_sq = " << c.hyperparams.sigma2_sq << "\nnum_topics = " << c.hyperparams.num_topics
    << "\nseed_offset = " << c.hyperparams.seed_offset << "\nmin_count = " << c.min_count
    << "\n\n[schedule]\nburn_in = " << c.schedule.burn_in
    << "\ninterleave = " << c.schedule.interleave << "\ntotal = " << c.schedule.total
    << "\n\n[filters]\naw_top_x = " << c.filters.aw_top_x << "\nsw_top_y = " << c.filters.sw_top_y
    << "\nrank_keep_fraction = " << c.filters.rank_keep_fraction
    << "\n\n[eval]\nrecall_threshold = " << c.eval.recall_threshold
    << "\nnormalization = " << token_normalization_name(c.eval.normalization) << "\n\n[patterns]\npreset = "
    << c.patterns << "\nmax_words = " << c.max_words << "\n\n[pipeline]\nprocedure = " << c.procedure
    << "\nrng_seed = " << c.rng_seed << "\ntop_n = " << c.top_n << "\n";
  return o.str();
}

}  // namespace revsum
