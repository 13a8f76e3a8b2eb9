#pragma once

#include <string>

#include <json.hpp>

#include "revsum/model.h"

namespace revsum {

inline constexpr int kCheckpointVersion = 1;

// JSON container: hyperparameters, vocabulary digest, per-document
// sentence counts, assignments, counts, smoothers, frozen seed words, RNG
// state and the number of completed sweeps.
nlohmann::json checkpoint_to_json(const ModelState& state);

// Restores a state against the corpus data and vocabulary it was trained
// on. Throws DataError when the digest, shape or stored counts disagree.
ModelState checkpoint_from_json(const nlohmann::json& j, ModelData data, const Vocabulary& vocab);

void save_checkpoint(const ModelState& state, const std::string& path);
ModelState load_checkpoint(const std::string& path, ModelData data, const Vocabulary& vocab);

nlohmann::json hyperparams_to_json(const Hyperparams& hp);
Hyperparams hyperparams_from_json(const nlohmann::json& j);

}  // namespace revsum
