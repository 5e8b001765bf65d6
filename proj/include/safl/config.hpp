#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "safl/adaptation.hpp"
#include "safl/datagen.hpp"
#include "safl/monitor.hpp"
#include "safl/netsim.hpp"
#include "safl/profiler.hpp"

namespace safl {

/// Full experiment description. JSON field names mirror the members
/// (snake_case); unknown keys are rejected.
struct ExperimentConfig {
    std::vector<DatasetSpec> datasets;
    int n_clients = 6;
    int rounds = 20;
    BaseConfig base;
    SizeThresholds thresholds;
    ComplexityWeights weights;
    NetworkConfig network;
    StopConfig stop;
    double prox_mu = 0.01;
    int hidden_dim = 32;
    std::uint64_t master_seed = 42;
    bool lr_complexity_factor = true;   // false recovers the plain alpha^c learning rate
    bool eval_holdout = false;          // true evaluates on a held-out 20% split
    bool real_system_probes = false;    // true swaps simulated constants for /proc readings
    std::string partition_strategy = "iid";  // "label_skew" reserved, not implemented

    void validate() const;  // throws std::invalid_argument
};

/// Parses and validates a config document. Dataset seeds left unset are
/// derived from (master_seed, name); complexity left unset is filled from
/// the modality component table. `seed_override` replaces master_seed
/// before those derivations.
ExperimentConfig parse_config(const nlohmann::json& j,
                              std::optional<std::uint64_t> seed_override = {});

ExperimentConfig load_config(const std::filesystem::path& path,
                             std::optional<std::uint64_t> seed_override = {});

nlohmann::ordered_json config_to_json(const ExperimentConfig& config);

/// The stock 13-dataset synthetic benchmark roster with default settings.
ExperimentConfig default_experiment_config();

}  // namespace safl
