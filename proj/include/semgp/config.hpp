#ifndef SEMGP_CONFIG_HPP
#define SEMGP_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "semgp/engine.hpp"

namespace semgp {

/// Full experiment configuration; defaults mirror the engine's published
/// parameter table.
struct ExperimentConfig {
    EngineParams engine;

    int runs = 30;
    std::vector<int> digits = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    std::vector<std::string> variants = {"nsga2", "spea2", "moead-tch", "moead-tch-ssc"};
    std::uint64_t base_seed = 1;
    std::size_t per_digit = 6000;

    // Data source: either IDX paths, a CSV, or the synthetic generator.
    std::string images_path;
    std::string labels_path;
    std::string feature_cache; // optional, skips re-extraction
    std::string csv_path;
    std::string csv_label_column = "label";
    std::size_t synth_per_digit = 0; // > 0 selects the synthetic source

    std::string out_dir = "results";
    int workers = 1;
};

/// key=value config with '#' comments; unknown keys are rejected and every
/// constraint is checked up front (throws ConfigError).
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);
void validate_config(const ExperimentConfig& cfg);

std::uint64_t config_hash(const ExperimentConfig& cfg);

const std::vector<std::string>& known_variants();

} // namespace semgp

#endif
