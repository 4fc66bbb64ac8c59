#include "semgp/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "semgp/errors.hpp"
#include "semgp/rng.hpp"

namespace semgp {

const std::vector<std::string>& known_variants() {
    static const std::vector<std::string> v = {"nsga2", "spea2", "moead-tch", "moead-tch-ssc"};
    return v;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value,
                            const std::string& constraint) {
    throw ConfigError("config key '" + key + "': value '" + value + "' invalid (" + constraint +
                      ")");
}

long parse_int(const std::string& key, const std::string& value, long lo, long hi) {
    long v = 0;
    try {
        std::size_t used = 0;
        v = std::stol(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
        bad_value(key, value, "expected an integer");
    }
    if (v < lo || v > hi)
        bad_value(key, value,
                  "expected integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        bad_value(key, value, "expected a real number");
    }
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

void apply(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    EngineParams& e = cfg.engine;
    if (key == "population") e.population = static_cast<std::size_t>(parse_int(key, value, 2, 1000000));
    else if (key == "generations") e.generations = static_cast<int>(parse_int(key, value, 0, 1000000));
    else if (key == "crossover_rate") e.rates.crossover = parse_real(key, value);
    else if (key == "mutation_rate") e.rates.mutation = parse_real(key, value);
    else if (key == "internal_node_bias") e.rates.internal_node_bias = parse_real(key, value);
    else if (key == "tournament_size") e.tournament_size = static_cast<int>(parse_int(key, value, 1, 1000));
    else if (key == "init_depth_min") e.init_depth_min = static_cast<int>(parse_int(key, value, 1, 32));
    else if (key == "init_depth_max") e.init_depth_max = static_cast<int>(parse_int(key, value, 1, 32));
    else if (key == "max_depth") e.limits.max_depth = static_cast<int>(parse_int(key, value, 1, 32));
    else if (key == "max_length") e.limits.max_length = static_cast<std::size_t>(parse_int(key, value, 1, 1000000));
    else if (key == "mutation_subtree_depth") e.mutation_subtree_depth = static_cast<int>(parse_int(key, value, 0, 32));
    else if (key == "neighborhood") e.neighborhood = static_cast<std::size_t>(parse_int(key, value, 1, 1000000));
    else if (key == "ubss") e.ssc.ubss = value == "inf" ? std::numeric_limits<double>::infinity()
                                                        : parse_real(key, value);
    else if (key == "ssc_max_trials") e.ssc.max_trials = static_cast<int>(parse_int(key, value, 1, 10000));
    else if (key == "ssc_pairing") {
        if (value == "paired") e.ssc.pairing = SscPairing::Paired;
        else if (value == "any") e.ssc.pairing = SscPairing::Any;
        else bad_value(key, value, "expected 'paired' or 'any'");
    } else if (key == "moead_mating") {
        if (value == "neighborhood") e.moead_mating = MoeadMating::Neighborhood;
        else if (value == "tournament") e.moead_mating = MoeadMating::Tournament;
        else bad_value(key, value, "expected 'neighborhood' or 'tournament'");
    } else if (key == "replacement_tie") {
        if (value == "replace") e.replacement_tie_replace = true;
        else if (value == "keep") e.replacement_tie_replace = false;
        else bad_value(key, value, "expected 'replace' or 'keep'");
    } else if (key == "runs") cfg.runs = static_cast<int>(parse_int(key, value, 1, 100000));
    else if (key == "digits") {
        cfg.digits.clear();
        for (const auto& d : split_list(value))
            cfg.digits.push_back(static_cast<int>(parse_int(key, d, 0, 9)));
        if (cfg.digits.empty()) bad_value(key, value, "expected at least one digit");
    } else if (key == "variants") {
        cfg.variants = split_list(value);
        for (const auto& v : cfg.variants)
            if (std::find(known_variants().begin(), known_variants().end(), v) ==
                known_variants().end())
                bad_value(key, v, "expected one of nsga2, spea2, moead-tch, moead-tch-ssc");
        if (cfg.variants.empty()) bad_value(key, value, "expected at least one variant");
    } else if (key == "base_seed") cfg.base_seed = static_cast<std::uint64_t>(parse_int(key, value, 0, std::numeric_limits<long>::max()));
    else if (key == "per_digit") cfg.per_digit = static_cast<std::size_t>(parse_int(key, value, 10, 10000000));
    else if (key == "images") cfg.images_path = value;
    else if (key == "labels") cfg.labels_path = value;
    else if (key == "feature_cache") cfg.feature_cache = value;
    else if (key == "csv") cfg.csv_path = value;
    else if (key == "csv_label_column") cfg.csv_label_column = value;
    else if (key == "synth_per_digit") cfg.synth_per_digit = static_cast<std::size_t>(parse_int(key, value, 10, 10000000));
    else if (key == "out_dir") cfg.out_dir = value;
    else if (key == "workers") cfg.workers = static_cast<int>(parse_int(key, value, 1, 4096));
    else throw ConfigError("unknown config key '" + key + "'");
}

} // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::stringstream ss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected key=value, got '" + line + "'");
        apply(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    validate_config(cfg);
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void validate_config(const ExperimentConfig& cfg) {
    const EngineParams& e = cfg.engine;
    if (std::abs(e.rates.crossover + e.rates.mutation - 1.0) > 1e-12)
        throw ConfigError("crossover_rate + mutation_rate must equal 1 (got " +
                          std::to_string(e.rates.crossover) + " + " +
                          std::to_string(e.rates.mutation) + ")");
    if (e.rates.crossover < 0.0 || e.rates.mutation < 0.0)
        throw ConfigError("rates must be non-negative");
    if (e.rates.internal_node_bias < 0.0 || e.rates.internal_node_bias > 1.0)
        throw ConfigError("internal_node_bias must be in [0,1]");
    if (!(e.ssc.ubss > 0.0)) throw ConfigError("ubss must be > 0");
    if (e.ssc.max_trials < 1) throw ConfigError("ssc_max_trials must be >= 1");
    if (e.init_depth_min > e.init_depth_max)
        throw ConfigError("init_depth_min must be <= init_depth_max");
    if (e.init_depth_max > e.limits.max_depth)
        throw ConfigError("init_depth_max must be <= max_depth");
    if (e.neighborhood > e.population)
        throw ConfigError("neighborhood must be <= population");
    if (!cfg.csv_path.empty() && (!cfg.images_path.empty() || cfg.synth_per_digit > 0))
        throw ConfigError("choose one data source: csv, images/labels, or synth_per_digit");
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
    const EngineParams& e = cfg.engine;
    std::ostringstream s;
    s << e.population << '|' << e.generations << '|' << e.rates.crossover << '|'
      << e.rates.mutation << '|' << e.rates.internal_node_bias << '|' << e.tournament_size << '|'
      << e.init_depth_min << '|' << e.init_depth_max << '|' << e.limits.max_depth << '|'
      << e.limits.max_length << '|' << e.mutation_subtree_depth << '|' << e.neighborhood << '|'
      << e.ssc.ubss << '|' << e.ssc.max_trials << '|' << static_cast<int>(e.ssc.pairing) << '|'
      << static_cast<int>(e.moead_mating) << '|' << e.replacement_tie_replace << '|' << cfg.runs
      << '|' << cfg.base_seed << '|' << cfg.per_digit << '|' << cfg.images_path << '|'
      << cfg.labels_path << '|' << cfg.csv_path << '|' << cfg.csv_label_column << '|'
      << cfg.synth_per_digit;
    return fnv1a(s.str());
}

} // namespace semgp
