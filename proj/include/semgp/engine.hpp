#ifndef SEMGP_ENGINE_HPP
#define SEMGP_ENGINE_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "semgp/dataset.hpp"
#include "semgp/gp_ops.hpp"
#include "semgp/semantics.hpp"

namespace semgp {

enum class MoeadMating {
    Neighborhood, // random k,l from B(i)
    Tournament,   // size-7 tournament on the sub-problem's scalarized fitness
};

/// Shared knobs for all four engine variants (Table-like defaults).
struct EngineParams {
    std::size_t population = 500;
    int generations = 50;
    VariationRates rates;
    TreeLimits limits;
    int init_depth_min = 1;
    int init_depth_max = 5;
    int mutation_subtree_depth = 4;
    int tournament_size = 7;
    std::size_t neighborhood = 20; // MOEA/D T
    SemanticConfig ssc;
    MoeadMating moead_mating = MoeadMating::Neighborhood;
    bool replacement_tie_replace = true; // <= vs < in neighbor replacement
};

struct GenerationLog {
    std::array<double, 2> ideal{0.0, 0.0};
    std::size_t ep_size = 0;
    std::array<double, 2> best{0.0, 0.0}; // best per objective in population
};

/// Persistence unit for one run of one variant on one task.
struct RunResult {
    std::string variant;
    int digit = -1;
    int run_index = 0;
    std::uint64_t seed = 0;
    std::uint64_t config_hash = 0;
    // Non-dominated union of final population and archive/EP (train-side
    // filter), re-scored on the test set.
    std::vector<std::array<double, 2>> front;
    std::vector<std::array<double, 2>> ep; // archive snapshot, train objectives
    std::vector<GenerationLog> gen_log;
    double wall_ms = 0.0;
};

} // namespace semgp

#endif
