#ifndef SEMGP_SEMANTICS_HPP
#define SEMGP_SEMANTICS_HPP

#include <cstddef>
#include <vector>

#include "semgp/dataset.hpp"
#include "semgp/gp_ops.hpp"

namespace semgp {

enum class SscPairing {
    Paired, // child1 vs p1 AND child2 vs p2 must both differ
    Any,    // at least one of those pairings must differ
};

struct SemanticConfig {
    double ubss = 0.5;
    int max_trials = 20;
    SscPairing pairing = SscPairing::Paired;
};

/// Number of fitness cases where |sp_i - sv_i| > ubss (strict).
std::size_t semantic_distance(const std::vector<double>& sp, const std::vector<double>& sv,
                              double ubss);

bool semantically_different(const std::vector<double>& sp, const std::vector<double>& sv,
                            double ubss);

struct SscOutcome {
    Tree child1, child2;
    std::vector<double> sem1, sem2; // semantics on `features`, always filled
    int trials = 0;
    bool accepted = false; // false: trial budget exhausted, last pair returned as-is
};

/// Crossover retried up to cfg.max_trials until offspring are semantically
/// different from their parents; on exhaustion the last (standard) crossover
/// result is returned unconditionally.
SscOutcome ssc_crossover(const Individual& p1, const Individual& p2, const Matrix& features,
                         const SemanticConfig& cfg, Rng& rng, const TreeLimits& limits,
                         Evaluator& ev, double internal_bias = 0.9);

} // namespace semgp

#endif
