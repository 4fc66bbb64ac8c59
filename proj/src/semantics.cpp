#include "semgp/semantics.hpp"

#include <cmath>
#include <stdexcept>

namespace semgp {

std::size_t semantic_distance(const std::vector<double>& sp, const std::vector<double>& sv,
                              double ubss) {
    if (sp.size() != sv.size())
        throw std::invalid_argument("semantic_distance: vector length mismatch");
    std::size_t count = 0;
    for (std::size_t i = 0; i < sp.size(); ++i)
        if (std::abs(sp[i] - sv[i]) > ubss) ++count;
    return count;
}

bool semantically_different(const std::vector<double>& sp, const std::vector<double>& sv,
                            double ubss) {
    if (sp.size() != sv.size())
        throw std::invalid_argument("semantically_different: vector length mismatch");
    for (std::size_t i = 0; i < sp.size(); ++i)
        if (std::abs(sp[i] - sv[i]) > ubss) return true;
    return false;
}

SscOutcome ssc_crossover(const Individual& p1, const Individual& p2, const Matrix& features,
                         const SemanticConfig& cfg, Rng& rng, const TreeLimits& limits,
                         Evaluator& ev, double internal_bias) {
    SscOutcome out;
    for (int trial = 0; trial < cfg.max_trials; ++trial) {
        auto [c1, c2] = crossover_90_10(p1.tree, p2.tree, rng, limits, internal_bias);
        out.trials = trial + 1;
        out.child1 = std::move(c1);
        out.child2 = std::move(c2);
        ev.evaluate(out.child1, features, out.sem1);
        ev.evaluate(out.child2, features, out.sem2);
        const bool diff1 = semantically_different(p1.semantics, out.sem1, cfg.ubss);
        const bool diff2 = semantically_different(p2.semantics, out.sem2, cfg.ubss);
        const bool ok = cfg.pairing == SscPairing::Paired ? (diff1 && diff2) : (diff1 || diff2);
        if (ok) {
            out.accepted = true;
            return out;
        }
    }
    // Budget exhausted: the last trial already is a standard crossover
    // result, so it is returned as the unconditional fallback.
    return out;
}

} // namespace semgp
