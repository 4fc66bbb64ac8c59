#ifndef SEMGP_GP_OPS_HPP
#define SEMGP_GP_OPS_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "semgp/matrix.hpp"
#include "semgp/rng.hpp"
#include "semgp/tree.hpp"

namespace semgp {

// Arithmetic is kept total: every node output is clamped into
// [-kOverflowClamp, kOverflowClamp] and protected division returns 1
// when the denominator is (near) zero.
constexpr double kOverflowClamp = 1e30;
constexpr double kDivEpsilon = 1e-9;

struct VariationRates {
    double crossover = 0.6;
    double mutation = 0.4;
    double internal_node_bias = 0.9; // 90% internal nodes, 10% leaves
};

Tree grow_tree(const PrimitiveSet& prims, int min_depth, int max_depth, Rng& rng);
Tree full_tree(const PrimitiveSet& prims, int depth, Rng& rng);

std::vector<Tree> ramped_half_and_half(std::size_t pop_size, int min_depth, int max_depth,
                                       const PrimitiveSet& prims, Rng& rng);

/// Reusable program evaluator; owns scratch buffers sized to the case count.
class Evaluator {
public:
    /// semantics of `tree` over all rows of `features`, written into `out`.
    void evaluate(const Tree& tree, const Matrix& features, std::vector<double>& out);

private:
    std::vector<std::vector<double>> stack_;
    std::size_t cases_ = 0;
};

std::vector<double> evaluate(const Tree& tree, const Matrix& features);

/// Subtree crossover with 90/10 internal/leaf point bias. Offspring that
/// break the structural limits revert to a copy of the matching parent.
std::pair<Tree, Tree> crossover_90_10(const Tree& p1, const Tree& p2, Rng& rng,
                                      const TreeLimits& limits, double internal_bias = 0.9);

/// Replaces a uniformly random node with a grow subtree of depth <= 4.
Tree subtree_mutation(const Tree& p, const PrimitiveSet& prims, Rng& rng,
                      const TreeLimits& limits, int subtree_max_depth = 4);

/// Operator-selection coin: crossover (first child) with rate.crossover,
/// otherwise subtree mutation of p1.
Tree vary(const Tree& p1, const Tree& p2, const VariationRates& rates,
          const PrimitiveSet& prims, Rng& rng, const TreeLimits& limits);

} // namespace semgp

#endif
