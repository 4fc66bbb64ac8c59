#ifndef SEMGP_MOEAD_HPP
#define SEMGP_MOEAD_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "semgp/engine.hpp"

namespace semgp {

using WeightVector = std::array<double, 2>; // lambda1 + lambda2 = 1
using IdealPoint = std::array<double, 2>;   // component-wise best (maximization)

/// Uniform 2D simplex lattice: lambda^i = (i/(N-1), 1 - i/(N-1)).
std::vector<WeightVector> generate_weights(std::size_t n);

/// B(i) = indices of the T nearest weight vectors (Euclidean, ties by index).
std::vector<std::vector<std::size_t>> build_neighborhoods(const std::vector<WeightVector>& weights,
                                                          std::size_t t);

/// g(f | lambda, z) = max_j lambda_j * |f_j - z_j|; smaller is better.
double tchebycheff(const std::array<double, 2>& f, const WeightVector& lambda, const IdealPoint& z);

IdealPoint update_ideal(const IdealPoint& z, const std::array<double, 2>& f);

enum class MoeadVariant { Canonical, Ssc };

struct MoeadState {
    std::vector<WeightVector> weights;
    std::vector<std::vector<std::size_t>> neighborhoods;
    std::vector<IndividualPtr> population; // current solution of sub-problem i
    std::vector<IndividualPtr> ep;         // external population (non-dominated)
    IdealPoint ideal{0.0, 0.0};
};

MoeadState moead_init(const EngineParams& params, const LabeledDataset& train,
                      const PrimitiveSet& prims, Rng& rng, Evaluator& ev);

void moead_generation(MoeadState& state, const EngineParams& params, const LabeledDataset& train,
                      const PrimitiveSet& prims, MoeadVariant variant, Rng& rng, Evaluator& ev);

RunResult run_moead(const EngineParams& params, const LabeledDataset& train,
                    const LabeledDataset& test, MoeadVariant variant, std::uint64_t seed);

/// EP insertion: skip y if dominated or objective-identical to a member,
/// evict members y dominates. Exposed for direct testing.
void ep_insert(std::vector<IndividualPtr>& ep, const IndividualPtr& y);

} // namespace semgp

#endif
