#ifndef SEMGP_PARETO_HPP
#define SEMGP_PARETO_HPP

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

#include "semgp/engine.hpp"

namespace semgp {

/// Pareto dominance for maximization: a >= b on both, > on at least one.
bool dominates_pair(const std::array<double, 2>& a, const std::array<double, 2>& b);

/// Deb's fast non-dominated sort; returns fronts of indices into `objs`.
std::vector<std::vector<std::size_t>> fast_nondominated_sort(
    const std::vector<std::array<double, 2>>& objs);

/// NSGA-II crowding distances for one front (boundary points get +inf).
std::vector<double> crowding_distance(const std::vector<std::array<double, 2>>& front_objs);

/// SPEA2 fitness (raw strength sum + k-th-nearest density) per individual;
/// non-dominated individuals score < 1.
std::vector<double> spea2_fitness(const std::vector<std::array<double, 2>>& objs, std::size_t k);

/// Indices kept after iterative nearest-neighbor truncation to `target`.
std::vector<std::size_t> spea2_truncate(const std::vector<std::array<double, 2>>& objs,
                                        std::size_t target);

RunResult run_nsga2(const EngineParams& params, const LabeledDataset& train,
                    const LabeledDataset& test, std::uint64_t seed);

RunResult run_spea2(const EngineParams& params, const LabeledDataset& train,
                    const LabeledDataset& test, std::uint64_t seed);

} // namespace semgp

#endif
