#ifndef SEMGP_RUN_COMMON_HPP
#define SEMGP_RUN_COMMON_HPP

#include <algorithm>
#include <array>
#include <vector>

#include "semgp/dataset.hpp"
#include "semgp/pareto.hpp"

namespace semgp::detail {

// Non-dominated filter (train objectives, duplicates collapsed) over the
// union of final population and archive/EP.
inline std::vector<IndividualPtr> nondominated_union(const std::vector<IndividualPtr>& a,
                                                     const std::vector<IndividualPtr>& b) {
    std::vector<IndividualPtr> pool(a);
    pool.insert(pool.end(), b.begin(), b.end());
    std::vector<IndividualPtr> result;
    for (const auto& cand : pool) {
        bool keep = true;
        for (const auto& other : pool) {
            if (other != cand && dominates_pair(other->obj, cand->obj)) {
                keep = false;
                break;
            }
        }
        if (!keep) continue;
        for (const auto& prev : result)
            if (prev->obj == cand->obj) {
                keep = false;
                break;
            }
        if (keep) result.push_back(cand);
    }
    return result;
}

/// Test-set re-scored objectives of the train-side non-dominated union.
inline std::vector<std::array<double, 2>> rescored_front(const std::vector<IndividualPtr>& nd,
                                                         const LabeledDataset& test,
                                                         Evaluator& ev) {
    std::vector<std::array<double, 2>> front;
    front.reserve(nd.size());
    for (const auto& ind : nd) front.push_back(score_on(ind->tree, test, ev));
    return front;
}

inline std::array<double, 2> best_per_objective(const std::vector<IndividualPtr>& pop) {
    std::array<double, 2> best{0.0, 0.0};
    for (const auto& ind : pop) {
        best[0] = std::max(best[0], ind->obj[0]);
        best[1] = std::max(best[1], ind->obj[1]);
    }
    return best;
}

} // namespace semgp::detail

#endif
