#ifndef SEMGP_METRICS_HPP
#define SEMGP_METRICS_HPP

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace semgp {

/// A point on a (tpr, tnr) front, with optional provenance.
struct FrontPoint {
    double tpr = 0.0;
    double tnr = 0.0;
    int run_id = -1;
    int individual_id = -1;
};

inline bool same_objectives(const FrontPoint& a, const FrontPoint& b) {
    return a.tpr == b.tpr && a.tnr == b.tnr;
}

bool dominates(const FrontPoint& a, const FrontPoint& b);

/// Maximal set under dominance; objective-duplicate points collapse to one.
std::vector<FrontPoint> nondominated_filter(std::vector<FrontPoint> points);

/// Dominated area relative to reference (maximization staircase sum).
double hypervolume_2d(const std::vector<FrontPoint>& front,
                      std::array<double, 2> reference = {0.0, 0.0});

std::vector<FrontPoint> accumulated_po_front(const std::vector<std::vector<FrontPoint>>& fronts);

struct WilcoxonResult {
    double statistic = 0.0; // Mann-Whitney U of the first sample
    double p_value = 1.0;   // two-sided
};

/// Two-sided rank-sum test: midranks, tie-corrected variance, normal
/// approximation with 0.5 continuity correction.
WilcoxonResult wilcoxon_rank_sum(const std::vector<double>& x, const std::vector<double>& y);

/// Win counts: cell(row A, col B) = #digits where B's mean is higher than
/// A's and the rank-sum p-value is below alpha. Diagonal stays 0.
struct PayoffTable {
    std::vector<std::string> strategies;
    std::vector<std::vector<int>> wins; // wins[row][col]
};

using HypervolumeSamples =
    std::map<std::string, std::map<int, std::vector<double>>>; // strategy -> digit -> per-run HV

PayoffTable payoff_table(const HypervolumeSamples& samples, double alpha = 0.05);

} // namespace semgp

#endif
