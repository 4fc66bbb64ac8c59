#include "semgp/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace semgp {

bool dominates(const FrontPoint& a, const FrontPoint& b) {
    return a.tpr >= b.tpr && a.tnr >= b.tnr && (a.tpr > b.tpr || a.tnr > b.tnr);
}

std::vector<FrontPoint> nondominated_filter(std::vector<FrontPoint> points) {
    std::vector<FrontPoint> result;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool keep = true;
        for (std::size_t j = 0; j < points.size() && keep; ++j)
            if (i != j && dominates(points[j], points[i])) keep = false;
        for (const auto& prev : result)
            if (same_objectives(prev, points[i])) keep = false;
        if (keep) result.push_back(points[i]);
    }
    return result;
}

double hypervolume_2d(const std::vector<FrontPoint>& front, std::array<double, 2> reference) {
    // Shift to the reference; points below it contribute nothing.
    std::vector<FrontPoint> pts;
    pts.reserve(front.size());
    for (const auto& p : front) {
        FrontPoint q = p;
        q.tpr = std::max(0.0, p.tpr - reference[0]);
        q.tnr = std::max(0.0, p.tnr - reference[1]);
        pts.push_back(q);
    }
    pts = nondominated_filter(std::move(pts));
    std::sort(pts.begin(), pts.end(),
              [](const FrontPoint& a, const FrontPoint& b) { return a.tpr > b.tpr; });
    double hv = 0.0;
    double prev_tnr = 0.0;
    for (const auto& p : pts) {
        hv += p.tpr * (p.tnr - prev_tnr);
        prev_tnr = p.tnr;
    }
    return hv;
}

std::vector<FrontPoint> accumulated_po_front(const std::vector<std::vector<FrontPoint>>& fronts) {
    std::vector<FrontPoint> merged;
    for (const auto& f : fronts) merged.insert(merged.end(), f.begin(), f.end());
    return nondominated_filter(std::move(merged));
}

namespace {

// Midranks of the pooled sample plus the tie-correction term sum(t^3 - t).
struct RankInfo {
    std::vector<double> ranks; // aligned with the pooled order
    double tie_term = 0.0;
};

RankInfo midranks(const std::vector<double>& pooled_sorted) {
    RankInfo info;
    const std::size_t n = pooled_sorted.size();
    info.ranks.resize(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && pooled_sorted[j + 1] == pooled_sorted[i]) ++j;
        const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) info.ranks[k] = rank;
        const double t = static_cast<double>(j - i + 1);
        info.tie_term += t * t * t - t;
        i = j + 1;
    }
    return info;
}

} // namespace

WilcoxonResult wilcoxon_rank_sum(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n1 = x.size();
    const std::size_t n2 = y.size();
    const std::size_t n = n1 + n2;

    std::vector<std::pair<double, int>> pooled;
    pooled.reserve(n);
    for (double v : x) pooled.emplace_back(v, 0);
    for (double v : y) pooled.emplace_back(v, 1);
    std::sort(pooled.begin(), pooled.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = pooled[i].first;
    const RankInfo info = midranks(values);

    double rank_sum_x = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (pooled[i].second == 0) rank_sum_x += info.ranks[i];

    const double fn1 = static_cast<double>(n1);
    const double fn2 = static_cast<double>(n2);
    const double fnn = static_cast<double>(n);
    const double u = rank_sum_x - fn1 * (fn1 + 1.0) / 2.0;

    WilcoxonResult result;
    result.statistic = u;
    const double variance =
        fn1 * fn2 / 12.0 * ((fnn + 1.0) - info.tie_term / (fnn * (fnn - 1.0)));
    if (variance <= 0.0) {
        result.p_value = 1.0;
        return result;
    }
    const double mean_u = fn1 * fn2 / 2.0;
    const double z = std::max(0.0, std::abs(u - mean_u) - 0.5) / std::sqrt(variance);
    result.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
    return result;
}

namespace {

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

} // namespace

PayoffTable payoff_table(const HypervolumeSamples& samples, double alpha) {
    PayoffTable table;
    for (const auto& [strategy, _] : samples) table.strategies.push_back(strategy);
    const std::size_t s = table.strategies.size();
    table.wins.assign(s, std::vector<int>(s, 0));
    for (std::size_t row = 0; row < s; ++row) {
        for (std::size_t col = 0; col < s; ++col) {
            if (row == col) continue;
            const auto& a = samples.at(table.strategies[row]);
            const auto& b = samples.at(table.strategies[col]);
            for (const auto& [digit, a_sample] : a) {
                auto it = b.find(digit);
                if (it == b.end()) continue;
                const auto& b_sample = it->second;
                if (mean_of(b_sample) <= mean_of(a_sample)) continue;
                if (wilcoxon_rank_sum(a_sample, b_sample).p_value < alpha)
                    ++table.wins[row][col];
            }
        }
    }
    return table;
}

} // namespace semgp
