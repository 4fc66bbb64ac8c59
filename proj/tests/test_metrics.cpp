#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "semgp/metrics.hpp"
#include "semgp/rng.hpp"

using namespace semgp;

namespace {

std::vector<FrontPoint> random_points(std::size_t n, Rng& rng) {
    std::vector<FrontPoint> pts(n);
    for (auto& p : pts) {
        p.tpr = rng.unit();
        p.tnr = rng.unit();
    }
    return pts;
}

// Monte-Carlo hypervolume: fraction of uniform samples in the reference box
// dominated by some front point.
double mc_hypervolume(const std::vector<FrontPoint>& front, std::array<double, 2> ref,
                      std::size_t samples, Rng& rng) {
    std::size_t hits = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        const double x = ref[0] + rng.unit() * (1.0 - ref[0]);
        const double y = ref[1] + rng.unit() * (1.0 - ref[1]);
        for (const auto& p : front)
            if (p.tpr >= x && p.tnr >= y) {
                ++hits;
                break;
            }
    }
    return (1.0 - ref[0]) * (1.0 - ref[1]) * static_cast<double>(hits) /
           static_cast<double>(samples);
}

// Vertical-slab sweep over the union of rectangles [ref, point]; an
// independent formulation of the same area.
double sweep_hypervolume(const std::vector<FrontPoint>& front, std::array<double, 2> ref) {
    std::vector<double> xs{ref[0]};
    for (const auto& p : front)
        if (p.tpr > ref[0]) xs.push_back(p.tpr);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    double area = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const double right = xs[i + 1];
        double height = 0.0;
        for (const auto& p : front)
            if (p.tpr >= right) height = std::max(height, p.tnr - ref[1]);
        area += (xs[i + 1] - xs[i]) * height;
    }
    return area;
}

// O(n^2) non-dominated oracle (keeps the first of each duplicate pair).
std::vector<FrontPoint> brute_nd(const std::vector<FrontPoint>& pts) {
    std::vector<FrontPoint> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        bool keep = true;
        for (std::size_t j = 0; j < pts.size() && keep; ++j) {
            if (i == j) continue;
            if (dominates(pts[j], pts[i])) keep = false;
            if (same_objectives(pts[j], pts[i]) && j < i) keep = false;
        }
        if (keep) out.push_back(pts[i]);
    }
    return out;
}

std::vector<std::array<double, 2>> sorted_objs(const std::vector<FrontPoint>& pts) {
    std::vector<std::array<double, 2>> v;
    for (const auto& p : pts) v.push_back({p.tpr, p.tnr});
    std::sort(v.begin(), v.end());
    return v;
}

double mann_whitney_u(const std::vector<double>& pooled, std::uint32_t mask, std::size_t n1) {
    // Midranks of the pooled sample, then U = R1 - n1(n1+1)/2.
    const std::size_t n = pooled.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return pooled[a] < pooled[b]; });
    std::vector<double> rank(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
        const double mid = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) rank[order[k]] = mid;
        i = j + 1;
    }
    double r1 = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        if (mask & (1u << k)) r1 += rank[k];
    return r1 - static_cast<double>(n1 * (n1 + 1)) / 2.0;
}

// Exact two-sided permutation p-value: share of group assignments whose U
// deviates from n1*n2/2 at least as much as the observed one.
double exact_wilcoxon_p(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> pooled = x;
    pooled.insert(pooled.end(), y.begin(), y.end());
    const std::size_t n = pooled.size();
    const std::size_t n1 = x.size();
    const double center = static_cast<double>(n1 * y.size()) / 2.0;
    std::uint32_t obs_mask = 0;
    for (std::size_t k = 0; k < n1; ++k) obs_mask |= 1u << k;
    const double obs_dev = std::abs(mann_whitney_u(pooled, obs_mask, n1) - center);
    std::size_t total = 0, extreme = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) != static_cast<int>(n1)) continue;
        ++total;
        if (std::abs(mann_whitney_u(pooled, mask, n1) - center) >= obs_dev - 1e-12) ++extreme;
    }
    return static_cast<double>(extreme) / static_cast<double>(total);
}

} // namespace

TEST_CASE("dominance on front points") {
    const FrontPoint a{0.8, 0.8, -1, -1};
    const FrontPoint b{0.8, 0.5, -1, -1};
    const FrontPoint c{0.5, 0.9, -1, -1};
    CHECK(dominates(a, b));
    CHECK_FALSE(dominates(b, a));
    CHECK_FALSE(dominates(b, c));
    CHECK_FALSE(dominates(c, b));
    CHECK_FALSE(dominates(a, a)); // strict: needs improvement somewhere
}

TEST_CASE("dominance is a strict partial order") {
    Rng rng(41);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto pts = random_points(3, rng);
        CHECK_FALSE(dominates(pts[0], pts[0]));
        if (dominates(pts[0], pts[1])) CHECK_FALSE(dominates(pts[1], pts[0]));
        if (dominates(pts[0], pts[1]) && dominates(pts[1], pts[2]))
            CHECK(dominates(pts[0], pts[2]));
    }
}

TEST_CASE("nondominated filter examples") {
    const std::vector<FrontPoint> pts{
        {0.9, 0.1, -1, -1}, {0.5, 0.5, -1, -1}, {0.4, 0.4, -1, -1}, {0.1, 0.9, -1, -1}};
    const auto nd = nondominated_filter(pts);
    REQUIRE(nd.size() == 3);
    CHECK(sorted_objs(nd) ==
          std::vector<std::array<double, 2>>{{0.1, 0.9}, {0.5, 0.5}, {0.9, 0.1}});
    // Duplicate objectives collapse to a single representative.
    const auto dup = nondominated_filter({{0.5, 0.5, 1, 1}, {0.5, 0.5, 2, 2}});
    CHECK(dup.size() == 1);
}

TEST_CASE("nondominated filter matches the brute-force oracle") {
    Rng rng(42);
    for (int trial = 0; trial < 60; ++trial) {
        auto pts = random_points(5 + rng.below(60), rng);
        // Inject duplicates and dominated clones.
        for (int d = 0; d < 5; ++d) pts.push_back(pts[rng.below(pts.size())]);
        CHECK(sorted_objs(nondominated_filter(pts)) == sorted_objs(brute_nd(pts)));
    }
}

TEST_CASE("hypervolume closed-form examples") {
    CHECK(hypervolume_2d({}) == 0.0);
    CHECK(hypervolume_2d({{1.0, 1.0, -1, -1}}) == doctest::Approx(1.0));
    CHECK(hypervolume_2d({{0.5, 1.0, -1, -1}, {1.0, 0.5, -1, -1}}) == doctest::Approx(0.75));
    CHECK(hypervolume_2d({{0.5, 0.5, -1, -1}}) == doctest::Approx(0.25));
    // Dominated points contribute nothing.
    CHECK(hypervolume_2d({{0.5, 1.0, -1, -1}, {1.0, 0.5, -1, -1}, {0.4, 0.4, -1, -1}}) ==
          doctest::Approx(0.75));
    // Points at or below the reference contribute nothing.
    CHECK(hypervolume_2d({{0.2, 0.2, -1, -1}}, {0.5, 0.5}) == 0.0);
    CHECK(hypervolume_2d({{1.0, 1.0, -1, -1}}, {0.5, 0.5}) == doctest::Approx(0.25));
}

TEST_CASE("hypervolume matches the slab-sweep oracle exactly") {
    Rng rng(43);
    for (int trial = 0; trial < 200; ++trial) {
        const auto pts = random_points(1 + rng.below(12), rng);
        const std::array<double, 2> ref{rng.unit() * 0.3, rng.unit() * 0.3};
        CHECK(hypervolume_2d(pts, ref) ==
              doctest::Approx(sweep_hypervolume(pts, ref)).epsilon(1e-12));
    }
}

TEST_CASE("hypervolume agrees with Monte-Carlo estimates") {
    Rng rng(44);
    for (int trial = 0; trial < 10; ++trial) {
        const auto pts = random_points(1 + rng.below(8), rng);
        const double hv = hypervolume_2d(pts);
        const std::size_t n = 200000;
        const double est = mc_hypervolume(pts, {0.0, 0.0}, n, rng);
        const double sigma = std::sqrt(std::max(hv * (1.0 - hv), 1e-12) / double(n));
        CHECK(std::abs(est - hv) < 4.0 * sigma + 1e-9);
    }
}

TEST_CASE("hypervolume never decreases when points are added") {
    Rng rng(45);
    for (int trial = 0; trial < 100; ++trial) {
        auto pts = random_points(1 + rng.below(10), rng);
        const double before = hypervolume_2d(pts);
        pts.push_back({rng.unit(), rng.unit(), -1, -1});
        CHECK(hypervolume_2d(pts) >= before - 1e-15);
    }
}

TEST_CASE("accumulated PO front is the non-dominated union") {
    Rng rng(46);
    std::vector<std::vector<FrontPoint>> fronts(4);
    std::vector<FrontPoint> pooled;
    for (auto& f : fronts) {
        f = random_points(10, rng);
        pooled.insert(pooled.end(), f.begin(), f.end());
    }
    CHECK(sorted_objs(accumulated_po_front(fronts)) == sorted_objs(brute_nd(pooled)));
    // Its hypervolume dominates every constituent front's.
    const double hv = hypervolume_2d(accumulated_po_front(fronts));
    for (const auto& f : fronts) CHECK(hv >= hypervolume_2d(f) - 1e-15);
}

TEST_CASE("wilcoxon: constant identical samples give p = 1") {
    const auto r = wilcoxon_rank_sum({5, 5, 5}, {5, 5, 5});
    CHECK(r.p_value == 1.0);
}

TEST_CASE("wilcoxon: fully separated samples") {
    std::vector<double> x(30), y(30);
    std::iota(x.begin(), x.end(), 1.0);
    std::iota(y.begin(), y.end(), 31.0);
    const auto r = wilcoxon_rank_sum(x, y);
    CHECK(r.statistic == 0.0); // every x ranks below every y
    CHECK(r.p_value < 1e-9);
    const auto rev = wilcoxon_rank_sum(y, x);
    CHECK(rev.statistic == doctest::Approx(900.0));
    CHECK(rev.p_value == doctest::Approx(r.p_value).epsilon(1e-9));
}

TEST_CASE("wilcoxon p-value is symmetric in the sample order") {
    Rng rng(47);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> x(5 + rng.below(10)), y(5 + rng.below(10));
        for (auto& v : x) v = std::floor(rng.unit() * 8.0); // force ties
        for (auto& v : y) v = std::floor(rng.unit() * 8.0);
        const auto a = wilcoxon_rank_sum(x, y);
        const auto b = wilcoxon_rank_sum(y, x);
        CHECK(a.p_value == doctest::Approx(b.p_value).epsilon(1e-12));
        CHECK(a.statistic + b.statistic ==
              doctest::Approx(static_cast<double>(x.size() * y.size())));
    }
}

TEST_CASE("wilcoxon tracks the exact permutation test on small samples") {
    Rng rng(48);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> x(4 + rng.below(4)), y(4 + rng.below(4));
        for (auto& v : x) v = std::floor(rng.unit() * 6.0);
        for (auto& v : y) v = std::floor(rng.unit() * 6.0) + 1.0;
        const double exact = exact_wilcoxon_p(x, y);
        const double approx = wilcoxon_rank_sum(x, y).p_value;
        CHECK(std::abs(exact - approx) < 0.06);
    }
}

TEST_CASE("payoff table counts significant wins") {
    // Strategy "b" clearly beats "a" on both digits; "c" ties "a".
    HypervolumeSamples samples;
    std::vector<double> low(12), high(12);
    std::iota(low.begin(), low.end(), 1.0);
    std::iota(high.begin(), high.end(), 100.0);
    for (int digit : {0, 1}) {
        samples["a"][digit] = low;
        samples["b"][digit] = high;
        samples["c"][digit] = low;
    }
    const auto table = payoff_table(samples, 0.05);
    REQUIRE(table.strategies == std::vector<std::string>{"a", "b", "c"});
    REQUIRE(table.wins.size() == 3);
    const auto idx = [&](const std::string& s) {
        return static_cast<std::size_t>(std::find(table.strategies.begin(),
                                                  table.strategies.end(), s) -
                                        table.strategies.begin());
    };
    // wins[row][col]: digits where col's mean beats row's significantly.
    CHECK(table.wins[idx("a")][idx("b")] == 2);
    CHECK(table.wins[idx("b")][idx("a")] == 0);
    CHECK(table.wins[idx("a")][idx("c")] == 0);
    CHECK(table.wins[idx("c")][idx("a")] == 0);
    for (std::size_t i = 0; i < 3; ++i) CHECK(table.wins[i][i] == 0);
}
