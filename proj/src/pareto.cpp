#include "semgp/pareto.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "run_common.hpp"

namespace semgp {

bool dominates_pair(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    return a[0] >= b[0] && a[1] >= b[1] && (a[0] > b[0] || a[1] > b[1]);
}

std::vector<std::vector<std::size_t>> fast_nondominated_sort(
    const std::vector<std::array<double, 2>>& objs) {
    const std::size_t n = objs.size();
    std::vector<std::vector<std::size_t>> dominated(n);
    std::vector<std::size_t> dom_count(n, 0);
    std::vector<std::vector<std::size_t>> fronts;

    std::vector<std::size_t> current;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            if (p == q) continue;
            if (dominates_pair(objs[p], objs[q]))
                dominated[p].push_back(q);
            else if (dominates_pair(objs[q], objs[p]))
                ++dom_count[p];
        }
        if (dom_count[p] == 0) current.push_back(p);
    }
    while (!current.empty()) {
        fronts.push_back(current);
        std::vector<std::size_t> next;
        for (std::size_t p : current)
            for (std::size_t q : dominated[p])
                if (--dom_count[q] == 0) next.push_back(q);
        current = std::move(next);
    }
    return fronts;
}

std::vector<double> crowding_distance(const std::vector<std::array<double, 2>>& front_objs) {
    const std::size_t n = front_objs.size();
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, 0.0);
    if (n <= 2) {
        std::fill(dist.begin(), dist.end(), inf);
        return dist;
    }
    std::vector<std::size_t> order(n);
    for (int m = 0; m < 2; ++m) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return front_objs[a][m] < front_objs[b][m];
        });
        const double range = front_objs[order.back()][m] - front_objs[order.front()][m];
        dist[order.front()] = inf;
        dist[order.back()] = inf;
        if (range <= 0.0) continue;
        for (std::size_t i = 1; i + 1 < n; ++i)
            if (dist[order[i]] != inf)
                dist[order[i]] +=
                    (front_objs[order[i + 1]][m] - front_objs[order[i - 1]][m]) / range;
    }
    return dist;
}

namespace {

struct Ranked {
    std::vector<int> rank;
    std::vector<double> crowding;
};

Ranked rank_population(const std::vector<IndividualPtr>& pop) {
    std::vector<std::array<double, 2>> objs(pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i) objs[i] = pop[i]->obj;
    const auto fronts = fast_nondominated_sort(objs);
    Ranked r;
    r.rank.assign(pop.size(), 0);
    r.crowding.assign(pop.size(), 0.0);
    for (std::size_t f = 0; f < fronts.size(); ++f) {
        std::vector<std::array<double, 2>> front_objs;
        front_objs.reserve(fronts[f].size());
        for (std::size_t idx : fronts[f]) front_objs.push_back(objs[idx]);
        const auto cd = crowding_distance(front_objs);
        for (std::size_t i = 0; i < fronts[f].size(); ++i) {
            r.rank[fronts[f][i]] = static_cast<int>(f);
            r.crowding[fronts[f][i]] = cd[i];
        }
    }
    return r;
}

std::size_t nsga2_tournament(const Ranked& r, std::size_t pop_size, int k, Rng& rng) {
    std::size_t best = rng.below(pop_size);
    for (int c = 1; c < k; ++c) {
        const std::size_t cand = rng.below(pop_size);
        if (r.rank[cand] < r.rank[best] ||
            (r.rank[cand] == r.rank[best] && r.crowding[cand] > r.crowding[best]))
            best = cand;
    }
    return best;
}

std::vector<IndividualPtr> init_population(const EngineParams& params, const LabeledDataset& train,
                                           const PrimitiveSet& prims, Rng& rng, Evaluator& ev) {
    auto trees = ramped_half_and_half(params.population, params.init_depth_min,
                                      params.init_depth_max, prims, rng);
    std::vector<IndividualPtr> pop;
    pop.reserve(trees.size());
    for (auto& t : trees) pop.push_back(make_individual(std::move(t), train, ev));
    return pop;
}

RunResult finish_run(const char* variant, std::uint64_t seed,
                     const std::vector<IndividualPtr>& pop,
                     const std::vector<IndividualPtr>& archive, const LabeledDataset& test,
                     Evaluator& ev, std::vector<GenerationLog> log,
                     std::chrono::steady_clock::time_point t0) {
    RunResult result;
    result.variant = variant;
    result.seed = seed;
    result.gen_log = std::move(log);
    const auto nd = detail::nondominated_union(pop, archive);
    result.front = detail::rescored_front(nd, test, ev);
    result.ep.reserve(archive.size());
    for (const auto& a : archive) result.ep.push_back(a->obj);
    result.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                         .count();
    return result;
}

} // namespace

RunResult run_nsga2(const EngineParams& params, const LabeledDataset& train,
                    const LabeledDataset& test, std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(seed);
    Evaluator ev;
    PrimitiveSet prims;
    prims.n_features = train.n_features();

    auto pop = init_population(params, train, prims, rng, ev);
    std::vector<GenerationLog> log;
    for (int gen = 0; gen < params.generations; ++gen) {
        const Ranked ranked = rank_population(pop);
        std::vector<IndividualPtr> offspring;
        offspring.reserve(pop.size());
        for (std::size_t i = 0; i < pop.size(); ++i) {
            const auto& pa = pop[nsga2_tournament(ranked, pop.size(), params.tournament_size, rng)];
            const auto& pb = pop[nsga2_tournament(ranked, pop.size(), params.tournament_size, rng)];
            offspring.push_back(make_individual(
                vary(pa->tree, pb->tree, params.rates, prims, rng, params.limits), train, ev));
        }
        // (mu + lambda) environmental selection by rank, then crowding.
        std::vector<IndividualPtr> combined = pop;
        combined.insert(combined.end(), offspring.begin(), offspring.end());
        const Ranked cr = rank_population(combined);
        std::vector<std::size_t> order(combined.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (cr.rank[a] != cr.rank[b]) return cr.rank[a] < cr.rank[b];
            return cr.crowding[a] > cr.crowding[b];
        });
        std::vector<IndividualPtr> next;
        next.reserve(pop.size());
        for (std::size_t i = 0; i < pop.size(); ++i) next.push_back(combined[order[i]]);
        pop = std::move(next);
        log.push_back({detail::best_per_objective(pop), 0, detail::best_per_objective(pop)});
    }
    return finish_run("nsga2", seed, pop, {}, test, ev, std::move(log), t0);
}

namespace {

double obj_dist(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    const double dx = a[0] - b[0];
    const double dy = a[1] - b[1];
    return std::sqrt(dx * dx + dy * dy);
}

std::vector<std::array<double, 2>> pool_objs(const std::vector<IndividualPtr>& pool) {
    std::vector<std::array<double, 2>> objs(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) objs[i] = pool[i]->obj;
    return objs;
}

} // namespace

// SPEA2 fitness over the pooled population: strength, raw fitness, and
// k-th-nearest-neighbor density with k = sqrt(pop + archive).
std::vector<double> spea2_fitness(const std::vector<std::array<double, 2>>& objs, std::size_t k) {
    const std::size_t n = objs.size();
    std::vector<std::size_t> strength(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && dominates_pair(objs[i], objs[j])) ++strength[i];
    std::vector<double> fitness(n, 0.0);
    std::vector<double> dists;
    if (n > 1) dists.reserve(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        double raw = 0.0;
        dists.clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (dominates_pair(objs[j], objs[i]))
                raw += static_cast<double>(strength[j]);
            dists.push_back(obj_dist(objs[i], objs[j]));
        }
        if (dists.empty()) {
            fitness[i] = raw + 0.5;
            continue;
        }
        const std::size_t kk = std::min(k, dists.size() - 1);
        std::nth_element(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(kk),
                         dists.end());
        fitness[i] = raw + 1.0 / (dists[kk] + 2.0);
    }
    return fitness;
}

// Iterative truncation: drop the member with lexicographically smallest
// sorted nearest-neighbor distance vector until `target` remain.
std::vector<std::size_t> spea2_truncate(const std::vector<std::array<double, 2>>& objs,
                                        std::size_t target) {
    std::vector<std::size_t> kept(objs.size());
    std::iota(kept.begin(), kept.end(), std::size_t{0});
    while (kept.size() > target) {
        const std::size_t n = kept.size();
        std::vector<std::vector<double>> sorted_dists(n);
        for (std::size_t i = 0; i < n; ++i) {
            sorted_dists[i].reserve(n - 1);
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) sorted_dists[i].push_back(obj_dist(objs[kept[i]], objs[kept[j]]));
            std::sort(sorted_dists[i].begin(), sorted_dists[i].end());
        }
        std::size_t victim = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (sorted_dists[i] < sorted_dists[victim]) victim = i;
        kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(victim));
    }
    return kept;
}

namespace {

std::size_t fitness_tournament(const std::vector<double>& fitness, int k, Rng& rng) {
    std::size_t best = rng.below(fitness.size());
    for (int c = 1; c < k; ++c) {
        const std::size_t cand = rng.below(fitness.size());
        if (fitness[cand] < fitness[best]) best = cand;
    }
    return best;
}

} // namespace

RunResult run_spea2(const EngineParams& params, const LabeledDataset& train,
                    const LabeledDataset& test, std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(seed);
    Evaluator ev;
    PrimitiveSet prims;
    prims.n_features = train.n_features();

    const std::size_t n = params.population;
    auto pop = init_population(params, train, prims, rng, ev);
    std::vector<IndividualPtr> archive;
    std::vector<GenerationLog> log;
    const std::size_t k = static_cast<std::size_t>(std::sqrt(static_cast<double>(2 * n)));

    for (int gen = 0; gen <= params.generations; ++gen) {
        std::vector<IndividualPtr> pool = pop;
        pool.insert(pool.end(), archive.begin(), archive.end());
        const auto fitness = spea2_fitness(pool_objs(pool), k);

        // Environmental selection: non-dominated members (fitness < 1),
        // truncated or topped up with the best dominated ones.
        std::vector<IndividualPtr> next_archive;
        for (std::size_t i = 0; i < pool.size(); ++i)
            if (fitness[i] < 1.0) next_archive.push_back(pool[i]);
        if (next_archive.size() > n) {
            const auto kept = spea2_truncate(pool_objs(next_archive), n);
            std::vector<IndividualPtr> trimmed;
            trimmed.reserve(kept.size());
            for (std::size_t idx : kept) trimmed.push_back(next_archive[idx]);
            next_archive = std::move(trimmed);
        } else if (next_archive.size() < n) {
            std::vector<std::size_t> order(pool.size());
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return fitness[a] < fitness[b]; });
            for (std::size_t idx : order) {
                if (next_archive.size() == n) break;
                if (fitness[idx] >= 1.0) next_archive.push_back(pool[idx]);
            }
        }
        archive = std::move(next_archive);
        log.push_back({detail::best_per_objective(archive), archive.size(),
                       detail::best_per_objective(pop)});
        if (gen == params.generations) break;

        // Mating: size-7 tournaments on the archive's SPEA2 fitness.
        std::vector<double> archive_fitness = spea2_fitness(pool_objs(archive), k);
        std::vector<IndividualPtr> next_pop;
        next_pop.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& pa = archive[fitness_tournament(archive_fitness, params.tournament_size, rng)];
            const auto& pb = archive[fitness_tournament(archive_fitness, params.tournament_size, rng)];
            next_pop.push_back(make_individual(
                vary(pa->tree, pb->tree, params.rates, prims, rng, params.limits), train, ev));
        }
        pop = std::move(next_pop);
    }
    return finish_run("spea2", seed, pop, archive, test, ev, std::move(log), t0);
}

} // namespace semgp
