#include "semgp/moead.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "semgp/pareto.hpp"
#include "run_common.hpp"

namespace semgp {

std::vector<WeightVector> generate_weights(std::size_t n) {
    std::vector<WeightVector> weights;
    weights.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double l1 = static_cast<double>(i) / static_cast<double>(n - 1);
        weights.push_back({l1, 1.0 - l1});
    }
    return weights;
}

std::vector<std::vector<std::size_t>> build_neighborhoods(const std::vector<WeightVector>& weights,
                                                          std::size_t t) {
    const std::size_t n = weights.size();
    std::vector<std::vector<std::size_t>> neighborhoods(n);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        auto dist2 = [&](std::size_t j) {
            const double dx = weights[i][0] - weights[j][0];
            const double dy = weights[i][1] - weights[j][1];
            return dx * dx + dy * dy;
        };
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return dist2(a) < dist2(b); });
        neighborhoods[i].assign(order.begin(), order.begin() + t);
    }
    return neighborhoods;
}

double tchebycheff(const std::array<double, 2>& f, const WeightVector& lambda,
                   const IdealPoint& z) {
    return std::max(lambda[0] * std::abs(f[0] - z[0]), lambda[1] * std::abs(f[1] - z[1]));
}

IdealPoint update_ideal(const IdealPoint& z, const std::array<double, 2>& f) {
    return {std::max(z[0], f[0]), std::max(z[1], f[1])};
}

void ep_insert(std::vector<IndividualPtr>& ep, const IndividualPtr& y) {
    for (const auto& member : ep)
        if (member->obj == y->obj || dominates_pair(member->obj, y->obj)) return;
    std::erase_if(ep, [&](const IndividualPtr& m) { return dominates_pair(y->obj, m->obj); });
    ep.push_back(y);
}

MoeadState moead_init(const EngineParams& params, const LabeledDataset& train,
                      const PrimitiveSet& prims, Rng& rng, Evaluator& ev) {
    MoeadState state;
    state.weights = generate_weights(params.population);
    state.neighborhoods = build_neighborhoods(state.weights, params.neighborhood);
    auto trees = ramped_half_and_half(params.population, params.init_depth_min,
                                      params.init_depth_max, prims, rng);
    state.population.reserve(trees.size());
    for (auto& t : trees) state.population.push_back(make_individual(std::move(t), train, ev));
    // z well-defined from generation 0: component-wise best of the initial
    // population (maximization branch of the update rule).
    state.ideal = {0.0, 0.0};
    for (const auto& ind : state.population) state.ideal = update_ideal(state.ideal, ind->obj);
    return state;
}

namespace {

// Size-k tournament over the whole population by sub-problem i's
// scalarized fitness (the alternative mating scheme behind `moead_mating`).
std::size_t scalarized_tournament(const MoeadState& state, std::size_t i, int k, Rng& rng) {
    std::size_t best = rng.below(state.population.size());
    double best_g = tchebycheff(state.population[best]->obj, state.weights[i], state.ideal);
    for (int c = 1; c < k; ++c) {
        const std::size_t cand = rng.below(state.population.size());
        const double g = tchebycheff(state.population[cand]->obj, state.weights[i], state.ideal);
        if (g < best_g) {
            best = cand;
            best_g = g;
        }
    }
    return best;
}

} // namespace

void moead_generation(MoeadState& state, const EngineParams& params, const LabeledDataset& train,
                      const PrimitiveSet& prims, MoeadVariant variant, Rng& rng, Evaluator& ev) {
    const std::size_t n = state.population.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& nb = state.neighborhoods[i];
        std::size_t k, l;
        if (params.moead_mating == MoeadMating::Neighborhood) {
            k = nb[rng.below(nb.size())];
            l = nb[rng.below(nb.size())];
        } else {
            k = scalarized_tournament(state, i, params.tournament_size, rng);
            l = scalarized_tournament(state, i, params.tournament_size, rng);
        }
        const Individual& pa = *state.population[k];
        const Individual& pb = *state.population[l];

        IndividualPtr y;
        if (variant == MoeadVariant::Ssc && rng.coin(params.rates.crossover)) {
            SscOutcome ssc = ssc_crossover(pa, pb, train.features, params.ssc, rng, params.limits,
                                           ev, params.rates.internal_node_bias);
            auto ind = std::make_shared<Individual>();
            ind->tree = std::move(ssc.child1);
            ind->semantics = std::move(ssc.sem1);
            ind->obj = objectives(confusion(ind->semantics, train.labels));
            y = ind;
        } else if (variant == MoeadVariant::Ssc) {
            y = make_individual(subtree_mutation(pa.tree, prims, rng, params.limits,
                                                 params.mutation_subtree_depth),
                                train, ev);
        } else {
            y = make_individual(
                vary(pa.tree, pb.tree, params.rates, prims, rng, params.limits), train, ev);
        }

        state.ideal = update_ideal(state.ideal, y->obj);

        for (std::size_t j : nb) {
            const double g_new = tchebycheff(y->obj, state.weights[j], state.ideal);
            const double g_old =
                tchebycheff(state.population[j]->obj, state.weights[j], state.ideal);
            const bool better = params.replacement_tie_replace ? g_new <= g_old : g_new < g_old;
            if (better) state.population[j] = y;
        }
        ep_insert(state.ep, y);
    }
}

RunResult run_moead(const EngineParams& params, const LabeledDataset& train,
                    const LabeledDataset& test, MoeadVariant variant, std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(seed);
    Evaluator ev;
    PrimitiveSet prims;
    prims.n_features = train.n_features();

    MoeadState state = moead_init(params, train, prims, rng, ev);
    RunResult result;
    result.variant = variant == MoeadVariant::Ssc ? "moead-tch-ssc" : "moead-tch";
    result.seed = seed;
    for (int gen = 0; gen < params.generations; ++gen) {
        moead_generation(state, params, train, prims, variant, rng, ev);
        result.gen_log.push_back(
            {state.ideal, state.ep.size(), detail::best_per_objective(state.population)});
    }

    const auto nd = detail::nondominated_union(state.population, state.ep);
    result.front = detail::rescored_front(nd, test, ev);
    result.ep.reserve(state.ep.size());
    for (const auto& e : state.ep) result.ep.push_back(e->obj);
    result.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                         .count();
    return result;
}

} // namespace semgp
