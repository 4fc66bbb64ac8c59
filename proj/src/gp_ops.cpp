#include "semgp/gp_ops.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace semgp {

namespace {

void grow_rec(Tree& t, const PrimitiveSet& prims, int depth, int min_depth, int max_depth,
              Rng& rng) {
    const std::size_t n_prims = PrimitiveSet::n_functions + prims.n_features;
    bool terminal;
    if (depth >= max_depth) {
        terminal = true;
    } else if (depth < min_depth) {
        terminal = false;
    } else {
        // Uniform over the merged primitive set, the usual grow bias.
        terminal = rng.below(n_prims) >= PrimitiveSet::n_functions;
    }
    if (terminal) {
        t.nodes.push_back({Op::Terminal, static_cast<std::uint16_t>(rng.below(prims.n_features))});
        return;
    }
    Op op = PrimitiveSet::kFunctions[rng.below(PrimitiveSet::n_functions)];
    t.nodes.push_back({op, 0});
    for (int c = 0; c < arity(op); ++c) grow_rec(t, prims, depth + 1, min_depth, max_depth, rng);
}

void full_rec(Tree& t, const PrimitiveSet& prims, int depth, int target, Rng& rng) {
    if (depth >= target) {
        t.nodes.push_back({Op::Terminal, static_cast<std::uint16_t>(rng.below(prims.n_features))});
        return;
    }
    Op op = PrimitiveSet::kFunctions[rng.below(PrimitiveSet::n_functions)];
    t.nodes.push_back({op, 0});
    for (int c = 0; c < arity(op); ++c) full_rec(t, prims, depth + 1, target, rng);
}

} // namespace

Tree grow_tree(const PrimitiveSet& prims, int min_depth, int max_depth, Rng& rng) {
    Tree t;
    grow_rec(t, prims, 0, min_depth, max_depth, rng);
    return t;
}

Tree full_tree(const PrimitiveSet& prims, int depth, Rng& rng) {
    Tree t;
    full_rec(t, prims, 0, depth, rng);
    return t;
}

std::vector<Tree> ramped_half_and_half(std::size_t pop_size, int min_depth, int max_depth,
                                       const PrimitiveSet& prims, Rng& rng) {
    assert(pop_size >= 1 && min_depth >= 1 && min_depth <= max_depth);
    std::vector<Tree> pop;
    pop.reserve(pop_size);
    int depth = min_depth;
    bool use_full = false;
    for (std::size_t i = 0; i < pop_size; ++i) {
        pop.push_back(use_full ? full_tree(prims, depth, rng)
                               : grow_tree(prims, depth, depth, rng));
        use_full = !use_full;
        if (!use_full) {
            ++depth;
            if (depth > max_depth) depth = min_depth;
        }
    }
    return pop;
}

namespace {

inline double clamp_value(double v) {
    if (v > kOverflowClamp) return kOverflowClamp;
    if (v < -kOverflowClamp) return -kOverflowClamp;
    return v;
}

} // namespace

void Evaluator::evaluate(const Tree& tree, const Matrix& features, std::vector<double>& out) {
    const std::size_t n = features.rows;
    if (cases_ != n) {
        stack_.clear();
        cases_ = n;
    }
    // Postfix evaluation over the reversed preorder sequence: operands pop
    // in child order. Stack depth is bounded by 2*depth per binary level
    // plus IF's extra operand; 64 covers any tree within limits.
    std::size_t sp = 0;
    auto ensure = [&](std::size_t idx) -> std::vector<double>& {
        while (stack_.size() <= idx) stack_.emplace_back(n);
        return stack_[idx];
    };
    for (std::size_t pos = tree.nodes.size(); pos-- > 0;) {
        const Node& node = tree.nodes[pos];
        switch (node.op) {
        case Op::Terminal: {
            std::vector<double>& dst = ensure(sp++);
            const std::size_t f = node.feature;
            const std::size_t cols = features.cols;
            const double* src = features.data.data() + f;
            for (std::size_t i = 0; i < n; ++i) dst[i] = src[i * cols];
            break;
        }
        case Op::Add: {
            std::vector<double>& a = stack_[--sp];
            std::vector<double>& r = stack_[sp - 1];
            for (std::size_t i = 0; i < n; ++i) r[i] = clamp_value(a[i] + r[i]);
            break;
        }
        case Op::Sub: {
            std::vector<double>& a = stack_[--sp];
            std::vector<double>& b = stack_[sp - 1];
            for (std::size_t i = 0; i < n; ++i) b[i] = clamp_value(a[i] - b[i]);
            break;
        }
        case Op::Mul: {
            std::vector<double>& a = stack_[--sp];
            std::vector<double>& r = stack_[sp - 1];
            for (std::size_t i = 0; i < n; ++i) r[i] = clamp_value(a[i] * r[i]);
            break;
        }
        case Op::Pdiv: {
            std::vector<double>& a = stack_[--sp];
            std::vector<double>& b = stack_[sp - 1];
            for (std::size_t i = 0; i < n; ++i)
                b[i] = std::abs(b[i]) <= kDivEpsilon ? 1.0 : clamp_value(a[i] / b[i]);
            break;
        }
        case Op::If: {
            std::vector<double>& a = stack_[--sp];
            std::vector<double>& b = stack_[--sp];
            std::vector<double>& c = stack_[sp - 1];
            for (std::size_t i = 0; i < n; ++i) c[i] = a[i] > 0.0 ? b[i] : c[i];
            break;
        }
        }
    }
    assert(sp == 1);
    out = stack_[0];
}

std::vector<double> evaluate(const Tree& tree, const Matrix& features) {
    Evaluator ev;
    std::vector<double> out;
    ev.evaluate(tree, features, out);
    return out;
}

namespace {

// 90/10 crossover point: internal node with probability `internal_bias`,
// leaf otherwise; falls back to a leaf when there are no internal nodes.
std::size_t pick_point(const Tree& t, Rng& rng, double internal_bias) {
    std::size_t internals = 0;
    for (const Node& n : t.nodes)
        if (n.op != Op::Terminal) ++internals;
    const std::size_t leaves = t.nodes.size() - internals;
    const bool want_internal = internals > 0 && rng.coin(internal_bias);
    std::size_t k = rng.below(want_internal ? internals : leaves);
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        const bool is_internal = t.nodes[i].op != Op::Terminal;
        if (is_internal == want_internal && k-- == 0) return i;
    }
    return t.nodes.size() - 1; // unreachable
}

Tree splice(const Tree& base, std::size_t point, const Tree& donor, std::size_t d_begin,
            std::size_t d_end) {
    Tree child;
    const std::size_t end = base.subtree_end(point);
    child.nodes.reserve(base.nodes.size() - (end - point) + (d_end - d_begin));
    child.nodes.insert(child.nodes.end(), base.nodes.begin(), base.nodes.begin() + point);
    child.nodes.insert(child.nodes.end(), donor.nodes.begin() + d_begin,
                       donor.nodes.begin() + d_end);
    child.nodes.insert(child.nodes.end(), base.nodes.begin() + end, base.nodes.end());
    return child;
}

} // namespace

std::pair<Tree, Tree> crossover_90_10(const Tree& p1, const Tree& p2, Rng& rng,
                                      const TreeLimits& limits, double internal_bias) {
    const std::size_t pt1 = pick_point(p1, rng, internal_bias);
    const std::size_t pt2 = pick_point(p2, rng, internal_bias);
    Tree c1 = splice(p1, pt1, p2, pt2, p2.subtree_end(pt2));
    Tree c2 = splice(p2, pt2, p1, pt1, p1.subtree_end(pt1));
    if (!within_limits(c1, limits)) c1 = p1;
    if (!within_limits(c2, limits)) c2 = p2;
    return {std::move(c1), std::move(c2)};
}

Tree subtree_mutation(const Tree& p, const PrimitiveSet& prims, Rng& rng,
                      const TreeLimits& limits, int subtree_max_depth) {
    const std::size_t point = rng.below(p.nodes.size());
    Tree sub = grow_tree(prims, 0, subtree_max_depth, rng);
    Tree child = splice(p, point, sub, 0, sub.nodes.size());
    if (!within_limits(child, limits)) return p;
    return child;
}

Tree vary(const Tree& p1, const Tree& p2, const VariationRates& rates, const PrimitiveSet& prims,
          Rng& rng, const TreeLimits& limits) {
    if (rng.coin(rates.crossover))
        return crossover_90_10(p1, p2, rng, limits, rates.internal_node_bias).first;
    return subtree_mutation(p1, prims, rng, limits);
}

} // namespace semgp
