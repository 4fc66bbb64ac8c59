#ifndef SEMGP_TREE_HPP
#define SEMGP_TREE_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace semgp {

enum class Op : std::uint8_t { Add, Sub, Mul, Pdiv, If, Terminal };

inline int arity(Op op) {
    switch (op) {
    case Op::If: return 3;
    case Op::Terminal: return 0;
    default: return 2;
    }
}

const char* op_name(Op op);

/// Function set {+, -, *, protected /, ternary IF} over feature terminals.
struct PrimitiveSet {
    std::size_t n_features = 18;

    static constexpr Op kFunctions[5] = {Op::Add, Op::Sub, Op::Mul, Op::Pdiv, Op::If};
    static constexpr std::size_t n_functions = 5;
};

struct Node {
    Op op = Op::Terminal;
    std::uint16_t feature = 0; // valid when op == Terminal
};

inline bool operator==(Node a, Node b) { return a.op == b.op && a.feature == b.feature; }

/// Expression tree stored as a preorder node sequence; root at depth 0.
struct Tree {
    std::vector<Node> nodes;

    std::size_t length() const { return nodes.size(); }

    /// One past the last node of the subtree rooted at `i`.
    std::size_t subtree_end(std::size_t i) const;

    /// Depth of the deepest node (root = 0).
    int depth() const;

    /// Depth of node `i`.
    int node_depth(std::size_t i) const;

    std::string to_string() const;

    bool operator==(const Tree& other) const { return nodes == other.nodes; }
};

struct TreeLimits {
    int max_depth = 8;
    std::size_t max_length = 800;
};

inline bool within_limits(const Tree& t, const TreeLimits& lim) {
    return t.length() <= lim.max_length && t.depth() <= lim.max_depth;
}

} // namespace semgp

#endif
