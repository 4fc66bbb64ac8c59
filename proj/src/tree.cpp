#include "semgp/tree.hpp"

#include <sstream>

namespace semgp {

const char* op_name(Op op) {
    switch (op) {
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Mul: return "*";
    case Op::Pdiv: return "%";
    case Op::If: return "if";
    case Op::Terminal: return "x";
    }
    return "?";
}

std::size_t Tree::subtree_end(std::size_t i) const {
    std::size_t pos = i;
    std::size_t remaining = 1;
    while (remaining > 0) {
        remaining += static_cast<std::size_t>(arity(nodes[pos].op));
        --remaining;
        ++pos;
    }
    return pos;
}

int Tree::depth() const {
    // Preorder walk with a stack of remaining-children counters.
    int max_depth = 0;
    int pending[64];
    int top = -1;
    for (const Node& n : nodes) {
        max_depth = std::max(max_depth, top + 1);
        int a = arity(n.op);
        if (a > 0) {
            pending[++top] = a;
        } else {
            while (top >= 0 && --pending[top] == 0) --top;
        }
    }
    return max_depth;
}

int Tree::node_depth(std::size_t i) const {
    int pending[64];
    int top = -1;
    for (std::size_t pos = 0;; ++pos) {
        if (pos == i) return top + 1;
        int a = arity(nodes[pos].op);
        if (a > 0) {
            pending[++top] = a;
        } else {
            while (top >= 0 && --pending[top] == 0) --top;
        }
    }
}

namespace {
void print_node(const Tree& t, std::size_t& pos, std::ostringstream& out) {
    const Node& n = t.nodes[pos++];
    if (n.op == Op::Terminal) {
        out << "x" << n.feature;
        return;
    }
    out << "(" << op_name(n.op);
    for (int c = 0; c < arity(n.op); ++c) {
        out << " ";
        print_node(t, pos, out);
    }
    out << ")";
}
} // namespace

std::string Tree::to_string() const {
    std::ostringstream out;
    std::size_t pos = 0;
    print_node(*this, pos, out);
    return out.str();
}

} // namespace semgp
