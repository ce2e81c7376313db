#pragma once

#include "thrsat/formula.hpp"

#include <cstdint>
#include <vector>

namespace thrsat {

// A 1-CNF leaf: residual unit literals, a flag for a residual empty clause,
// and how many variables were fixed on the path from the root.
struct Leaf {
    std::vector<Literal> units;
    bool bottom = false;
    std::uint32_t fixed_vars = 0;
};

struct TreeNode {
    bool is_leaf = true;
    Leaf leaf;
    // Internal nodes: the disjoint set (residual clauses at this node) and one
    // child per satisfying partial assignment of it.
    std::vector<Clause> split;
    std::vector<std::vector<Literal>> assignments;
    std::vector<TreeNode> children;
};

struct DecompositionTree {
    TreeNode root;
    std::uint64_t leaf_count() const;
    std::uint32_t depth() const;
};

// Count of a width <= 1 formula: 0 or 2^{n - #distinct units}.
ExactCount count_1cnf(const CnfFormula& f1);
ExactCount count_units(const std::vector<Literal>& units, bool bottom, std::uint32_t free_vars);

// Sum of leaf counts; leaf i counts over (n - fixed_vars_i) free variables.
ExactCount count_tree(const DecompositionTree& t, std::uint32_t n);

// Visit every leaf together with the literals assigned on its path.
template <class Fn>
void for_each_leaf(const TreeNode& node, std::vector<Literal>& path, Fn&& fn) {
    if (node.is_leaf) {
        fn(node.leaf, path);
        return;
    }
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        std::size_t mark = path.size();
        path.insert(path.end(), node.assignments[i].begin(), node.assignments[i].end());
        for_each_leaf(node.children[i], path, fn);
        path.resize(mark);
    }
}

// Drop clauses satisfied by `true_lits`, delete falsified literals.
CnfFormula condition(const CnfFormula& f, const std::vector<Literal>& true_lits);

// Enumeration budget shared by all tree builders.
std::uint64_t default_leaf_budget();  // THRSAT_BUDGET_LEAVES or 10^7

struct Budget {
    std::uint64_t max_leaves = default_leaf_budget();
    std::uint64_t leaves_expanded = 0;
    bool exceeded = false;

    // Reserve `n` more nodes; throws Error(budget_exceeded) past the cap.
    void charge(const mpz_class& n, const char* what);
};

}  // namespace thrsat
