#include "thrsat/decomposition.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace thrsat {

std::uint64_t DecompositionTree::leaf_count() const {
    std::uint64_t c = 0;
    std::vector<const TreeNode*> stack{&root};
    while (!stack.empty()) {
        const TreeNode* n = stack.back();
        stack.pop_back();
        if (n->is_leaf)
            ++c;
        else
            for (const auto& ch : n->children) stack.push_back(&ch);
    }
    return c;
}

std::uint32_t DecompositionTree::depth() const {
    std::uint32_t best = 0;
    std::vector<std::pair<const TreeNode*, std::uint32_t>> stack{{&root, 0}};
    while (!stack.empty()) {
        auto [n, d] = stack.back();
        stack.pop_back();
        best = std::max(best, d);
        if (!n->is_leaf)
            for (const auto& ch : n->children) stack.emplace_back(&ch, d + 1);
    }
    return best;
}

ExactCount count_units(const std::vector<Literal>& units, bool bottom, std::uint32_t free_vars) {
    ExactCount r;
    r.term_bound = 1;
    if (bottom) return r;
    std::vector<Literal> ls = units;
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    for (std::size_t i = 0; i + 1 < ls.size(); ++i)
        if (ls[i].var == ls[i + 1].var) return r;
    if (ls.size() > free_vars) throw Error(ErrorKind::invalid_argument, "more asserted literals than free variables");
    r.value = pow2(free_vars - ls.size());
    return r;
}

ExactCount count_1cnf(const CnfFormula& f1) {
    std::vector<Literal> units;
    bool bottom = false;
    for (const auto& c : f1.clauses) {
        if (c.width() > 1) throw Error(ErrorKind::width, "count_1cnf needs width <= 1");
        if (c.empty())
            bottom = true;
        else
            units.push_back(c.lits[0]);
    }
    return count_units(units, bottom, f1.num_vars);
}

ExactCount count_tree(const DecompositionTree& t, std::uint32_t n) {
    ExactCount total;
    std::uint64_t leaves = 0;
    std::vector<Literal> path;
    for_each_leaf(t.root, path, [&](const Leaf& leaf, const std::vector<Literal>&) {
        ++leaves;
        if (leaf.fixed_vars > n) throw Error(ErrorKind::invalid_argument, "leaf fixes more variables than n");
        total.value += count_units(leaf.units, leaf.bottom, n - leaf.fixed_vars).value;
    });
    total.term_bound = leaves;
    return total;
}

CnfFormula condition(const CnfFormula& f, const std::vector<Literal>& true_lits) {
    std::vector<std::int8_t> val(f.num_vars + 1, -1);
    for (Literal l : true_lits) val.at(l.var) = l.positive ? 1 : 0;
    CnfFormula out;
    out.num_vars = f.num_vars;
    out.roles = f.roles;
    for (const auto& c : f.clauses) {
        Clause r;
        bool sat = false;
        for (Literal l : c.lits) {
            std::int8_t x = val[l.var];
            if (x < 0)
                r.lits.push_back(l);
            else if ((x == 1) == l.positive) {
                sat = true;
                break;
            }
        }
        if (!sat) out.clauses.push_back(std::move(r));
    }
    return out;
}

std::uint64_t default_leaf_budget() {
    if (const char* e = std::getenv("THRSAT_BUDGET_LEAVES")) {
        try {
            std::size_t used = 0;
            unsigned long long v = std::stoull(e, &used);
            if (used == std::string(e).size() && v > 0) return v;
        } catch (...) {
        }
    }
    return 10'000'000ull;
}

void Budget::charge(const mpz_class& n, const char* what) {
    mpz_class total = mpz_class(std::to_string(leaves_expanded)) + n;
    if (total > mpz_class(std::to_string(max_leaves))) {
        exceeded = true;
        throw Error(ErrorKind::budget_exceeded,
                    std::string("enumeration budget exceeded while expanding ") + what + " (projected " +
                        total.get_str() + " > cap " + std::to_string(max_leaves) + ")");
    }
    leaves_expanded += std::stoull(n.get_str());
}

}  // namespace thrsat
