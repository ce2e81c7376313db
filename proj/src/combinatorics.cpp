#include "thrsat/combinatorics.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace thrsat {

namespace {

// Residual clause: current literals, index of the source clause, and the
// source literals falsified so far.
struct RClause {
    std::vector<Literal> lits;
    std::size_t origin = 0;
    std::vector<Literal> removed;
};

struct Work {
    std::vector<RClause> cls;
    TreeNode* out = nullptr;
    std::uint32_t fixed = 0;
    std::vector<std::size_t> path_sizes;  // |S_j| for the stages already expanded
    std::vector<std::size_t> S;           // indices into cls
};

std::vector<std::size_t> greedy_disjoint(const std::vector<RClause>& cls, std::optional<std::size_t> filter,
                                         std::uint32_t nvars) {
    std::vector<char> used(nvars + 1, 0);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cls.size(); ++i) {
        const auto& c = cls[i].lits;
        if (filter ? c.size() != *filter : c.empty()) continue;
        if (std::any_of(c.begin(), c.end(), [&](Literal l) { return used[l.var]; })) continue;
        for (Literal l : c) used[l.var] = 1;
        out.push_back(i);
    }
    return out;
}

using Hook = std::function<std::optional<Sunflower>(std::size_t stage, const Work& node)>;

struct EngineResult {
    std::optional<Sunflower> sunflower;
    std::size_t stage = 0;
    DecompositionTree tree;
};

EngineResult run_engine(const CnfFormula& f, const std::vector<std::optional<std::size_t>>& filters, Budget& budget,
                        const Hook& hook) {
    EngineResult res;
    if (f.has_empty_clause()) {
        res.tree.root.leaf.bottom = true;
        return res;
    }
    std::vector<Work> level(1);
    level[0].out = &res.tree.root;
    for (std::size_t i = 0; i < f.clauses.size(); ++i) level[0].cls.push_back(RClause{f.clauses[i].lits, i, {}});

    for (std::size_t s = 0; s < filters.size(); ++s) {
        for (auto& node : level) {
            node.S = greedy_disjoint(node.cls, filters[s], f.num_vars);
            if (hook) {
                if (auto sf = hook(s, node)) {
                    res.sunflower = std::move(sf);
                    res.stage = s;
                    return res;
                }
            }
        }
        mpz_class projected = 0;
        for (const auto& node : level) {
            mpz_class c = 1;
            for (auto i : node.S) c *= (pow2(node.cls[i].lits.size()) - 1);
            projected += c;
        }
        budget.charge(projected, "decomposition stage");

        std::vector<Work> next;
        for (auto& node : level) {
            std::vector<std::size_t> sizes = node.path_sizes;
            sizes.push_back(node.S.size());
            if (node.S.empty()) {
                node.path_sizes = std::move(sizes);
                next.push_back(std::move(node));
                continue;
            }
            std::vector<Clause> split;
            std::uint32_t split_vars = 0;
            for (auto i : node.S) {
                split.emplace_back(node.cls[i].lits);
                split_vars += static_cast<std::uint32_t>(node.cls[i].lits.size());
            }
            TreeNode* out = node.out;
            out->is_leaf = false;
            out->split = split;
            std::vector<std::vector<Literal>> assigns;
            for_each_satisfying_assignment(split, [&](const std::vector<Literal>& a) { assigns.push_back(a); });
            out->children.resize(assigns.size());
            out->assignments = assigns;

            std::vector<std::int8_t> val(f.num_vars + 1, -1);
            for (std::size_t ci = 0; ci < assigns.size(); ++ci) {
                for (Literal l : assigns[ci]) val[l.var] = l.positive ? 1 : 0;
                Work child;
                child.out = &out->children[ci];
                child.fixed = node.fixed + split_vars;
                child.path_sizes = sizes;
                bool bottom = false;
                for (const auto& rc : node.cls) {
                    RClause nc;
                    nc.origin = rc.origin;
                    nc.removed = rc.removed;
                    bool sat = false;
                    for (Literal l : rc.lits) {
                        std::int8_t x = val[l.var];
                        if (x < 0)
                            nc.lits.push_back(l);
                        else if ((x == 1) == l.positive) {
                            sat = true;
                            break;
                        } else
                            nc.removed.push_back(l);
                    }
                    if (sat) continue;
                    if (nc.lits.empty()) bottom = true;
                    child.cls.push_back(std::move(nc));
                }
                for (Literal l : assigns[ci]) val[l.var] = -1;
                if (bottom) {
                    child.out->leaf.bottom = true;
                    child.out->leaf.fixed_vars = child.fixed;
                    continue;
                }
                next.push_back(std::move(child));
            }
        }
        level = std::move(next);
    }
    for (auto& node : level) {
        Leaf& leaf = node.out->leaf;
        leaf.fixed_vars = node.fixed;
        for (const auto& rc : node.cls) {
            if (rc.lits.size() > 1)
                throw Error(ErrorKind::width, "decomposition left a clause of width " + std::to_string(rc.lits.size()));
            leaf.units.push_back(rc.lits[0]);
        }
        std::sort(leaf.units.begin(), leaf.units.end());
        leaf.units.erase(std::unique(leaf.units.begin(), leaf.units.end()), leaf.units.end());
    }
    return res;
}

void check_width(const CnfFormula& f, std::size_t k) {
    for (const auto& c : f.clauses)
        if (c.width() > k)
            throw Error(ErrorKind::width, "clause " + clause_str(c) + " exceeds width " + std::to_string(k));
}

}  // namespace

DisjointSet maximal_disjoint_set(const CnfFormula& f, std::optional<std::size_t> width_filter) {
    DisjointSet s;
    s.width_filter = width_filter;
    std::vector<char> used(f.num_vars + 1, 0);
    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
        const auto& c = f.clauses[i].lits;
        if (width_filter && c.size() != *width_filter) continue;
        if (std::any_of(c.begin(), c.end(), [&](Literal l) { return used[l.var]; })) continue;
        for (Literal l : c) used[l.var] = 1;
        s.clause_indices.push_back(i);
    }
    return s;
}

bool is_variable_disjoint(const CnfFormula& f, const std::vector<std::size_t>& idx) {
    std::set<std::uint32_t> seen;
    for (auto i : idx) {
        std::set<std::uint32_t> mine;
        for (Literal l : f.clauses.at(i).lits) mine.insert(l.var);
        for (auto v : mine)
            if (!seen.insert(v).second) return false;
    }
    return true;
}

bool is_maximal_disjoint(const CnfFormula& f, const DisjointSet& s) {
    if (!is_variable_disjoint(f, s.clause_indices)) return false;
    std::set<std::uint32_t> vars;
    for (auto i : s.clause_indices)
        for (Literal l : f.clauses[i].lits) vars.insert(l.var);
    std::set<std::size_t> members(s.clause_indices.begin(), s.clause_indices.end());
    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
        if (members.count(i)) continue;
        const auto& c = f.clauses[i];
        if (s.width_filter && c.width() != *s.width_filter) continue;
        if (!s.width_filter && c.empty()) return false;
        if (std::none_of(c.lits.begin(), c.lits.end(), [&](Literal l) { return vars.count(l.var) > 0; })) return false;
    }
    return true;
}

void for_each_satisfying_assignment(const std::vector<Clause>& s,
                                    const std::function<void(const std::vector<Literal>&)>& fn) {
    const std::size_t m = s.size();
    for (const auto& c : s)
        if (c.empty()) return;
    // Per clause, pattern p in [0, 2^w - 1): bit (w-1-i) set means literal i is false.
    std::vector<std::uint64_t> pat(m, 0);
    std::vector<Literal> cur;
    for (;;) {
        cur.clear();
        for (std::size_t c = 0; c < m; ++c) {
            const auto& ls = s[c].lits;
            const std::size_t w = ls.size();
            for (std::size_t i = 0; i < w; ++i) {
                bool lit_false = (pat[c] >> (w - 1 - i)) & 1;
                cur.push_back(lit_false ? ~ls[i] : ls[i]);
            }
        }
        fn(cur);
        std::size_t c = m;
        while (c > 0) {
            --c;
            const std::uint64_t last = (std::uint64_t(1) << s[c].lits.size()) - 2;
            if (pat[c] < last) {
                ++pat[c];
                break;
            }
            pat[c] = 0;
            if (c == 0) return;
        }
        if (m == 0) return;
    }
}

std::vector<std::vector<Literal>> enumerate_satisfying_assignments(const CnfFormula& f, const DisjointSet& s) {
    std::vector<Clause> cs;
    for (auto i : s.clause_indices) cs.push_back(f.clauses.at(i));
    for (const auto& c : cs)
        if (c.empty()) return {};
    std::vector<std::vector<Literal>> out;
    for_each_satisfying_assignment(cs, [&](const std::vector<Literal>& a) { out.push_back(a); });
    return out;
}

mpz_class satisfying_assignment_count(const std::vector<Clause>& s) {
    mpz_class c = 1;
    for (const auto& cl : s) c *= pow2(cl.width()) - 1;
    return c;
}

bool is_valid_sunflower(const CnfFormula& f, const Sunflower& sf) {
    std::set<std::uint32_t> core_vars;
    for (Literal l : sf.core)
        if (!core_vars.insert(l.var).second) return false;
    std::set<std::size_t> distinct(sf.petal_indices.begin(), sf.petal_indices.end());
    if (distinct.size() != sf.petal_indices.size()) return false;
    std::set<std::uint32_t> seen;
    for (auto i : sf.petal_indices) {
        if (i >= f.clauses.size()) return false;
        const auto& c = f.clauses[i];
        for (Literal l : sf.core)
            if (!c.contains(l)) return false;
        for (Literal l : c.lits) {
            if (std::find(sf.core.begin(), sf.core.end(), l) != sf.core.end()) continue;
            if (!seen.insert(l.var).second) return false;
        }
    }
    return true;
}

ExtractionOutcome extract_3cnf(const CnfFormula& f, const Param& Z, const Param& Q, Budget& budget) {
    check_width(f, 3);
    std::size_t s0 = 0;
    Hook hook = [&](std::size_t stage, const Work& node) -> std::optional<Sunflower> {
        if (stage == 0) {
            s0 = node.S.size();
            if (!param_at_most(Z, s0, "Z")) return std::nullopt;
            Sunflower sf;
            for (auto i : node.S) sf.petal_indices.push_back(node.cls[i].origin);
            return sf;
        }
        if (s0 == 0 || !param_at_most(Q, node.S.size() / (3 * s0), "Q")) return std::nullopt;
        std::map<Literal, std::vector<std::size_t>> groups;
        for (auto i : node.S) {
            const auto& rc = node.cls[i];
            if (rc.removed.size() != 1) throw Error(ErrorKind::invalid_argument, "2-clause lost more than one literal");
            groups[rc.removed[0]].push_back(rc.origin);
        }
        for (auto& [lit, members] : groups) {
            if (param_at_most(Q, members.size(), "Q")) return Sunflower{{lit}, members};
        }
        throw Error(ErrorKind::invalid_argument, "pigeonhole failed in 3-CNF extraction");
    };
    auto r = run_engine(f, {std::nullopt, 2}, budget, hook);
    ExtractionOutcome out;
    out.stage = r.stage;
    if (r.sunflower)
        out.value = std::move(*r.sunflower);
    else
        out.value = std::move(r.tree);
    return out;
}

ExtractionOutcome extract_3cnf(const CnfFormula& f, std::uint64_t Z, std::uint64_t Q) {
    Budget b;
    return extract_3cnf(f, Param::of(Z), Param::of(Q), b);
}

ExtractionOutcome extract_kcnf(const CnfFormula& f, const std::vector<Param>& Q, Budget& budget) {
    if (Q.empty()) throw Error(ErrorKind::invalid_argument, "extract_kcnf needs k >= 2");
    const std::size_t k = Q.size() + 1;
    check_width(f, k);
    std::vector<std::optional<std::size_t>> filters;
    for (std::size_t a = 0; a + 1 < k; ++a) filters.push_back(k - a);
    Hook hook = [&](std::size_t stage, const Work& node) -> std::optional<Sunflower> {
        const std::string name = "Q_" + std::to_string(stage);
        if (stage == 0) {
            if (!param_at_most(Q[0], node.S.size(), name)) return std::nullopt;
            Sunflower sf;
            for (auto i : node.S) sf.petal_indices.push_back(node.cls[i].origin);
            return sf;
        }
        mpz_class prod = 1;
        for (std::size_t j = 0; j < stage; ++j) prod *= mpz_class((k - j) * node.path_sizes.at(j) + 1);
        mpz_class ratio = mpz_class(node.S.size()) / prod;
        if (!param_at_most(Q[stage], ratio, name)) return std::nullopt;
        std::map<std::vector<Literal>, std::vector<std::size_t>> groups;
        for (auto i : node.S) {
            auto key = node.cls[i].removed;
            std::sort(key.begin(), key.end());
            groups[key].push_back(node.cls[i].origin);
        }
        const std::vector<Literal>* best = nullptr;
        for (auto& [core, members] : groups) {
            if (!param_at_most(Q[stage], members.size(), name)) continue;
            if (!best || core.size() < best->size()) best = &core;
        }
        if (!best) throw Error(ErrorKind::invalid_argument, "pigeonhole failed in k-CNF extraction");
        return Sunflower{*best, groups[*best]};
    };
    auto r = run_engine(f, filters, budget, hook);
    ExtractionOutcome out;
    out.stage = r.stage;
    if (r.sunflower)
        out.value = std::move(*r.sunflower);
    else
        out.value = std::move(r.tree);
    return out;
}

ExtractionOutcome extract_kcnf(const CnfFormula& f, const std::vector<std::uint64_t>& Q) {
    std::vector<Param> ps;
    for (auto q : Q) ps.push_back(Param::of(q));
    Budget b;
    return extract_kcnf(f, ps, b);
}

DecompositionTree decompose_staged(const CnfFormula& f, const std::vector<std::optional<std::size_t>>& filters,
                                   Budget& budget) {
    return run_engine(f, filters, budget, nullptr).tree;
}

namespace {

struct Packing {
    std::vector<std::vector<std::uint32_t>> petals;  // variables per candidate
    std::vector<std::size_t> origin;
    std::vector<std::vector<char>> conflict;

    void build_conflicts() {
        const std::size_t m = petals.size();
        conflict.assign(m, std::vector<char>(m, 0));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                bool meet = std::any_of(petals[i].begin(), petals[i].end(), [&](std::uint32_t v) {
                    return std::binary_search(petals[j].begin(), petals[j].end(), v);
                });
                conflict[i][j] = conflict[j][i] = meet;
            }
    }

    // Branch and bound for a packing of size >= target (or maximum if target = SIZE_MAX).
    void search(std::vector<std::size_t>& cands, std::vector<std::size_t>& cur, std::vector<std::size_t>& best,
                std::size_t target) {
        if (best.size() >= target) return;
        if (cur.size() + cands.size() <= best.size()) return;
        if (cands.empty()) {
            best = cur;
            return;
        }
        std::size_t v = cands.front();
        std::vector<std::size_t> with;
        for (std::size_t i = 1; i < cands.size(); ++i)
            if (!conflict[v][cands[i]]) with.push_back(cands[i]);
        cur.push_back(v);
        search(with, cur, best, target);
        cur.pop_back();
        std::vector<std::size_t> without(cands.begin() + 1, cands.end());
        search(without, cur, best, target);
    }
};

std::optional<Packing> collect_petals(const CnfFormula& f, const std::vector<Literal>& core) {
    std::set<std::uint32_t> cv;
    for (Literal l : core)
        if (!cv.insert(l.var).second) return std::nullopt;
    Packing p;
    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
        const auto& c = f.clauses[i];
        if (!std::all_of(core.begin(), core.end(), [&](Literal l) { return c.contains(l); })) continue;
        std::vector<std::uint32_t> vs;
        for (Literal l : c.lits)
            if (std::find(core.begin(), core.end(), l) == core.end()) vs.push_back(l.var);
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        p.petals.push_back(std::move(vs));
        p.origin.push_back(i);
    }
    return p;
}

std::vector<std::size_t> greedy_packing(const Packing& p) {
    std::set<std::uint32_t> used;
    std::vector<std::size_t> m;
    for (std::size_t i = 0; i < p.petals.size(); ++i) {
        if (std::any_of(p.petals[i].begin(), p.petals[i].end(), [&](auto v) { return used.count(v) > 0; })) continue;
        used.insert(p.petals[i].begin(), p.petals[i].end());
        m.push_back(i);
    }
    return m;
}

// Each optimal petal either is the empty petal or meets a distinct variable of M.
std::size_t packing_upper_bound(const Packing& p, const std::vector<std::size_t>& m) {
    std::size_t vars = 0;
    bool empty = false;
    for (auto i : m) {
        vars += p.petals[i].size();
        if (p.petals[i].empty()) empty = true;
    }
    return vars + (empty ? 1 : 0);
}

std::vector<std::size_t> solve_packing(Packing& p, std::size_t target) {
    auto greedy = greedy_packing(p);
    if (greedy.size() >= target) return greedy;
    if (packing_upper_bound(p, greedy) < target && target != SIZE_MAX) return greedy;
    p.build_conflicts();
    std::vector<std::size_t> cands(p.petals.size());
    for (std::size_t i = 0; i < cands.size(); ++i) cands[i] = i;
    std::vector<std::size_t> cur, best = greedy;
    p.search(cands, cur, best, target);
#ifndef NDEBUG
    if (best.size() > packing_upper_bound(p, greedy))
        throw Error(ErrorKind::invalid_argument, "set packing exceeded the greedy sandwich bound");
#endif
    return best;
}

}  // namespace

std::optional<Sunflower> find_sunflower_with_core(const CnfFormula& f, const std::vector<Literal>& core,
                                                  std::size_t Q) {
    auto p = collect_petals(f, core);
    if (!p) return std::nullopt;
    auto chosen = solve_packing(*p, Q);
    if (chosen.size() < Q) return std::nullopt;
    Sunflower sf;
    sf.core = core;
    std::sort(sf.core.begin(), sf.core.end());
    for (auto i : chosen) sf.petal_indices.push_back(p->origin[i]);
    std::sort(sf.petal_indices.begin(), sf.petal_indices.end());
    return sf;
}

std::optional<Sunflower> find_sunflower_with_core(const CnfFormula& f, const std::vector<Literal>& core,
                                                  const Param& Q, const std::string& what) {
    auto p = collect_petals(f, core);
    if (!p) return std::nullopt;
    if (Q.value > p->petals.size()) return std::nullopt;
    if (Q.exact) return find_sunflower_with_core(f, core, Q.value.get_ui());
    auto best = max_sunflower_size(f, core);
    if (!param_at_most(Q, best, what)) return std::nullopt;
    return std::nullopt;  // unreachable: param_at_most throws when undecided
}

std::size_t max_sunflower_size(const CnfFormula& f, const std::vector<Literal>& core) {
    auto p = collect_petals(f, core);
    if (!p) return 0;
    return solve_packing(*p, SIZE_MAX).size();
}

}  // namespace thrsat
