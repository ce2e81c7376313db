#include "thrsat/sat.hpp"

#include <algorithm>

namespace thrsat {

bool satisfies(const CnfFormula& f, const std::vector<bool>& model) {
    for (const auto& c : f.clauses) {
        bool ok = std::any_of(c.lits.begin(), c.lits.end(),
                              [&](Literal l) { return model.at(l.var - 1) == l.positive; });
        if (!ok) return false;
    }
    return true;
}

std::optional<std::vector<bool>> two_sat_solve(const CnfFormula& f) {
    const std::uint32_t n = f.num_vars;
    const std::uint32_t N = 2 * n + 2;  // node = literal code
    std::vector<std::vector<std::uint32_t>> g(N);
    for (const auto& c : f.clauses) {
        if (c.width() > 2) throw Error(ErrorKind::width, "2-SAT needs width <= 2");
        if (c.empty()) return std::nullopt;
        Literal a = c.lits[0], b = c.width() == 2 ? c.lits[1] : c.lits[0];
        g[(~a).code()].push_back(b.code());
        g[(~b).code()].push_back(a.code());
    }
    // Iterative Tarjan; components come out in reverse topological order.
    std::vector<std::int64_t> index(N, -1), low(N, 0), comp(N, -1);
    std::vector<char> on(N, 0);
    std::vector<std::uint32_t> st;
    std::int64_t counter = 0, ncomp = 0;
    std::vector<std::pair<std::uint32_t, std::size_t>> call;
    for (std::uint32_t s = 2; s < N; ++s) {
        if (index[s] >= 0) continue;
        call.emplace_back(s, 0);
        index[s] = low[s] = counter++;
        st.push_back(s);
        on[s] = 1;
        while (!call.empty()) {
            auto& [v, i] = call.back();
            if (i < g[v].size()) {
                std::uint32_t w = g[v][i++];
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    st.push_back(w);
                    on[w] = 1;
                    call.emplace_back(w, 0);
                } else if (on[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                std::uint32_t w;
                do {
                    w = st.back();
                    st.pop_back();
                    on[w] = 0;
                    comp[w] = ncomp;
                } while (w != v);
                ++ncomp;
            }
            std::uint32_t done = v;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
        }
    }
    std::vector<bool> model(n, false);
    for (std::uint32_t v = 1; v <= n; ++v) {
        std::uint32_t p = 2 * v, q = 2 * v + 1;
        if (comp[p] == comp[q]) return std::nullopt;
        // Tarjan numbers sinks first: pick the literal whose component is earlier.
        model[v - 1] = comp[p] < comp[q];
    }
    return model;
}

bool two_sat_satisfiable(const CnfFormula& f) { return two_sat_solve(f).has_value(); }

namespace {

struct Dpll {
    const CnfFormula& f;
    Budget& budget;
    std::vector<std::int8_t> val;
    std::vector<std::uint32_t> trail;

    // Returns false on conflict.
    bool propagate() {
        for (bool changed = true; changed;) {
            changed = false;
            for (const auto& c : f.clauses) {
                std::size_t open = 0;
                Literal last;
                bool sat = false;
                for (Literal l : c.lits) {
                    std::int8_t x = val[l.var];
                    if (x < 0) {
                        ++open;
                        last = l;
                    } else if ((x == 1) == l.positive) {
                        sat = true;
                        break;
                    }
                }
                if (sat) continue;
                if (open == 0) return false;
                if (open == 1) {
                    val[last.var] = last.positive ? 1 : 0;
                    trail.push_back(last.var);
                    changed = true;
                }
            }
        }
        return true;
    }

    void undo(std::size_t mark) {
        while (trail.size() > mark) {
            val[trail.back()] = -1;
            trail.pop_back();
        }
    }

    bool solve() {
        if (!propagate()) return false;
        // Branch on the first literal of the first open clause.
        for (const auto& c : f.clauses) {
            bool sat = false;
            std::optional<Literal> pick;
            for (Literal l : c.lits) {
                std::int8_t x = val[l.var];
                if (x < 0) {
                    if (!pick) pick = l;
                } else if ((x == 1) == l.positive) {
                    sat = true;
                    break;
                }
            }
            if (sat || !pick) continue;
            budget.charge(1, "satisfiability search");
            for (bool phase : {pick->positive, !pick->positive}) {
                std::size_t mark = trail.size();
                val[pick->var] = phase ? 1 : 0;
                trail.push_back(pick->var);
                if (solve()) return true;
                undo(mark);
            }
            return false;
        }
        return true;
    }
};

}  // namespace

std::optional<std::vector<bool>> dpll_solve(const CnfFormula& f, Budget& budget) {
    Dpll d{f, budget, std::vector<std::int8_t>(f.num_vars + 1, -1), {}};
    if (!d.solve()) return std::nullopt;
    std::vector<bool> model(f.num_vars);
    for (std::uint32_t v = 1; v <= f.num_vars; ++v) model[v - 1] = d.val[v] == 1;
    return model;
}

bool dpll_satisfiable(const CnfFormula& f, Budget& budget) { return dpll_solve(f, budget).has_value(); }

}  // namespace thrsat
