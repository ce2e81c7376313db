#include "thrsat/inference.hpp"

#include "thrsat/arithmetic.hpp"
#include "thrsat/sat.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace thrsat {

ClausePartition partition_clauses(const CnfFormula& f) {
    ClausePartition p;
    if (f.roles.size() != f.num_vars) throw Error(ErrorKind::role_missing, "every variable needs a role (e or p)");
    for (std::uint32_t v = 1; v <= f.num_vars; ++v) {
        Role r = f.role(v);
        if (r == Role::plain) throw Error(ErrorKind::role_missing, "variable " + std::to_string(v) + " has no role");
        (r == Role::existential ? p.x_vars : p.y_vars).push_back(v);
    }
    for (CnfFormula* g : {&p.px, &p.py, &p.pxy}) {
        g->num_vars = f.num_vars;
        g->roles = f.roles;
    }
    for (const auto& c : f.clauses) {
        if (c.width() > 2) throw Error(ErrorKind::width, "clause " + clause_str(c) + " exceeds width 2");
        std::size_t nx = 0;
        for (Literal l : c.lits) nx += f.role(l.var) == Role::existential;
        if (c.empty())
            p.py.clauses.push_back(c);
        else if (nx == c.width())
            p.px.clauses.push_back(c);
        else if (nx == 0)
            p.py.clauses.push_back(c);
        else {
            // Keep the existential literal first.
            Clause m = c;
            if (f.role(m.lits[0].var) != Role::existential) std::swap(m.lits[0], m.lits[1]);
            p.pxy.clauses.push_back(m);
        }
    }
    return p;
}

mpz_class count_tree_with_units(const DecompositionTree& t, const std::vector<Literal>& units,
                                std::uint32_t free_vars) {
    mpz_class total = 0;
    std::vector<Literal> path;
    for_each_leaf(t.root, path, [&](const Leaf& leaf, const std::vector<Literal>& assigned) {
        if (leaf.bottom) return;
        std::vector<Literal> extra = leaf.units;
        for (Literal u : units) {
            auto it = std::find_if(assigned.begin(), assigned.end(), [&](Literal a) { return a.var == u.var; });
            if (it == assigned.end())
                extra.push_back(u);
            else if (*it != u)
                return;  // contradicts the path
        }
        total += count_units(extra, false, free_vars - leaf.fixed_vars).value;
    });
    return total;
}

namespace {

// Consistent subsets of `cands` of size <= t, by size then lexicographically.
void for_each_lstar(const std::vector<Literal>& cands, std::uint64_t t, Budget& budget,
                    const std::function<bool(const std::vector<Literal>&)>& fn) {
    std::vector<Literal> cur;
    bool stop = false;
    for (std::uint64_t size = 0; size <= t && size <= cands.size() && !stop; ++size) {
        std::function<void(std::size_t)> rec = [&](std::size_t from) {
            if (stop) return;
            if (cur.size() == size) {
                budget.charge(1, "implied-literal candidates");
                if (fn(cur)) stop = true;
                return;
            }
            for (std::size_t i = from; i < cands.size() && !stop; ++i) {
                if (std::any_of(cur.begin(), cur.end(), [&](Literal l) { return l.var == cands[i].var; })) continue;
                cur.push_back(cands[i]);
                rec(i + 1);
                cur.pop_back();
            }
        };
        rec(0);
    }
}

struct LStarConstraints {
    std::vector<Literal> forced;                // x-literals that must be true
    std::vector<std::vector<Literal>> support;  // per L* literal: x-literals of its clauses
};

LStarConstraints constraints_for(const ClausePartition& p, const std::vector<Literal>& lstar) {
    LStarConstraints c;
    c.support.resize(lstar.size());
    for (const auto& cl : p.pxy.clauses) {
        Literal lx = cl.lits[0], ly = cl.lits[1];
        auto it = std::find(lstar.begin(), lstar.end(), ly);
        if (it == lstar.end())
            c.forced.push_back(lx);
        else
            c.support[it - lstar.begin()].push_back(lx);
    }
    return c;
}

std::vector<Literal> pxy_y_literals(const ClausePartition& p) {
    std::set<Literal> s;
    for (const auto& c : p.pxy.clauses) s.insert(c.lits[1]);
    return {s.begin(), s.end()};
}

Verdict disjoint_no(const CnfFormula& side, const DisjointSet& S, const Threshold& th, const std::string& tag) {
    Verdict v;
    v.yes = false;
    v.branch_tag = tag;
    v.certificate.kind = CertificateKind::no_witness;
    mpq_class b = 1;
    std::vector<std::size_t> idx;
    for (auto i : S.clause_indices) {
        b *= 1 - mpq_class(1, pow2(side.clauses[i].width()));
        idx.push_back(i);
        if (b < th.value()) break;
    }
    // Indices refer to the side formula's clause list.
    v.certificate.witness = NoWitness{"disjoint-set", idx, b};
    return v;
}

}  // namespace

Verdict decide_emaj2sat(const CnfFormula& input, const Threshold& rho, Budget& budget) {
    CnfFormula f = normalize(input);
    ClausePartition p = partition_clauses(f);
    const std::uint32_t ny = static_cast<std::uint32_t>(p.y_vars.size());
    const std::uint64_t cr = c_alpha(rho), t = floor_log2_inv(rho);
    std::vector<std::pair<std::string, std::string>> params{{"c_rho", std::to_string(cr)},
                                                           {"lstar_max", std::to_string(t)}};
    auto finish = [&](Verdict v) {
        v.params_used = params;
        v.leaves_expanded = budget.leaves_expanded;
        return v;
    };
    if (f.has_empty_clause()) {
        Verdict v;
        v.branch_tag = "early-no-empty-clause";
        v.certificate.kind = CertificateKind::ledger;
        return finish(v);
    }
    DisjointSet Sy = maximal_disjoint_set(p.py);
    if (Sy.size() > cr) return finish(disjoint_no(p.py, Sy, rho, "early-no-disjoint-y-clauses"));
    DecompositionTree Ty = decompose_staged(p.py, {std::nullopt}, budget);
    std::optional<Verdict> found;
    for_each_lstar(pxy_y_literals(p), t, budget, [&](const std::vector<Literal>& lstar) {
        // Check (b): the inner count given exactly these implied literals.
        mpz_class Ny = count_tree_with_units(Ty, lstar, ny);
        if (compare_count_to_threshold(Ny, rho, ny) == Ordering::LT) return false;
        // Check (a): some x-assignment satisfies P_x and implies exactly L*.
        LStarConstraints c = constraints_for(p, lstar);
        for (const auto& s : c.support)
            if (s.empty()) return false;
        std::vector<std::size_t> pick(c.support.size(), 0);
        for (;;) {
            CnfFormula g = p.px;
            for (Literal l : c.forced) g.clauses.push_back(Clause(std::vector<Literal>{l}));
            for (std::size_t i = 0; i < pick.size(); ++i) g.clauses.push_back(Clause(std::vector<Literal>{~c.support[i][pick[i]]}));
            budget.charge(1, "2-SAT checks");
            if (auto model = two_sat_solve(g)) {
                Verdict v;
                v.yes = true;
                v.branch_tag = "lstar-found";
                v.certificate.kind = CertificateKind::exact_count;
                v.certificate.count = ExactCount{Ny, std::nullopt};
                for (auto x : p.x_vars) v.certificate.hitting_set.emplace_back(x, (*model)[x - 1]);
                found = v;
                return true;
            }
            std::size_t i = 0;
            while (i < pick.size() && ++pick[i] == c.support[i].size()) pick[i++] = 0;
            if (i == pick.size()) return false;
        }
    });
    if (found) return finish(*found);
    Verdict v;
    v.yes = false;
    v.branch_tag = "no-lstar";
    v.certificate.kind = CertificateKind::ledger;
    return finish(v);
}

Verdict decide_emaj2sat(const CnfFormula& f, const Threshold& rho) {
    Budget b;
    return decide_emaj2sat(f, rho, b);
}

Verdict decide_majmaj2sat(const CnfFormula& input, const Threshold& rho, const Threshold& sigma, Budget& budget) {
    CnfFormula f = normalize(input);
    ClausePartition p = partition_clauses(f);
    const std::uint32_t nx = static_cast<std::uint32_t>(p.x_vars.size());
    const std::uint32_t ny = static_cast<std::uint32_t>(p.y_vars.size());
    const std::uint64_t cr = c_alpha(rho), cs = c_alpha(sigma), t = floor_log2_inv(sigma);
    std::vector<std::pair<std::string, std::string>> params{
        {"c_rho", std::to_string(cr)}, {"c_sigma", std::to_string(cs)}, {"lstar_max", std::to_string(t)}};
    auto finish = [&](Verdict v) {
        v.params_used = params;
        v.leaves_expanded = budget.leaves_expanded;
        return v;
    };
    if (f.has_empty_clause()) {
        Verdict v;
        v.branch_tag = "early-no-empty-clause";
        v.certificate.kind = CertificateKind::ledger;
        v.good_count = 0;
        return finish(v);
    }
    DisjointSet Sx = maximal_disjoint_set(p.px);
    if (Sx.size() > cr) return finish(disjoint_no(p.px, Sx, rho, "early-no-disjoint-x-clauses"));
    DisjointSet Sy = maximal_disjoint_set(p.py);
    if (Sy.size() > cs) return finish(disjoint_no(p.py, Sy, sigma, "early-no-disjoint-y-clauses"));
    DecompositionTree Tx = decompose_staged(p.px, {std::nullopt}, budget);
    DecompositionTree Ty = decompose_staged(p.py, {std::nullopt}, budget);
    mpz_class good = 0;
    for_each_lstar(pxy_y_literals(p), t, budget, [&](const std::vector<Literal>& lstar) {
        mpz_class Ny = count_tree_with_units(Ty, lstar, ny);
        if (compare_count_to_threshold(Ny, sigma, ny) == Ordering::LT) return false;
        LStarConstraints c = constraints_for(p, lstar);
        // Inclusion-exclusion over the long clauses (OR of negated supports).
        const std::size_t L = c.support.size();
        mpz_class Nx = 0;
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << L); ++mask) {
            std::vector<Literal> units = c.forced;
            int sign = 1;
            for (std::size_t i = 0; i < L; ++i)
                if ((mask >> i) & 1) {
                    sign = -sign;
                    units.insert(units.end(), c.support[i].begin(), c.support[i].end());
                }
            mpz_class term = count_tree_with_units(Tx, units, nx);
            Nx += sign > 0 ? term : mpz_class(-term);
        }
        good += Nx;
        return false;
    });
    Verdict v;
    v.yes = compare_count_to_threshold(good, rho, nx) != Ordering::LT;
    v.branch_tag = "lstar-sum";
    v.certificate.kind = CertificateKind::exact_count;
    v.certificate.count = ExactCount{good, std::nullopt};
    v.good_count = good;
    return finish(v);
}

Verdict decide_majmaj2sat(const CnfFormula& f, const Threshold& rho, const Threshold& sigma) {
    Budget b;
    return decide_majmaj2sat(f, rho, sigma, b);
}

Verdict decide_maj2sat_long_clauses(const CnfFormula& f2_in, const std::vector<Clause>& longs, const Threshold& rho,
                                    Budget& budget, unsigned c) {
    CnfFormula f2 = normalize(f2_in);
    for (const auto& l : longs)
        for (Literal x : l.lits) f2.num_vars = std::max(f2.num_vars, x.var);
    for (const auto& cl : f2.clauses)
        if (cl.width() > 2) throw Error(ErrorKind::width, "clause " + clause_str(cl) + " exceeds width 2");
    const std::uint32_t n = f2.num_vars;
    // |longs| <= c log2(n + 2)  <=>  2^{|longs|} <= (n + 2)^c.
    mpz_class lhs = pow2(longs.size()), rhs;
    mpz_pow_ui(rhs.get_mpz_t(), mpz_class(n + 2).get_mpz_t(), c);
    if (lhs > rhs)
        throw Error(ErrorKind::too_many_long_clauses,
                    std::to_string(longs.size()) + " long clauses exceed " + std::to_string(c) + "*log2(n+2)");
    Verdict v = decide_thr2sat(f2, rho, budget);
    v.params_used.emplace_back("long_clauses", std::to_string(longs.size()));
    if (v.branch_tag != "exact-count") return v;
    const DecompositionTree& T = *v.certificate.tree;
    mpz_class total = 0;
    const std::size_t L = longs.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << L); ++mask) {
        std::vector<Literal> units;
        int sign = 1;
        for (std::size_t i = 0; i < L; ++i)
            if ((mask >> i) & 1) {
                sign = -sign;
                for (Literal x : longs[i].lits) units.push_back(~x);
            }
        budget.charge(1, "inclusion-exclusion terms");
        mpz_class term = count_tree_with_units(T, units, n);
        total += sign > 0 ? term : mpz_class(-term);
    }
    v.yes = compare_count_to_threshold(total, rho, n) != Ordering::LT;
    v.branch_tag = "inclusion-exclusion-count";
    v.certificate.count = ExactCount{total, std::nullopt};
    v.leaves_expanded = budget.leaves_expanded;
    return v;
}

Verdict decide_maj2sat_long_clauses(const CnfFormula& f2, const std::vector<Clause>& longs, const Threshold& rho) {
    Budget b;
    return decide_maj2sat_long_clauses(f2, longs, rho, b);
}

}  // namespace thrsat
