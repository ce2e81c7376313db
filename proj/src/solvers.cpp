#include "thrsat/solvers.hpp"

#include "thrsat/arithmetic.hpp"
#include "thrsat/oracle.hpp"
#include "thrsat/sat.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace thrsat {

const char* certificate_kind_name(CertificateKind k) {
    switch (k) {
        case CertificateKind::exact_count: return "exact-count";
        case CertificateKind::no_witness: return "no-witness";
        case CertificateKind::hitting_set: return "hitting-set";
        case CertificateKind::ledger: return "ledger";
    }
    return "?";
}

namespace {

mpq_class clause_fraction(std::size_t w) { return 1 - mpq_class(1, pow2(w)); }

void require_width(const CnfFormula& f, std::size_t k) {
    for (const auto& c : f.clauses)
        if (c.width() > k)
            throw Error(ErrorKind::width, "clause " + clause_str(c) + " exceeds width " + std::to_string(k));
}

std::optional<std::size_t> empty_clause_index(const CnfFormula& f) {
    for (std::size_t i = 0; i < f.clauses.size(); ++i)
        if (f.clauses[i].empty()) return i;
    return std::nullopt;
}

Verdict empty_clause_no(const CnfFormula& f, std::size_t idx) {
    Verdict v;
    v.yes = false;
    v.branch_tag = "early-no-empty-clause";
    v.certificate.kind = CertificateKind::no_witness;
    v.certificate.witness = NoWitness{"disjoint-set", {idx}, mpq_class(0)};
    (void)f;
    return v;
}

// Shortest prefix of a variable-disjoint clause list whose product of clause
// fractions drops below rho.
std::optional<NoWitness> disjoint_prefix_witness(const CnfFormula& f, const std::vector<std::size_t>& set,
                                                 const mpq_class& rho) {
    mpq_class b = 1;
    std::vector<std::size_t> idx;
    for (auto i : set) {
        idx.push_back(i);
        b *= clause_fraction(f.clauses[i].width());
        if (b < rho) return NoWitness{"disjoint-set", idx, b};
    }
    return std::nullopt;
}

Verdict count_verdict(DecompositionTree tree, const Threshold& rho, std::uint32_t n_total, std::uint32_t n_free,
                      const std::string& tag) {
    Verdict v;
    ExactCount N = count_tree(tree, n_free);
    v.yes = compare_count_to_threshold(N, rho, n_total) != Ordering::LT;
    v.branch_tag = tag;
    v.certificate.kind = CertificateKind::exact_count;
    v.certificate.count = N;
    v.certificate.tree = std::make_shared<DecompositionTree>(std::move(tree));
    return v;
}

// A clause of F restricted by a partial assignment, remembering its source.
struct Residual {
    std::vector<Literal> lits;
    std::size_t origin;
    std::vector<Literal> removed;
};

std::vector<Residual> restrict_formula(const CnfFormula& f, const std::vector<Literal>& true_lits) {
    std::vector<std::int8_t> val(f.num_vars + 1, -1);
    for (Literal l : true_lits) val[l.var] = l.positive ? 1 : 0;
    std::vector<Residual> out;
    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
        Residual r{{}, i, {}};
        bool sat = false;
        for (Literal l : f.clauses[i].lits) {
            std::int8_t x = val[l.var];
            if (x < 0)
                r.lits.push_back(l);
            else if ((x == 1) == l.positive) {
                sat = true;
                break;
            } else
                r.removed.push_back(l);
        }
        if (!sat) out.push_back(std::move(r));
    }
    return out;
}

// Greedy maximal disjoint set among residual clauses of exactly `width`.
std::vector<std::size_t> residual_disjoint(const std::vector<Residual>& rs, std::size_t width, std::uint32_t n) {
    std::vector<char> used(n + 1, 0);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const auto& c = rs[i].lits;
        if (c.size() != width) continue;
        if (std::any_of(c.begin(), c.end(), [&](Literal l) { return used[l.var]; })) continue;
        for (Literal l : c) used[l.var] = 1;
        out.push_back(i);
    }
    return out;
}

std::vector<Clause> clauses_at(const CnfFormula& f, const std::vector<std::size_t>& idx) {
    std::vector<Clause> out;
    for (auto i : idx) out.push_back(f.clauses[i]);
    return out;
}

}  // namespace

// ---- Witness verification ----------------------------------------------------

mpq_class witness_fraction(const CnfFormula& normalized, const NoWitness& w) {
    std::vector<Clause> cs;
    for (auto i : w.clause_indices) cs.push_back(normalized.clauses.at(i));
    for (const auto& c : cs)
        if (c.empty()) return 0;
    // Union-find over variables of the witness.
    std::map<std::uint32_t, std::uint32_t> parent;
    std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
        auto it = parent.find(x);
        if (it == parent.end()) {
            parent[x] = x;
            return x;
        }
        if (it->second == x) return x;
        return it->second = find(it->second);
    };
    for (const auto& c : cs)
        for (Literal l : c.lits) parent[find(l.var)] = find(c.lits[0].var);
    std::map<std::uint32_t, std::vector<std::size_t>> comp;
    for (std::size_t i = 0; i < cs.size(); ++i) comp[find(cs[i].lits[0].var)].push_back(i);
    mpq_class frac = 1;
    for (const auto& [root, members] : comp) {
        std::map<std::uint32_t, std::uint32_t> remap;
        for (auto i : members)
            for (Literal l : cs[i].lits) remap.emplace(l.var, 0);
        std::uint32_t next = 0;
        for (auto& [v, id] : remap) id = ++next;
        if (next > kBruteMaxVars) throw Error(ErrorKind::too_large, "witness component has too many variables");
        CnfFormula sub;
        sub.num_vars = next;
        for (auto i : members) {
            Clause c;
            for (Literal l : cs[i].lits) c.lits.emplace_back(remap[l.var], l.positive);
            sub.clauses.push_back(std::move(c));
        }
        mpq_class part(brute_count(sub).value, pow2(next));
        part.canonicalize();
        frac *= part;
        (void)root;
    }
    return frac;
}

bool verify_no_witness(const CnfFormula& normalized, const NoWitness& w, const Threshold& rho) {
    mpq_class frac = witness_fraction(normalized, w);
    return frac <= w.bound && w.bound < rho.value();
}

// ---- 2-CNF ---------------------------------------------------------------------

Verdict decide_thr2sat(const CnfFormula& input, const Threshold& alpha, Budget& budget) {
    CnfFormula f = normalize(input);
    require_width(f, 2);
    const std::uint64_t c = c_alpha(alpha);
    std::vector<std::pair<std::string, std::string>> params{{"c_alpha", std::to_string(c)}};
    Verdict v;
    if (auto e = empty_clause_index(f)) {
        v = empty_clause_no(f, *e);
    } else {
        DisjointSet S = maximal_disjoint_set(f);
        if (S.size() > c) {
            v.yes = false;
            v.branch_tag = "early-no-disjoint-2clauses";
            v.certificate.kind = CertificateKind::no_witness;
            v.certificate.witness = disjoint_prefix_witness(f, S.clause_indices, alpha.value());
            if (!v.certificate.witness) throw Error(ErrorKind::invalid_argument, "disjoint-set bound failed");
        } else {
            v = count_verdict(decompose_staged(f, {std::nullopt}, budget), alpha, f.num_vars, f.num_vars,
                              "exact-count");
        }
    }
    v.params_used = params;
    v.leaves_expanded = budget.leaves_expanded;
    return v;
}

Verdict decide_thr2sat(const CnfFormula& f, const Threshold& alpha) {
    Budget b;
    return decide_thr2sat(f, alpha, b);
}

// ---- MAJ-3SAT ------------------------------------------------------------------

namespace {

std::optional<Literal> common_literal(const CnfFormula& f) {
    if (f.clauses.empty()) return std::nullopt;
    std::vector<Literal> common = f.clauses[0].lits;
    for (const auto& c : f.clauses) {
        std::vector<Literal> keep;
        for (Literal l : common)
            if (c.contains(l)) keep.push_back(l);
        common = std::move(keep);
        if (common.empty()) return std::nullopt;
    }
    return *std::min_element(common.begin(), common.end());
}

}  // namespace

Verdict decide_maj3sat(const CnfFormula& input, Budget& budget) {
    CnfFormula f = normalize(input);
    require_width(f, 3);
    const Threshold half = Threshold::from_fraction(1, 2);
    const std::vector<std::pair<std::string, std::string>> params{
        {"b", "6"}, {"branch_threshold", "48|S|+2"}, {"petal_t", "8"}};
    auto finish = [&](Verdict v) {
        v.params_used = params;
        v.leaves_expanded = budget.leaves_expanded;
        return v;
    };
    if (auto e = empty_clause_index(f)) return finish(empty_clause_no(f, *e));
    if (auto l = common_literal(f)) {
        Verdict v;
        v.yes = true;
        v.branch_tag = "early-yes-common-literal";
        v.certificate.kind = CertificateKind::hitting_set;
        v.certificate.hitting_set = {*l};
        return finish(v);
    }
    DisjointSet S = maximal_disjoint_set(f, 3);
    if (S.size() >= 6) {
        Verdict v;
        v.yes = false;
        v.branch_tag = "early-no-disjoint-3clauses";
        v.certificate.kind = CertificateKind::no_witness;
        std::vector<std::size_t> six(S.clause_indices.begin(), S.clause_indices.begin() + 6);
        v.certificate.witness = NoWitness{"disjoint-set", six, pow_q(mpq_class(7, 8), 6)};
        return finish(v);
    }
    const std::size_t threshold = 48 * S.size() + 2;
    auto S_clauses = clauses_at(f, S.clause_indices);
    budget.charge(satisfying_assignment_count(S_clauses), "assignments of the disjoint 3-clause set");
    std::optional<Verdict> early;
    for_each_satisfying_assignment(S_clauses, [&](const std::vector<Literal>& A) {
        if (early) return;
        auto rs = restrict_formula(f, A);
        auto SA = residual_disjoint(rs, 2, f.num_vars);
        if (SA.size() < threshold) return;
        std::vector<std::size_t> originals;
        std::map<Literal, std::vector<std::size_t>> pulled;
        for (auto i : SA) {
            if (rs[i].removed.empty())
                originals.push_back(rs[i].origin);
            else
                pulled[rs[i].removed[0]].push_back(rs[i].origin);
        }
        Verdict v;
        v.yes = false;
        v.certificate.kind = CertificateKind::no_witness;
        if (originals.size() >= 3) {
            v.branch_tag = "early-no-three-2clauses";
            std::vector<std::size_t> w(originals.begin(), originals.begin() + 3);
            v.certificate.witness = NoWitness{"two-clause-set", w, mpq_class(27, 64)};
            early = v;
            return;
        }
        for (auto& [lit, members] : pulled) {
            if (members.size() < 8) continue;
            std::vector<std::size_t> w(members.begin(), members.begin() + 8);
            for (std::size_t i = 0; i < f.clauses.size(); ++i)
                if (!f.clauses[i].contains(lit)) {
                    w.push_back(i);
                    break;
                }
            std::sort(w.begin(), w.end());
            v.branch_tag = "early-no-petal-pattern";
            mpq_class bound = (pow_q(mpq_class(3, 4), 8) + mpq_class(7, 8)) / 2;
            v.certificate.witness = NoWitness{"literal-petal-pattern", w, bound};
            early = v;
            return;
        }
        // Neither pattern applies (only possible when S is empty): count instead.
    });
    if (early) return finish(*early);
    return finish(count_verdict(decompose_staged(f, {3, 2}, budget), half, f.num_vars, f.num_vars, "exact-count"));
}

Verdict decide_maj3sat(const CnfFormula& f) {
    Budget b;
    return decide_maj3sat(f, b);
}

// ---- Thresholds above one half ----------------------------------------------

Verdict decide_thr3sat_above_half(const CnfFormula& input, const Threshold& rho, Budget& budget) {
    const mpq_class r = rho.value();
    if (r <= mpq_class(1, 2)) throw Error(ErrorKind::invalid_argument, "threshold must exceed 1/2");
    CnfFormula f = normalize(input);
    require_width(f, 3);
    const mpz_class c2 = c2_constant(r - mpq_class(1, 2));
    const std::vector<std::pair<std::string, std::string>> params{{"c1", "10"}, {"c2", c2.get_str()}};
    auto finish = [&](Verdict v) {
        v.params_used = params;
        v.leaves_expanded = budget.leaves_expanded;
        return v;
    };
    if (auto e = empty_clause_index(f)) return finish(empty_clause_no(f, *e));
    DisjointSet S = maximal_disjoint_set(f);
    if (S.size() > 10) {
        Verdict v;
        v.yes = false;
        v.branch_tag = "early-no-disjoint-set";
        v.certificate.kind = CertificateKind::no_witness;
        v.certificate.witness = disjoint_prefix_witness(f, S.clause_indices, r);
        if (!v.certificate.witness) throw Error(ErrorKind::invalid_argument, "disjoint-set bound failed");
        return finish(v);
    }
    auto S_clauses = clauses_at(f, S.clause_indices);
    budget.charge(satisfying_assignment_count(S_clauses), "assignments of the disjoint set");
    std::optional<Verdict> early;
    for_each_satisfying_assignment(S_clauses, [&](const std::vector<Literal>& A) {
        if (early) return;
        auto rs = restrict_formula(f, A);
        auto SA = residual_disjoint(rs, 2, f.num_vars);
        if (SA.size() < c2) return;
        // Group the pulled-back clauses by the literal A falsified; original
        // 2-clauses form their own group.
        std::vector<std::size_t> originals;
        std::map<Literal, std::vector<std::size_t>> pulled;
        for (auto i : SA) {
            if (rs[i].removed.empty())
                originals.push_back(rs[i].origin);
            else
                pulled[rs[i].removed[0]].push_back(rs[i].origin);
        }
        std::optional<NoWitness> w;
        std::size_t best = originals.size();
        if (!originals.empty()) w = NoWitness{"two-clause-set", originals, pow_q(mpq_class(3, 4), best)};
        for (auto& [lit, members] : pulled) {
            if (members.size() <= best) continue;
            best = members.size();
            mpq_class bound = (1 + pow_q(mpq_class(3, 4), best)) / 2;
            w = NoWitness{"sunflower", members, bound};
        }
        if (!w || w->bound >= r) {
            if (S.size() < 6) throw Error(ErrorKind::invalid_argument, "no witness for a large 2-clause set");
            w = NoWitness{"disjoint-set",
                          std::vector<std::size_t>(S.clause_indices.begin(), S.clause_indices.begin() + 6),
                          pow_q(mpq_class(7, 8), 6)};
        }
        std::sort(w->clause_indices.begin(), w->clause_indices.end());
        Verdict v;
        v.yes = false;
        v.branch_tag = "early-no-large-2clause-set";
        v.certificate.kind = CertificateKind::no_witness;
        v.certificate.witness = w;
        early = v;
    });
    if (early) return finish(*early);
    return finish(count_verdict(decompose_staged(f, {std::nullopt, 2}, budget), rho, f.num_vars, f.num_vars,
                                "exact-count"));
}

Verdict decide_thr3sat_above_half(const CnfFormula& f, const Threshold& rho) {
    Budget b;
    return decide_thr3sat_above_half(f, rho, b);
}

// ---- General thresholds, 3-CNF ---------------------------------------------------

Verdict decide_thr3sat(const CnfFormula& input, const Threshold& rho, Budget& budget, const ScheduleOverride& ov) {
    const CnfFormula phi = normalize(input);
    require_width(phi, 3);
    const std::uint32_t n = phi.num_vars;
    if (auto e = empty_clause_index(phi)) {
        Verdict v = empty_clause_no(phi, *e);
        v.leaves_expanded = budget.leaves_expanded;
        return v;
    }
    Schedule3 sched(rho, ov);
    SunflowerLedger ledger;
    CnfFormula F = phi;
    std::vector<Literal> asserted;
    auto finish = [&](Verdict v) {
        v.params_used = sched.describe();
        v.leaves_expanded = budget.leaves_expanded;
        ledger.psi.num_vars = n;
        v.ledger = ledger;
        return v;
    };
    for (std::uint64_t r = 0; r <= sched.t(); ++r) {
        ExtractionOutcome out = extract_3cnf(F, Param::of(sched.z()), sched.q(r), budget);
        if (!out.is_sunflower()) {
            Verdict v = count_verdict(std::move(std::get<DecompositionTree>(out.value)), rho, n,
                                      n - static_cast<std::uint32_t>(r), "case3-exact-count");
            v.certificate.hitting_set = asserted;
            return finish(v);
        }
        const Sunflower& sf = out.sunflower();
        if (sf.weight() == 0) {
            Verdict v;
            v.yes = false;
            v.branch_tag = "case1-large-0-sunflower";
            if (r == 0) {
                mpq_class b = 1;
                for (auto i : sf.petal_indices) b *= clause_fraction(F.clauses[i].width());
                auto idx = sf.petal_indices;
                std::sort(idx.begin(), idx.end());
                v.certificate.kind = CertificateKind::no_witness;
                v.certificate.witness = NoWitness{"disjoint-set", idx, b};
                if (b >= rho.value()) v.certificate.kind = CertificateKind::ledger;  // only under overrides
                if (b >= rho.value()) v.certificate.witness.reset();
            } else {
                v.certificate.kind = CertificateKind::ledger;
            }
            v.certificate.hitting_set = asserted;
            return finish(v);
        }
        const Literal l = sf.core[0];
        ledger.entries.push_back(SunflowerLedgerEntry{sf.core, sf.size(), {r}});
        ledger.psi.clauses.push_back(Clause(sf.core));
        asserted.push_back(l);
        F = normalize(condition(F, {l}));
        ledger.r = {r + 1};
        if (F.clauses.empty() && r + 1 <= sched.t()) {
            Verdict v;
            v.yes = true;
            v.branch_tag = "case2-hitting-set";
            v.certificate.kind = CertificateKind::hitting_set;
            v.certificate.hitting_set = asserted;
            return finish(v);
        }
    }
    Verdict v;
    v.yes = false;
    v.branch_tag = "case4-many-1-sunflowers";
    v.certificate.kind = CertificateKind::ledger;
    v.certificate.hitting_set = asserted;
    return finish(v);
}

Verdict decide_thr3sat(const CnfFormula& f, const Threshold& rho) {
    Budget b;
    return decide_thr3sat(f, rho, b);
}

// ---- General thresholds, k-CNF ---------------------------------------------------

namespace {

// Nonempty proper subsets of `c` by increasing size, then lexicographically.
std::vector<std::vector<Literal>> proper_subsets(const std::vector<Literal>& c) {
    std::vector<std::vector<Literal>> out;
    const std::size_t w = c.size();
    for (std::size_t s = 1; s < w; ++s) {
        std::vector<std::size_t> idx(s);
        std::iota(idx.begin(), idx.end(), 0);
        for (;;) {
            std::vector<Literal> d;
            for (auto i : idx) d.push_back(c[i]);
            out.push_back(std::move(d));
            std::size_t i = s;
            while (i > 0 && idx[i - 1] == w - s + (i - 1)) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return out;
}

bool contains_all(const Clause& c, const std::vector<Literal>& core) {
    return std::all_of(core.begin(), core.end(), [&](Literal l) { return c.contains(l); });
}

}  // namespace

Verdict decide_thrksat(const CnfFormula& input, const Threshold& rho, std::uint32_t k, Budget& budget,
                       const ScheduleOverride& ov) {
    const CnfFormula phi = normalize(input);
    if (k == 0) k = std::max<std::uint32_t>(2, static_cast<std::uint32_t>(phi.max_width()));
    require_width(phi, k);
    const std::uint32_t n = phi.num_vars;
    if (auto e = empty_clause_index(phi)) {
        Verdict v = empty_clause_no(phi, *e);
        v.leaves_expanded = budget.leaves_expanded;
        return v;
    }
    ScheduleK sched(rho, k, ov);
    const std::uint32_t K = k - 2;
    SunflowerLedger ledger;
    ledger.psi.num_vars = n;
    ledger.r.assign(K, 0);
    CnfFormula F = phi;
    auto finish = [&](Verdict v) {
        v.params_used = sched.describe();
        v.leaves_expanded = budget.leaves_expanded;
        v.ledger = ledger;
        return v;
    };
    auto prefix = [&](std::uint32_t len) {
        return std::vector<std::uint64_t>(ledger.r.begin(), ledger.r.begin() + len);
    };
    auto loop_open = [&]() {
        for (std::uint32_t w = 1; w <= K; ++w) {
            Param tw = sched.t(w, prefix(w - 1));
            if (param_at_most(tw, ledger.r[w - 1], "t_" + std::to_string(w))) return false;
        }
        return true;
    };
    while (loop_open()) {
        std::vector<Param> Q{Param::of(sched.z())};
        for (std::uint32_t w = 1; w <= K; ++w) Q.push_back(sched.q(w, prefix(w)));
        ExtractionOutcome out = extract_kcnf(F, Q, budget);
        if (!out.is_sunflower())
            return finish(count_verdict(std::move(std::get<DecompositionTree>(out.value)), rho, n, n,
                                        "step2-exact-count"));
        Sunflower sf = out.sunflower();
        if (sf.weight() == 0) {
            Verdict v;
            v.yes = false;
            v.branch_tag = "step2-large-0-sunflower";
            v.certificate.kind = CertificateKind::ledger;
            if (ledger.psi.clauses.empty()) {
                mpq_class b = 1;
                for (auto i : sf.petal_indices) b *= clause_fraction(F.clauses[i].width());
                if (b < rho.value()) {
                    auto idx = sf.petal_indices;
                    std::sort(idx.begin(), idx.end());
                    v.certificate.kind = CertificateKind::no_witness;
                    v.certificate.witness = NoWitness{"disjoint-set", idx, b};
                }
            }
            return finish(v);
        }
        // Prefer a proper sub-core that already carries a large sunflower.
        for (const auto& D : proper_subsets(sf.core)) {
            const std::uint32_t dv = static_cast<std::uint32_t>(D.size());
            auto T = find_sunflower_with_core(F, D, sched.q(dv, prefix(dv)), "q_" + std::to_string(dv));
            if (T) {
                sf = *T;
                break;
            }
        }
        const std::uint32_t w = static_cast<std::uint32_t>(sf.weight());
        ledger.entries.push_back(SunflowerLedgerEntry{sf.core, sf.size(), ledger.r});
        ledger.psi.clauses.push_back(Clause(sf.core));
        ++ledger.r[w - 1];
        for (std::uint32_t x = w; x < K; ++x) ledger.r[x] = 0;
        CnfFormula next;
        next.num_vars = n;
        for (const auto& c : F.clauses)
            if (!contains_all(c, sf.core)) next.clauses.push_back(c);
        next.clauses.push_back(Clause(sf.core));
        F = std::move(next);
    }
    // Step 3.
    CnfFormula G = normalize(F);
    const std::uint64_t t1 = sched.t1();
    bool units_only = G.clauses.size() == t1 &&
                      std::all_of(G.clauses.begin(), G.clauses.end(), [](const Clause& c) { return c.width() == 1; });
    if (units_only) {
        for (std::size_t i = 0; i < G.clauses.size() && units_only; ++i)
            for (std::size_t j = i + 1; j < G.clauses.size(); ++j)
                if (G.clauses[i].lits[0].var == G.clauses[j].lits[0].var) units_only = false;
    }
    Verdict v;
    if (units_only && rho.value() == mpq_class(1, pow2(t1))) {
        v.yes = true;
        v.branch_tag = "step3-hitting-set";
        v.certificate.kind = CertificateKind::hitting_set;
        for (const auto& c : G.clauses) v.certificate.hitting_set.push_back(c.lits[0]);
    } else {
        v.yes = false;
        v.branch_tag = ledger.r[0] >= t1 ? "step3-many-1-sunflowers" : "step3-many-w-sunflowers";
        v.certificate.kind = CertificateKind::ledger;
    }
    return finish(v);
}

Verdict decide_thrksat(const CnfFormula& f, const Threshold& rho, std::uint32_t k) {
    Budget b;
    return decide_thrksat(f, rho, k, b);
}

// ---- Strict (greater-than) variants ---------------------------------------------

namespace {

Verdict strict_from_count(Verdict v, const Threshold& rho, std::uint32_t n) {
    if (v.yes && v.certificate.count && compare_count_to_threshold(*v.certificate.count, rho, n) == Ordering::EQ) {
        v.yes = false;
        v.branch_tag += "-tie";
    }
    return v;
}

// Is there a satisfying assignment of phi that falsifies some literal of S?
bool some_proper_subset_satisfiable(const CnfFormula& phi, const std::vector<Literal>& S, Budget& budget) {
    const std::size_t t = S.size();
    if (t >= 63) throw Error(ErrorKind::too_large, "hitting set too large to enumerate");
    for (std::uint64_t mask = 0; mask + 1 < (std::uint64_t(1) << t); ++mask) {
        std::vector<Literal> lits;
        for (std::size_t i = 0; i < t; ++i) lits.push_back((mask >> i) & 1 ? S[i] : ~S[i]);
        CnfFormula g = condition(phi, lits);
        if (dpll_satisfiable(g, budget)) return true;
    }
    return false;
}

// Is phi AND NOT psi satisfiable? One query per clause of psi.
bool phi_and_not_psi_satisfiable(const CnfFormula& phi, const CnfFormula& psi, Budget& budget) {
    for (const auto& c : psi.clauses) {
        std::vector<Literal> neg;
        for (Literal l : c.lits) neg.push_back(~l);
        if (dpll_satisfiable(condition(phi, neg), budget)) return true;
    }
    return false;
}

}  // namespace

Verdict decide_gt_thr2sat(const CnfFormula& f, const Threshold& alpha, Budget& budget) {
    Verdict v = decide_thr2sat(f, alpha, budget);
    return strict_from_count(std::move(v), alpha, f.num_vars);
}

Verdict decide_gt_maj3sat(const CnfFormula& input, Budget& budget) {
    Verdict v = decide_maj3sat(input, budget);
    if (!v.yes) return v;
    if (v.branch_tag == "early-yes-common-literal") {
        // Exactly half plus the models with the common literal false.
        CnfFormula f = normalize(input);
        const Literal l = v.certificate.hitting_set.at(0);
        CnfFormula g = condition(f, {~l});
        v.yes = two_sat_satisfiable(g);
        v.branch_tag += v.yes ? "-rest-satisfiable" : "-rest-unsatisfiable";
        return v;
    }
    return strict_from_count(std::move(v), Threshold::from_fraction(1, 2), input.num_vars);
}

Verdict decide_gt_thr3sat(const CnfFormula& input, const Threshold& rho, Budget& budget, const ScheduleOverride& ov) {
    Verdict v = decide_thr3sat(input, rho, budget, ov);
    if (!v.yes) return v;
    const CnfFormula phi = normalize(input);
    const std::uint32_t n = phi.num_vars;
    const auto& S = v.certificate.hitting_set;
    Ordering ord;
    if (v.certificate.count)
        ord = compare_count_to_threshold(*v.certificate.count, rho, n);
    else
        ord = compare_count_to_threshold(pow2(n - S.size()), rho, n);
    if (ord == Ordering::GT) return v;
    v.yes = some_proper_subset_satisfiable(phi, S, budget);
    v.branch_tag += v.yes ? "-tie-other-models" : "-tie";
    v.leaves_expanded = budget.leaves_expanded;
    return v;
}

Verdict decide_gt_thrksat(const CnfFormula& input, const Threshold& rho, std::uint32_t k, Budget& budget,
                          const ScheduleOverride& ov) {
    Verdict v = decide_thrksat(input, rho, k, budget, ov);
    if (!v.yes) return v;
    const CnfFormula phi = normalize(input);
    const std::uint32_t n = phi.num_vars;
    const CnfFormula& psi = v.ledger->psi;
    if (v.certificate.count) {
        if (compare_count_to_threshold(*v.certificate.count, rho, n) == Ordering::GT) return v;
        v.yes = phi_and_not_psi_satisfiable(phi, psi, budget);
    } else {
        // Step-3 exit: phi AND psi is exactly the unit conjunction S.
        const auto& S = v.certificate.hitting_set;
        if (compare_count_to_threshold(pow2(n - S.size()), rho, n) == Ordering::GT) return v;
        CnfFormula phi_psi = phi;
        phi_psi.clauses.insert(phi_psi.clauses.end(), psi.clauses.begin(), psi.clauses.end());
        v.yes = some_proper_subset_satisfiable(phi_psi, S, budget) || phi_and_not_psi_satisfiable(phi, psi, budget);
    }
    v.branch_tag += v.yes ? "-tie-other-models" : "-tie";
    v.leaves_expanded = budget.leaves_expanded;
    return v;
}

// ---- Most significant bits -------------------------------------------------------

std::vector<int> msb_count(const CnfFormula& input, std::uint32_t t, Budget& budget) {
    const CnfFormula f = normalize(input);
    std::vector<int> bits(t + 1, 0);
    if (f.clauses.empty()) {
        bits[0] = 1;  // #SAT = 2^n
        return bits;
    }
    mpq_class prefix = 0;
    for (std::uint32_t i = 1; i <= t; ++i) {
        mpq_class rho_i = prefix + mpq_class(1, pow2(i));
        rho_i.canonicalize();
        Threshold th = Threshold::from_fraction(rho_i.get_num(), rho_i.get_den());
        Verdict v = decide_thrksat(f, th, 0, budget);
        bits[i] = v.yes ? 1 : 0;
        if (v.yes) prefix = rho_i;
    }
    return bits;
}

std::vector<int> msb_count(const CnfFormula& f, std::uint32_t t) {
    Budget b;
    return msb_count(f, t, b);
}

}  // namespace thrsat
