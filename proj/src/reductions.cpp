#include "thrsat/reductions.hpp"

#include "thrsat/oracle.hpp"

namespace thrsat {

namespace {

CnfFormula with_vars(const CnfFormula& f, std::uint32_t n) {
    CnfFormula g = f;
    g.num_vars = n;
    if (!g.roles.empty()) g.roles.resize(n, Role::plain);
    return g;
}

Literal pos(std::uint32_t v) { return Literal(v, true); }
Literal neg(std::uint32_t v) { return Literal(v, false); }

}  // namespace

CnfFormula gt_to_maj(const CnfFormula& f) {
    const std::uint32_t n = f.num_vars;
    if (n == 0) throw Error(ErrorKind::invalid_argument, "gt_to_maj needs n >= 1");
    CnfFormula g = with_vars(f, 2 * n);
    Clause big;
    for (std::uint32_t j = 1; j <= n; ++j) big.lits.push_back(pos(n + j));
    g.clauses.push_back(big);
    return g;
}

CnfFormula exact_count_formula(std::uint32_t n, const mpz_class& t) {
    if (t < 0 || t > pow2(n)) throw Error(ErrorKind::invalid_argument, "t must lie in [0, 2^n]");
    CnfFormula g(n, {});
    if (t == 0) {
        g.clauses.emplace_back();
        return g;
    }
    if (t == pow2(n)) return g;
    const mpz_class c = t - 1;
    // Bit i of c (1-based from the top) is bit n - i of the integer.
    auto bit = [&](std::uint32_t i) { return mpz_tstbit(c.get_mpz_t(), n - i) != 0; };
    for (std::uint32_t i = 1; i <= n; ++i) {
        if (bit(i)) continue;
        Clause cl;
        for (std::uint32_t j = 1; j < i; ++j)
            if (bit(j)) cl.lits.push_back(neg(j));
        cl.lits.push_back(neg(i));
        g.clauses.push_back(cl);
    }
    return g;
}

CnfFormula maj_to_gt(const CnfFormula& f) {
    const std::uint32_t n = f.num_vars;
    if (n == 0) throw Error(ErrorKind::invalid_argument, "maj_to_gt needs n >= 1");
    CnfFormula g = with_vars(f, n + 1);
    for (auto& c : g.clauses) c.lits.push_back(neg(n + 1));
    CnfFormula G = exact_count_formula(n, pow2(n - 1) + 1);
    for (auto c : G.clauses) {
        c.lits.push_back(pos(n + 1));
        g.clauses.push_back(c);
    }
    return g;
}

CnfFormula add_one_long_clause(const CnfFormula& f, std::uint32_t t) {
    const std::uint32_t n = f.num_vars;
    if (t < 1 || t > n) throw Error(ErrorKind::invalid_argument, "t must lie in [1, n]");
    CnfFormula g = with_vars(f, n + 1 + t);
    for (auto& c : g.clauses) c.lits.push_back(pos(n + 1));
    Clause big;
    big.lits.push_back(neg(n + 1));
    for (std::uint32_t j = 1; j <= t; ++j) big.lits.push_back(pos(n + 1 + j));
    g.clauses.push_back(big);
    return g;
}

CnfFormula gt_hardness_gadget(const CnfFormula& f) {
    CnfFormula g = with_vars(f, f.num_vars + 1);
    for (auto& c : g.clauses) c.lits.push_back(pos(f.num_vars + 1));
    return g;
}

CnfFormula square(const CnfFormula& f) {
    const std::uint32_t n = f.num_vars;
    CnfFormula g = with_vars(f, 2 * n);
    if (!f.roles.empty())
        for (std::uint32_t v = 1; v <= n; ++v) g.roles[n + v - 1] = f.roles[v - 1];
    for (const auto& c : f.clauses) {
        Clause d;
        for (Literal l : c.lits) d.lits.emplace_back(l.var + n, l.positive);
        g.clauses.push_back(d);
    }
    return g;
}

const std::vector<std::string>& reduction_names() {
    static const std::vector<std::string> names{"gt-to-maj",       "maj-to-gt",  "exact-count",
                                                "add-long-clause", "gt-gadget", "square"};
    return names;
}

ReductionRecord make_reduction(const std::string& name, const CnfFormula& f, std::optional<mpz_class> t) {
    ReductionRecord r;
    r.name = name;
    r.input = f;
    const std::uint32_t n = f.num_vars;
    auto need_t = [&] {
        if (!t) throw Error(ErrorKind::invalid_argument, name + " needs a parameter t");
        return *t;
    };
    if (name == "gt-to-maj") {
        r.output = gt_to_maj(f);
        r.relation = "#F' = (2^n - 1) #F and (#F > 2^(n-1) <=> #F' >= 2^(2n-1))";
        r.holds = [n](const mpz_class& a, const mpz_class& b) {
            return b == (pow2(n) - 1) * a && ((a > pow2(n - 1)) == (b >= pow2(2 * n - 1)));
        };
    } else if (name == "maj-to-gt") {
        r.output = maj_to_gt(f);
        r.relation = "#F' = #F + 2^(n-1) + 1 and (#F >= 2^(n-1) <=> #F' > 2^n)";
        r.holds = [n](const mpz_class& a, const mpz_class& b) {
            return b == a + pow2(n - 1) + 1 && ((a >= pow2(n - 1)) == (b > pow2(n)));
        };
    } else if (name == "exact-count") {
        mpz_class tv = need_t();
        r.output = exact_count_formula(n, tv);
        r.relation = "#F' = " + tv.get_str();
        r.holds = [tv](const mpz_class&, const mpz_class& b) { return b == tv; };
    } else if (name == "add-long-clause") {
        mpz_class tv = need_t();
        if (!tv.fits_uint_p()) throw Error(ErrorKind::invalid_argument, "t must lie in [1, n]");
        const std::uint32_t tt = static_cast<std::uint32_t>(tv.get_ui());
        r.output = add_one_long_clause(f, tt);
        r.relation = "#F' = 2^t #F + 2^n (2^t - 1) and (#F' >= 2^(n+t) <=> #F >= 2^(n-t))";
        r.holds = [n, tt](const mpz_class& a, const mpz_class& b) {
            return b == pow2(tt) * a + pow2(n) * (pow2(tt) - 1) && ((b >= pow2(n + tt)) == (a >= pow2(n - tt)));
        };
    } else if (name == "gt-gadget") {
        r.output = gt_hardness_gadget(f);
        r.relation = "#F' = 2^n + #F and (#F' > 2^n <=> #F > 0)";
        r.holds = [n](const mpz_class& a, const mpz_class& b) { return b == pow2(n) + a && ((b > pow2(n)) == (a > 0)); };
    } else if (name == "square") {
        r.output = square(f);
        r.relation = "#F' = #F^2";
        r.holds = [](const mpz_class& a, const mpz_class& b) { return b == a * a; };
    } else {
        throw Error(ErrorKind::invalid_argument, "unknown reduction " + name);
    }
    return r;
}

bool check_reduction(const ReductionRecord& r) {
    return r.holds(brute_count(r.input).value, brute_count(r.output).value);
}

}  // namespace thrsat
