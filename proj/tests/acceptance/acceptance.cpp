// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include "thrsat/arithmetic.hpp"
#include "thrsat/driver.hpp"
#include "thrsat/inference.hpp"
#include "thrsat/oracle.hpp"
#include "thrsat/reductions.hpp"
#include "thrsat/solvers.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>

using namespace thrsat;

namespace {

Threshold th(long p, long q) { return Threshold::from_fraction(p, q); }

CnfFormula gen(std::uint32_t n, std::size_t m, std::uint32_t k, std::uint64_t seed, bool width_mix = false) {
    GeneratorConfig g;
    g.n = n;
    g.clause_count = m;
    g.k = k;
    g.seed = seed;
    g.width_mix = width_mix;
    return random_kcnf(g);
}

// Certificate checks shared by every criterion (criterion 10).
struct CertStats {
    std::size_t no_witnesses = 0, no_witness_failures = 0;
    std::size_t yes_counts = 0, yes_count_failures = 0;

    void record(const CnfFormula& f, const Verdict& v, const Threshold& rho, const mpz_class& N) {
        if (!v.yes && v.certificate.witness) {
            ++no_witnesses;
            if (!verify_no_witness(normalize(f), *v.certificate.witness, rho)) ++no_witness_failures;
        }
        if (v.yes && v.certificate.kind == CertificateKind::exact_count && v.certificate.count) {
            ++yes_counts;
            if (v.certificate.count->value != N) ++yes_count_failures;
        }
    }
};

CertStats certs;

// GT/THR consistency (criterion 7), gathered over the k <= 4 corpora.
struct GtStats {
    std::size_t checked = 0, violations = 0, budget = 0;

    void record(bool thr, bool gt, const mpz_class& N, const Threshold& rho, std::uint32_t n) {
        ++checked;
        Ordering o = compare_count_to_threshold(N, rho, n);
        if (gt != (o == Ordering::GT)) ++violations;
        if (gt && !thr) ++violations;
        if (thr && !gt && o != Ordering::EQ) ++violations;
    }
};

GtStats gts;

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << detail << std::endl;
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool truth_of(const mpz_class& N, const Threshold& rho, std::uint32_t n) {
    return compare_count_to_threshold(N, rho, n) != Ordering::LT;
}

// ---------------------------------------------------------------------------

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    const std::vector<Threshold> rhos{th(1, 2), th(1, 4), th(3, 4), th(1, 100)};
    std::size_t mismatches = 0, decisions = 0;
    for (std::uint64_t i = 0; i < 10000; ++i) {
        CnfFormula f = gen(2 + i % 13, i % 41, 2, 100000 + i, i % 3 == 0);
        mpz_class N = brute_count(normalize(f)).value;
        for (const auto& r : rhos) {
            Verdict v = decide_thr2sat(f, r);
            ++decisions;
            if (v.yes != truth_of(N, r, f.num_vars)) ++mismatches;
            certs.record(f, v, r, N);
            if (i % 4 == 0) {
                Budget b;
                gts.record(v.yes, decide_gt_thr2sat(f, r, b).yes, N, r, f.num_vars);
            }
        }
    }
    double s = seconds_since(t0);
    std::ostringstream d;
    d << "thr2 vs oracle, 10000 instances x 4 thresholds (" << decisions << " decisions), mismatches " << mismatches
      << ", " << s << " s";
    report(1, mismatches == 0 && s < 60, d.str());
}

void criterion2() {
    std::size_t mismatches = 0, disagreements = 0;
    std::map<std::string, std::size_t> tags;
    const Threshold half = th(1, 2);
    for (std::uint64_t i = 0; i < 10000; ++i) {
        const std::uint32_t n = 3 + i % 12;
        CnfFormula f;
        switch (i % 5) {
            case 0: {  // planted common literal
                f = gen(n, 1 + i % 60, 3, 200000 + i);
                Literal l(1 + static_cast<std::uint32_t>(i % n), i % 2 == 0);
                for (auto& c : f.clauses)
                    if (!c.mentions(l.var)) c.lits[0] = l;
                break;
            }
            case 1:  // width <= 2 part of the corpus
                f = gen(n, 1 + i % 30, 2, 200000 + i);
                break;
            default:
                f = gen(n, i % 61, 3, 200000 + i, i % 5 == 2);
        }
        mpz_class N = brute_count(normalize(f)).value;
        bool want = truth_of(N, half, f.num_vars);
        Verdict m = decide_maj3sat(f);
        Verdict t = decide_thr3sat(f, half);
        tags[m.branch_tag]++;
        if (m.yes != want || t.yes != want) ++mismatches;
        if (m.yes != t.yes) ++disagreements;
        certs.record(f, m, half, N);
        certs.record(f, t, half, N);
        if (i % 4 == 0) {
            Budget b1, b2;
            gts.record(m.yes, decide_gt_maj3sat(f, b1).yes, N, half, f.num_vars);
            gts.record(t.yes, decide_gt_thr3sat(f, half, b2).yes, N, half, f.num_vars);
        }
    }
    std::size_t early_yes = tags["early-yes-common-literal"], exact = tags["exact-count"];
    std::size_t early_no = tags["early-no-disjoint-3clauses"] + tags["early-no-three-2clauses"] +
                           tags["early-no-petal-pattern"];
    std::ostringstream d;
    d << "maj3/thr3 vs oracle and each other, 10000 instances, mismatches " << mismatches << ", disagreements "
      << disagreements << "; branches early-yes " << early_yes << ", early-no " << early_no << ", exact-count "
      << exact;
    report(2, mismatches == 0 && disagreements == 0 && early_yes >= 50 && early_no >= 50 && exact >= 50, d.str());
}

void criterion3() {
    bool ok = true;
    std::ostringstream d;
    // (7/8)^6 < 0.449 < 1/2 drives NO on 6 disjoint 3-clauses.
    mpq_class b = pow_q(mpq_class(7, 8), 6);
    ok &= b < mpq_class(449, 1000) && mpq_class(449, 1000) < mpq_class(1, 2);
    CnfFormula six(18, {});
    for (int i = 0; i < 6; ++i) six.clauses.push_back(Clause({3 * i + 1, 3 * i + 2, 3 * i + 3}));
    Verdict v = decide_maj3sat(six);
    ok &= !v.yes && v.certificate.witness && v.certificate.witness->bound == b &&
          verify_no_witness(normalize(six), *v.certificate.witness, th(1, 2));
    ok &= brute_count(six).value < pow2(17);
    // c(1/2) = 1 + ceil(log_{4/3} 2) = 4.
    ok &= c_alpha(th(1, 2)) == 4;
    // Petal pattern with t = 8 on 18 variables.
    CnfFormula p(18, {});
    for (int i = 0; i < 8; ++i) p.clauses.push_back(Clause({1, 2 + 2 * i, 3 + 2 * i}));
    p.clauses.push_back(Clause({-1, 2, 18}));
    mpz_class N = brute_count(p).value;
    ok &= N < pow2(17);
    ok &= mpq_class(N, pow2(18)) <= (pow_q(mpq_class(3, 4), 8) + mpq_class(7, 8)) / 2;
    d << "(7/8)^6 = " << b.get_str() << " witness verified; c(1/2) = " << c_alpha(th(1, 2))
      << "; petal pattern count " << N.get_str() << " < 2^17";
    report(3, ok, d.str());
}

void criterion4() {
    auto t0 = std::chrono::steady_clock::now();
    const std::vector<std::pair<long, long>> rhos{{1, 2}, {1, 4}, {3, 4}, {1, 8}, {3, 7}, {5, 8}, {1, 3}, {2, 3}, {1, 7}};
    std::size_t checked = 0, violations = 0, closed_form_failures = 0;
    for (auto [p, q] : rhos) {
        Threshold r = th(p, q);
        for (std::uint64_t m = 1; m <= 6; ++m) {
            mpq_class e = eta(r, m);
            // rho = 1/2^v: eta = rho / 2^m. rho = 3/7: eta = rho / 2^{3m/2} (m even),
            // (5/3) rho / 2^{ceil(3m/2)} (m odd).
            if (r.a == 1 && r.b == 1 && e != r.value() / mpq_class(pow2(m))) ++closed_form_failures;
            if (p == 3 && q == 7) {
                mpq_class want = m % 2 == 0 ? mpq_class(r.value() / mpq_class(pow2(3 * m / 2)))
                                            : mpq_class(mpq_class(5, 3) * r.value() / mpq_class(pow2((3 * m + 1) / 2)));
                if (e != want) ++closed_form_failures;
            }
            for (std::uint32_t n = 0; n <= 14; ++n) {
                const mpq_class lim = r.value() * mpq_class(pow2(n)), cap = (r.value() - e) * mpq_class(pow2(n));
                for (unsigned long N = 0; mpq_class(N) < lim; ++N) {
                    if (static_cast<std::uint64_t>(__builtin_popcountl(N)) > m) continue;
                    ++checked;
                    if (mpq_class(N) > cap) ++violations;
                }
            }
        }
    }
    for (std::uint64_t m = 1; m <= 6; ++m)
        for (std::uint32_t v = 2; v <= 5; ++v) {
            Threshold r = th((1L << (v - 1)) - 1, 1L << v);
            if (v >= 3 && m + 1 >= v && eta(r, m) != mpq_class(1, pow2(m + 2))) ++closed_form_failures;
            Threshold u = th(1, (1L << v) - 1);
            if (eta(u, m) != u.value() / mpq_class(pow2(m * v))) ++closed_form_failures;
        }
    double s = seconds_since(t0);
    std::ostringstream d;
    d << "gap property over " << checked << " power sums, violations " << violations << ", closed-form failures "
      << closed_form_failures << ", " << s << " s";
    report(4, violations == 0 && closed_form_failures == 0 && s < 120, d.str());
}

void criterion5() {
    std::size_t total = 0, over = 0, fallback_ok = 0, mismatches = 0;
    for (std::uint64_t i = 0; i < 5000; ++i) {
        CnfFormula f = gen(4 + i % 9, i % 50, 4, 300000 + i, i % 4 == 0);
        mpz_class N = brute_count(normalize(f)).value;
        const Threshold r = i % 2 ? th(1, 4) : th(1, 2);
        ++total;
        DecideOptions o;
        o.rho = r;
        o.k = 4;
        o.algo = "thrk";
        try {
            Verdict v = run_decide(f, o).verdict;
            if (v.yes != truth_of(N, r, f.num_vars)) ++mismatches;
            certs.record(f, v, r, N);
            if (i % 4 == 0) {
                Budget b;
                gts.record(v.yes, decide_gt_thrksat(f, r, 4, b).yes, N, r, f.num_vars);
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::budget_exceeded) throw;
            ++over;
            o.fallback_oracle = true;
            DecideOutcome out = run_decide(f, o);
            if (out.used_fallback && out.verdict.yes == truth_of(N, r, f.num_vars)) ++fallback_ok;
        }
    }
    std::ostringstream d;
    d << "thrk (k=4) vs oracle, " << total << " instances, mismatches " << mismatches << ", budget exceeded " << over
      << " (" << (100.0 * over / total) << "%), resolved by fallback " << fallback_ok;
    report(5, mismatches == 0 && over * 5 <= total && fallback_ok == over, d.str());
}

void criterion6() {
    std::size_t mismatches = 0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const std::uint32_t k = 1 + i % 3, n = std::max<std::uint32_t>(k, 1 + i % 12), t = i % 4;
        CnfFormula f = gen(n, i % 25, k, 400000 + i, i % 2 == 0);
        mpz_class N = brute_count(normalize(f)).value;
        std::vector<int> want(t + 1);
        // b_j with N = sum_j b_j 2^{n-j} + lower terms, b_0 = [N = 2^n].
        want[0] = N == pow2(n);
        for (std::uint32_t j = 1; j <= t; ++j) want[j] = j <= n ? mpz_tstbit(N.get_mpz_t(), n - j) && !want[0] : 0;
        if (msb_count(f, t) != want) ++mismatches;
    }
    std::ostringstream d;
    d << "msb_count vs brute-force bits, 1000 instances, mismatches " << mismatches;
    report(6, mismatches == 0, d.str());
}

void criterion7() {
    std::size_t gadget_mismatch = 0, sat = 0, unsat = 0;
    for (std::uint64_t i = 0; i < 100; ++i) {
        CnfFormula f = gen(4 + i % 5, 5 + i % 40, 3, 500000 + i);
        bool satisfiable = brute_count(f).value > 0;
        (satisfiable ? sat : unsat)++;
        Budget b;
        CnfFormula g = gt_hardness_gadget(f);
        bool gt = decide_gt_thrksat(g, th(1, 2), 4, b).yes;
        bool oracle = brute_count(g).value > pow2(g.num_vars - 1);
        if (gt != satisfiable || oracle != satisfiable) ++gadget_mismatch;
    }
    std::ostringstream d;
    d << "GT/THR consistency on " << gts.checked << " k<=4 decisions, violations " << gts.violations
      << "; gadget on 100 3-CNFs (" << sat << " sat, " << unsat << " unsat), mismatches " << gadget_mismatch;
    report(7, gts.violations == 0 && gadget_mismatch == 0 && sat > 0 && unsat > 0, d.str());
}

void criterion8() {
    std::size_t mismatches = 0, good_count_mismatches = 0, yes = 0, decisions = 0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        GeneratorConfig g;
        g.n = 2 + i % 15;
        g.clause_count = i % 20;
        g.k = 2;
        g.seed = 600000 + i;
        g.width_mix = i % 2 == 0;
        g.role_split = 1 + static_cast<std::uint32_t>(i % (g.n - 1));
        CnfFormula f = random_kcnf(g);
        for (auto r : {th(1, 2), th(1, 4)})
            for (auto s : {th(1, 2), th(3, 4)}) {
                TwoLevelResult o = brute_two_level(normalize(f), r, s);
                Verdict e = decide_emaj2sat(f, s);
                Verdict m = decide_majmaj2sat(f, r, s);
                decisions += 2;
                if (e.yes != o.emaj || m.yes != o.majmaj) ++mismatches;
                if (m.yes) {
                    ++yes;
                    if (!m.good_count || *m.good_count != o.good_count) ++good_count_mismatches;
                }
            }
    }
    std::ostringstream d;
    d << "emaj/majmaj vs brute_two_level, 1000 instances, " << decisions << " decisions, mismatches " << mismatches
      << ", MAJ-MAJ YES " << yes << " with good_count mismatches " << good_count_mismatches;
    report(8, mismatches == 0 && good_count_mismatches == 0, d.str());
}

void criterion9() {
    std::map<std::string, std::size_t> ok;
    for (std::uint64_t i = 0; i < 500; ++i) {
        CnfFormula f = gen(1 + i % 7, i % 14, std::min<std::uint32_t>(3, 1 + i % 7), 700000 + i, i % 2 == 0);
        for (const auto& name : reduction_names()) {
            std::optional<mpz_class> t;
            if (name == "exact-count") t = mpz_class(static_cast<unsigned long>(i % ((1ul << f.num_vars) + 1)));
            if (name == "add-long-clause") t = mpz_class(static_cast<unsigned long>(1 + i % f.num_vars));
            if (check_reduction(make_reduction(name, f, t))) ok[name]++;
        }
    }
    bool all = true;
    std::ostringstream d;
    for (const auto& name : reduction_names()) {
        d << name << " " << ok[name] << "/500 ";
        all &= ok[name] == 500;
    }
    report(9, all, d.str());
}

void criterion10() {
    std::ostringstream d;
    d << "NO witnesses re-verified " << (certs.no_witnesses - certs.no_witness_failures) << "/" << certs.no_witnesses
      << ", YES exact counts matching the oracle " << (certs.yes_counts - certs.yes_count_failures) << "/"
      << certs.yes_counts;
    report(10, certs.no_witness_failures == 0 && certs.yes_count_failures == 0 && certs.no_witnesses > 0 &&
                   certs.yes_counts > 0,
           d.str());
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::function<void()>> all{criterion1, criterion2, criterion3, criterion4, criterion5,
                                           criterion6, criterion7, criterion8, criterion9, criterion10};
    // Optional list of criterion numbers; 7 and 10 aggregate over 1, 2 and 5.
    std::vector<int> pick;
    for (int i = 1; i < argc; ++i) pick.push_back(std::atoi(argv[i]));
    if (pick.empty()) pick = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    for (int id : pick) {
        if (id < 1 || id > 10) {
            std::cerr << "unknown criterion " << id << "\n";
            return 2;
        }
        try {
            all[id - 1]();
        } catch (const std::exception& e) {
            report(id, false, std::string("exception: ") + e.what());
        }
    }
    return failures ? 1 : 0;
}
