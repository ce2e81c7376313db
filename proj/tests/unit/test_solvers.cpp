#include "helpers.hpp"

#include "thrsat/arithmetic.hpp"
#include "thrsat/reductions.hpp"

using namespace thrsat;
using namespace thrsat::test;

namespace {

void check_certificate(const CnfFormula& f, const Verdict& v, const Threshold& rho) {
    const CnfFormula g = normalize(f);
    if (v.certificate.witness) CHECK(verify_no_witness(g, *v.certificate.witness, rho));
    if (v.certificate.count && v.certificate.kind == CertificateKind::exact_count)
        CHECK(v.certificate.count->value == brute_count(g).value);
}

// Literal-petal pattern: (x1 or a_i or b_i) for i = 1..8 plus (not x1 or a_1 or x18).
CnfFormula petal_pattern() {
    CnfFormula f(18, {});
    for (int i = 0; i < 8; ++i) f.clauses.push_back(Clause({1, 2 + 2 * i, 3 + 2 * i}));
    f.clauses.push_back(Clause({-1, 2, 18}));
    return f;
}

}  // namespace

TEST_CASE("thr2sat examples") {
    Verdict a = decide_thr2sat(CnfFormula(2, {{1, 2}}), th(1, 2));
    CHECK(a.yes);
    REQUIRE(a.certificate.count);
    CHECK(a.certificate.count->value == 3);
    CHECK(a.certificate.tree);

    CnfFormula eight = disjoint_clauses(8, 2);
    Verdict b = decide_thr2sat(eight, th(1, 2));
    CHECK_FALSE(b.yes);
    CHECK(b.branch_tag == "early-no-disjoint-2clauses");
    REQUIRE(b.certificate.witness);
    CHECK(verify_no_witness(normalize(eight), *b.certificate.witness, th(1, 2)));
    CHECK_FALSE(truth(eight, th(1, 2)));

    for (auto r : {th(1, 2), th(1, 100), th(99, 100)}) {
        Verdict t = decide_thr2sat(CnfFormula(5, {}), r);
        CHECK(t.yes);
        CHECK(t.certificate.count->value == 32);
    }
    CHECK_THROWS_AS(decide_thr2sat(CnfFormula(3, {{1, 2, 3}}), th(1, 2)), Error);
}

TEST_CASE("empty clause is NO everywhere") {
    CnfFormula bot(3, {Clause()});
    for (auto r : {th(1, 2), th(1, 100), th(3, 4)}) {
        CHECK_FALSE(decide_thr2sat(bot, r).yes);
        CHECK_FALSE(decide_thr3sat(bot, r).yes);
        CHECK_FALSE(decide_thrksat(bot, r, 4).yes);
    }
    CHECK_FALSE(decide_maj3sat(bot).yes);
    CHECK_FALSE(decide_thr3sat_above_half(bot, th(3, 4)).yes);
}

TEST_CASE("maj3sat examples") {
    CnfFormula common(6, {{1, 2, 3}, {1, -4, 5}, {1, -2, 6}});
    Verdict c = decide_maj3sat(common);
    CHECK(c.yes);
    CHECK(c.branch_tag == "early-yes-common-literal");
    CHECK(c.certificate.hitting_set == std::vector<Literal>{Literal(1, true)});
    CHECK(truth(common, th(1, 2)));

    CnfFormula six = disjoint_clauses(6, 3);
    Verdict d = decide_maj3sat(six);
    CHECK_FALSE(d.yes);
    CHECK(d.branch_tag == "early-no-disjoint-3clauses");
    REQUIRE(d.certificate.witness);
    CHECK(d.certificate.witness->clause_indices.size() == 6);
    CHECK(d.certificate.witness->bound == pow_q(mpq_class(7, 8), 6));
    CHECK(verify_no_witness(normalize(six), *d.certificate.witness, th(1, 2)));

    CnfFormula p = petal_pattern();
    Verdict e = decide_maj3sat(p);
    CHECK_FALSE(e.yes);
    CHECK_FALSE(truth(p, th(1, 2)));
}

TEST_CASE("fixed constants: 6 disjoint 3-clauses, c(1/2), petal pattern") {
    mpq_class b = pow_q(mpq_class(7, 8), 6);
    CHECK(b < mpq_class(449, 1000));
    CHECK(mpq_class(449, 1000) < mpq_class(1, 2));
    CHECK(c_alpha(th(1, 2)) == 4);
    CnfFormula p = normalize(petal_pattern());
    std::vector<std::size_t> all(p.clauses.size());
    std::iota(all.begin(), all.end(), 0);
    NoWitness w{"literal-petal-pattern", all, (pow_q(mpq_class(3, 4), 8) + mpq_class(7, 8)) / 2};
    CHECK(witness_fraction(p, w) < mpq_class(1, 2));
    CHECK(witness_fraction(p, w) <= w.bound);
    CHECK(verify_no_witness(p, w, th(1, 2)));
}

TEST_CASE("thr3sat_above_half examples") {
    Verdict a = decide_thr3sat_above_half(CnfFormula(4, {}), th(3, 4));
    CHECK(a.yes);
    CHECK(a.certificate.count->value == 16);
    Verdict b = decide_thr3sat_above_half(CnfFormula(5, {{1, 2, 3}}), th(3, 4));
    CHECK(b.yes);
    CHECK(b.certificate.count->value == 7 * 4);
    CnfFormula three = disjoint_clauses(3, 3);
    Verdict c = decide_thr3sat_above_half(three, th(3, 4));
    CHECK_FALSE(c.yes);
    CHECK_FALSE(truth(three, th(3, 4)));
    CHECK_THROWS_AS(decide_thr3sat_above_half(three, th(1, 2)), Error);
}

TEST_CASE("thr3sat case-2 hitting set under a small schedule") {
    // q_0 is astronomically large for rho = 1/2; a small override exercises the
    // branch on an instance whose answer the oracle confirms.
    ScheduleOverride ov;
    ov.z = 6;
    ov.q = {2, 1};
    CnfFormula f(15, {});
    for (int i = 1; i <= 7; ++i) f.clauses.push_back(Clause({1, 2 * i, 2 * i + 1}));
    Budget b;
    Verdict v = decide_thr3sat(f, th(1, 2), b, ov);
    CHECK(v.yes);
    CHECK(v.branch_tag == "case2-hitting-set");
    CHECK(v.certificate.hitting_set == std::vector<Literal>{Literal(1, true)});
    CHECK(truth(f, th(1, 2)));
}

TEST_CASE("thrksat examples") {
    ScheduleK s(th(1, 2), 4);
    CHECK(s.z() == 11);
    CnfFormula z4 = disjoint_clauses(11, 4);
    Verdict v = decide_thrksat(z4, th(1, 2), 4);
    CHECK_FALSE(v.yes);
    CHECK(v.branch_tag == "step2-large-0-sunflower");
    REQUIRE(v.certificate.witness);
    CHECK(verify_no_witness(normalize(z4), *v.certificate.witness, th(1, 2)));
    CHECK(witness_fraction(normalize(z4), *v.certificate.witness) == pow_q(mpq_class(15, 16), 11));

    CnfFormula common(10, {{1, 2, 3, 4}, {1, -2, 5, 6}, {1, 7, -8, 9}, {1, -3, 10, -5}});
    CHECK(truth(common, th(1, 2)));
    CHECK(decide_thrksat(common, th(1, 2), 4).yes);
}

TEST_CASE("schedule values") {
    Schedule3 s(th(1, 2));
    CHECK(s.z() == 6);
    CHECK(s.t() == 1);
    Schedule3 s37(th(3, 7));
    CHECK(s37.z() == 7);
    CHECK(s37.t() == 1);
    CHECK(ScheduleK(th(1, 2), 3).z() == 6);
    CHECK(ScheduleK(th(1, 2), 4).z() == 11);
}

TEST_CASE("schedule minimality of z and q_t") {
    for (auto [p, q] : std::vector<std::pair<long, long>>{{1, 2}, {1, 4}, {3, 7}, {3, 4}, {1, 8}}) {
        Threshold r = th(p, q);
        mpq_class rho = r.value();
        Schedule3 s(r);
        CHECK(pow_q(mpq_class(7, 8), s.z()) < rho);
        CHECK(pow_q(mpq_class(7, 8), s.z() - 1) >= rho);
        const Param& qt = s.q(s.t());
        REQUIRE(qt.exact);
        std::uint64_t Q = qt.value.get_ui();
        mpq_class b1 = (rho - pow_q(mpq_class(7, 8), s.z())) / (s.t() + 1);
        mpq_class b2 = (rho - mpq_class(1, pow2(s.t() + 1))) / (s.t() + 1);
        CHECK(pow_q(mpq_class(3, 4), Q) < b1);
        CHECK(pow_q(mpq_class(3, 4), Q) < b2);
        CHECK((pow_q(mpq_class(3, 4), Q - 1) >= b1 || pow_q(mpq_class(3, 4), Q - 1) >= b2));
        for (std::uint64_t rr = s.t(); rr >= 1; --rr) {
            // Strictly decreasing in r.
            const Param& lo = s.q(rr - 1);
            CHECK(lo.value > s.q(rr).value);
        }
        ScheduleK k(r, 4);
        CHECK(pow_q(mpq_class(15, 16), k.z()) < rho);
        CHECK(pow_q(mpq_class(15, 16), k.z() - 1) >= rho);
        CHECK(k.t1() == ceil_log2_inv(r));
    }
}

TEST_CASE("msb_count examples") {
    CHECK(msb_count(CnfFormula(3, {}), 2) == std::vector<int>{1, 0, 0});
    CnfFormula five = exact_count_formula(3, 5);
    CHECK(brute_count(five).value == 5);
    CHECK(msb_count(five, 2) == std::vector<int>{0, 1, 0});
    CHECK(msb_count(CnfFormula(3, {Clause()}), 1) == std::vector<int>{0, 0});
}

TEST_CASE("GT examples") {
    Budget b;
    CHECK(decide_gt_thr3sat(CnfFormula(3, {}), th(1, 2), b).yes);
    CnfFormula f(2, {{1}, {-1, 2}});
    CHECK(brute_count(f).value == 1);
    CHECK(decide_thr3sat(f, th(1, 4)).yes);
    CHECK_FALSE(decide_gt_thr3sat(f, th(1, 4), b).yes);
    CnfFormula tight(3, {{1, 2}, {1, -2}, {1, 3, 2}});
    CHECK(brute_count(tight).value == 4);
    CHECK_FALSE(decide_gt_thr3sat(tight, th(1, 2), b).yes);
    CHECK_FALSE(decide_gt_maj3sat(tight, b).yes);
    CHECK_FALSE(decide_gt_thrksat(CnfFormula(3, {Clause()}), th(1, 2), 4, b).yes);
}

TEST_CASE("GT gadget flips with satisfiability") {
    Budget b;
    CnfFormula sat = random_formula(5, 8, 3, 11);
    CnfFormula unsat(3, {{1, 2}, {1, -2}, {-1, 3}, {-1, -3}});
    CHECK(brute_count(sat).value > 0);
    CHECK(decide_gt_thrksat(gt_hardness_gadget(sat), th(1, 2), 4, b).yes);
    CHECK_FALSE(decide_gt_thrksat(gt_hardness_gadget(unsat), th(1, 2), 4, b).yes);
}

TEST_CASE("deciders agree with the oracle and certificates verify") {
    const std::vector<Threshold> rhos{th(1, 2), th(1, 4), th(3, 4), th(1, 8), th(3, 7)};
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
        std::uint32_t k = 2 + seed % 3;
        CnfFormula f = random_formula(4 + seed % 10, seed % 35, k, seed, seed % 4 == 0);
        for (const auto& r : rhos) {
            bool want = truth(f, r), want_gt = truth(f, r, true);
            Budget b;
            try {
                Verdict v = k == 2 ? decide_thr2sat(f, r, b) : k == 3 ? decide_thr3sat(f, r, b)
                                                                      : decide_thrksat(f, r, 4, b);
                CHECK(v.yes == want);
                check_certificate(f, v, r);
                Budget g;
                Verdict gv = k == 2 ? decide_gt_thr2sat(f, r, g) : k == 3 ? decide_gt_thr3sat(f, r, g)
                                                                          : decide_gt_thrksat(f, r, 4, g);
                CHECK(gv.yes == want_gt);
                if (gv.yes) CHECK(v.yes);
                if (v.yes && !gv.yes)
                    CHECK(compare_count_to_threshold(brute_count(normalize(f)), r, f.num_vars) == Ordering::EQ);
            } catch (const Error& e) {
                CHECK(e.kind() == ErrorKind::budget_exceeded);
            }
        }
        if (k == 3) {
            Verdict m = decide_maj3sat(f);
            CHECK(m.yes == truth(f, th(1, 2)));
            check_certificate(f, m, th(1, 2));
            Verdict a = decide_thr3sat_above_half(f, th(3, 4));
            CHECK(a.yes == truth(f, th(3, 4)));
            check_certificate(f, a, th(3, 4));
        }
    }
}

TEST_CASE("adding clauses never turns NO into YES") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        CnfFormula f = random_formula(4 + seed % 9, 3 + seed % 20, 3, seed + 500);
        CnfFormula g = f;
        for (const auto& c : random_formula(f.num_vars, 1 + seed % 3, 3, seed + 900).clauses) g.clauses.push_back(c);
        for (auto r : {th(1, 2), th(1, 4)}) {
            if (!decide_thr3sat(f, r).yes) CHECK_FALSE(decide_thr3sat(g, r).yes);
        }
        if (!decide_maj3sat(f).yes) CHECK_FALSE(decide_maj3sat(g).yes);
    }
}

TEST_CASE("budget overrun is reported, never converted") {
    CnfFormula f = random_formula(20, 60, 4, 3);
    Budget b;
    b.max_leaves = 100;
    try {
        decide_thrksat(f, th(1, 3), 4, b);
        FAIL("expected budget_exceeded");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::budget_exceeded);
    }
}
