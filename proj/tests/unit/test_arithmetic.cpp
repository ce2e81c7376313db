#include "helpers.hpp"

#include "thrsat/arithmetic.hpp"

using namespace thrsat;
using namespace thrsat::test;

namespace {

// All integers < limit that are sums of at most m powers of two with exponents >= 0.
void power_sums_below(const mpz_class& limit, std::uint64_t m, std::uint32_t max_exp,
                      const std::function<void(const mpz_class&)>& fn) {
    std::function<void(const mpz_class&, std::uint64_t, std::uint32_t)> rec = [&](const mpz_class& acc,
                                                                                 std::uint64_t left,
                                                                                 std::uint32_t top) {
        fn(acc);
        if (left == 0) return;
        for (std::uint32_t e = 0; e <= top; ++e) {
            mpz_class next = acc + pow2(e);
            if (next >= limit) break;
            rec(next, left - 1, e);  // non-increasing exponents avoid duplicates
        }
    };
    rec(0, m, max_exp);
}

}  // namespace

TEST_CASE("canonicalize_threshold examples") {
    Threshold a = canonicalize_threshold(1, 2);
    CHECK((a.a == 1 && a.v == 1 && a.b == 1));
    Threshold b = canonicalize_threshold(3, 7);
    CHECK((b.a == 3 && b.v == 0 && b.b == 7));
    Threshold c = canonicalize_threshold(6, 28);
    CHECK((c.a == 3 && c.v == 1 && c.b == 7));
    CHECK_THROWS_AS(canonicalize_threshold(2, 2), Error);
}

TEST_CASE("ord2 examples and brute check") {
    CHECK(ord2(1) == 1);
    CHECK(ord2(7) == 3);
    CHECK(ord2(9) == 6);
    for (unsigned long b = 1; b < 200; b += 2) {
        std::uint64_t d = 1;
        mpz_class p = 2;
        while ((p - 1) % b != 0) {
            p *= 2;
            ++d;
        }
        CHECK(ord2(b) == d);
    }
    CHECK_THROWS_AS(ord2(4), Error);
}

TEST_CASE("binary_expansion examples") {
    BinaryExpansion e = binary_expansion(th(3, 7), 4);
    CHECK(e.exponents == std::vector<long long>{-2, -3, -5, -6});
    BinaryExpansion h = binary_expansion(th(1, 2), 1);
    CHECK(h.exponents == std::vector<long long>{-1});
    CHECK(h.terminated);
    CHECK(binary_expansion(th(5, 8), 2).exponents == std::vector<long long>{-1, -3});
}

TEST_CASE("binary_expansion prefix sums increase toward rho") {
    for (auto [p, q] : std::vector<std::pair<long, long>>{{3, 7}, {1, 3}, {2, 3}, {1, 7}, {5, 8}, {11, 13}}) {
        Threshold r = th(p, q);
        BinaryExpansion e = binary_expansion(r, 30);
        mpq_class sum = 0;
        for (std::size_t i = 0; i < e.exponents.size(); ++i) {
            if (i) CHECK(e.exponents[i] < e.exponents[i - 1]);
            long long x = e.exponents[i];
            sum += x >= 0 ? mpq_class(pow2(x)) : mpq_class(1, pow2(-x));
            CHECK(sum <= r.value());
        }
        if (!e.terminated) CHECK(sum < r.value());
    }
}

TEST_CASE("eta closed forms") {
    for (std::uint64_t m = 1; m <= 6; ++m) {
        for (std::uint32_t v = 1; v <= 4; ++v) {
            Threshold r = th(1, 1L << v);
            CHECK(eta(r, m) == r.value() / mpq_class(pow2(m)));
        }
        if (m % 2 == 0) CHECK(eta(th(3, 7), m) == mpq_class(3, 7) / mpq_class(pow2(3 * m / 2)));
        for (std::uint32_t v = 2; v <= 4; ++v) {
            Threshold r = th(1, (1L << v) - 1);
            CHECK(eta(r, m) == r.value() / mpq_class(pow2(m * v)));
        }
    }
}

TEST_CASE("eta lower bound rho / 2^{(b-1)m} for odd b > 1") {
    for (auto [p, q] : std::vector<std::pair<long, long>>{{1, 2}, {1, 4}, {3, 4}, {1, 8}, {3, 7}, {5, 8}, {1, 3}, {2, 3}, {1, 7}})
        for (std::uint64_t m = 1; m <= 6; ++m) {
            Threshold r = th(p, q);
            CHECK(eta(r, m) > 0);
            if (r.b == 1) continue;
            mpz_class bm1 = r.b - 1;
            CHECK(eta(r, m) >= r.value() / mpq_class(pow2(bm1.get_ui() * m)));
        }
}

TEST_CASE("greedy_max_power_sum examples") {
    CHECK(greedy_max_power_sum(th(1, 2), 3, 1).value == 2);
    CHECK(greedy_max_power_sum(th(3, 7), 4, 2).value == 6);
    CHECK(greedy_max_power_sum(th(5, 8), 4, 3).value == 9);
}

TEST_CASE("greedy_max_power_sum dominates every power sum below rho 2^n") {
    for (auto [p, q] : std::vector<std::pair<long, long>>{{1, 2}, {3, 7}, {5, 8}, {1, 3}, {2, 3}})
        for (std::uint32_t n = 0; n <= 12; ++n)
            for (std::uint64_t m = 1; m <= 4; ++m) {
                Threshold r = th(p, q);
                mpq_class lim = r.value() * mpq_class(pow2(n));
                mpz_class ceil_lim = (lim.get_num() + lim.get_den() - 1) / lim.get_den();
                mpz_class best = -1;
                power_sums_below(ceil_lim, m, n, [&](const mpz_class& x) {
                    if (x > best) best = x;
                });
                if (best < 0) continue;
                CHECK(greedy_max_power_sum(r, n, m).value == best);
            }
}

TEST_CASE("gap property on a small fixture") {
    // The full sweep lives in the acceptance binary.
    Threshold r = th(3, 7);
    for (std::uint64_t m = 1; m <= 4; ++m)
        for (std::uint32_t n = 0; n <= 10; ++n) {
            mpq_class lim = r.value() * mpq_class(pow2(n)), gap = (r.value() - eta(r, m)) * mpq_class(pow2(n));
            mpz_class ceil_lim = (lim.get_num() + lim.get_den() - 1) / lim.get_den();
            power_sums_below(ceil_lim, m, n, [&](const mpz_class& x) { CHECK(mpq_class(x) <= gap); });
        }
}

TEST_CASE("c_alpha and the logarithm helpers") {
    CHECK(c_alpha(th(1, 2)) == 4);
    CHECK(c_alpha(th(3, 4)) == 2);
    CHECK(floor_log2_inv(th(1, 2)) == 1);
    CHECK(floor_log2_inv(th(3, 7)) == 1);
    CHECK(floor_log2_inv(th(1, 4)) == 2);
    CHECK(ceil_log2_inv(th(3, 7)) == 2);
    CHECK(ceil_log2_inv(th(1, 4)) == 2);
    // c(alpha) = 1 + ceil(log_{4/3}(1/alpha)): (3/4)^{c-1} <= alpha < (3/4)^{c-2}.
    for (auto [p, q] : std::vector<std::pair<long, long>>{{1, 100}, {1, 3}, {2, 3}, {5, 8}, {1, 7}}) {
        std::uint64_t c = c_alpha(th(p, q));
        CHECK(pow_q(mpq_class(3, 4), c - 1) <= mpq_class(p, q));
        if (c >= 2) CHECK(pow_q(mpq_class(3, 4), c - 2) > mpq_class(p, q));
    }
}

TEST_CASE("c2_constant brackets 72 ln(1/eps)") {
    for (auto [p, q] : std::vector<std::pair<long, long>>{{1, 4}, {1, 8}, {1, 3}, {1, 100}}) {
        mpz_class c = c2_constant(mpq_class(p, q));
        double want = std::ceil(72.0 * std::log(double(q) / double(p)));
        CHECK(c.get_d() == doctest::Approx(want));
    }
}

TEST_CASE("smallest_power_below is minimal") {
    for (auto [cn, cd, xn, xd] : std::vector<std::array<long, 4>>{{7, 8, 1, 2}, {15, 16, 1, 2}, {7, 8, 3, 7}, {3, 4, 1, 100}}) {
        mpq_class c(cn, cd), x(xn, xd);
        mpz_class q = smallest_power_below(c, x);
        CHECK(pow_q(c, q.get_ui()) < x);
        if (q > 0) CHECK(pow_q(c, q.get_ui() - 1) >= x);
    }
    CHECK(smallest_power_below(mpq_class(7, 8), mpq_class(1, 2)) == 6);
    CHECK(smallest_power_below(mpq_class(15, 16), mpq_class(1, 2)) == 11);
    CHECK(smallest_power_below(mpq_class(7, 8), mpq_class(3, 7)) == 7);
}
