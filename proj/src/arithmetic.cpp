#include "thrsat/arithmetic.hpp"

namespace thrsat {

namespace {

// Exponents of the set bits of x, highest first.
std::vector<long long> bits_desc(const mpz_class& x) {
    std::vector<long long> out;
    if (x <= 0) return out;
    for (long long i = static_cast<long long>(mpz_sizeinbase(x.get_mpz_t(), 2)) - 1; i >= 0; --i)
        if (mpz_tstbit(x.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) out.push_back(i);
    return out;
}

mpq_class pow2q(long long e) {
    mpq_class r = e >= 0 ? mpq_class(pow2(e)) : mpq_class(mpz_class(1), pow2(-e));
    r.canonicalize();
    return r;
}

struct Decomp {
    std::vector<long long> q_bits;  // a_1..a_s (before subtracting v)
    std::vector<long long> r_bits;  // r_1..r_t
    std::uint64_t d = 0;
    mpz_class r = 0;
};

Decomp decompose(const Threshold& rho) {
    Decomp dc;
    if (rho.b == 1) {
        dc.q_bits = bits_desc(rho.a);
        return dc;
    }
    dc.d = ord2(rho.b);
    mpz_class c = (pow2(dc.d) - 1) / rho.b;
    mpz_class ac = rho.a * c;
    mpz_class den = pow2(dc.d) - 1;
    mpz_class q = ac / den;
    dc.r = ac - q * den;
    dc.q_bits = bits_desc(q);
    dc.r_bits = bits_desc(dc.r);
    return dc;
}

}  // namespace

Threshold canonicalize_threshold(const mpz_class& p, const mpz_class& q) { return Threshold::from_fraction(p, q); }

std::uint64_t ord2(const mpz_class& b) {
    if (b < 1 || mpz_even_p(b.get_mpz_t())) throw Error(ErrorKind::invalid_argument, "ord2 needs an odd b >= 1");
    if (b == 1) return 1;
    mpz_class x = 2 % b;
    std::uint64_t d = 1;
    while (x != 1) {
        x = (x * 2) % b;
        ++d;
    }
    return d;
}

BinaryExpansion binary_expansion(const Threshold& rho, std::size_t count) {
    BinaryExpansion be;
    Decomp dc = decompose(rho);
    const long long v = rho.v;
    for (auto e : dc.q_bits) {
        if (be.exponents.size() == count) return be;
        be.exponents.push_back(e - v);
    }
    if (rho.b == 1) {
        be.terminated = true;
        return be;
    }
    be.period = BinaryExpansion::Period{dc.q_bits.size(), dc.r_bits.size(), dc.d};
    // Periods start at j = 1: r/(2^d-1) = sum_{j>=1} r 2^{-jd}.
    for (long long j = 1; be.exponents.size() < count; ++j)
        for (auto ri : dc.r_bits) {
            if (be.exponents.size() == count) break;
            be.exponents.push_back(ri - j * static_cast<long long>(dc.d) - v);
        }
    return be;
}

mpq_class eta(const Threshold& rho, std::uint64_t m) {
    if (m == 0) throw Error(ErrorKind::invalid_argument, "eta needs m >= 1");
    if (m > (1ull << 24)) throw Error(ErrorKind::too_large, "eta: m too large to materialize");
    Decomp dc = decompose(rho);
    const long long v = rho.v;
    const std::size_t s = dc.q_bits.size();
    if (rho.b == 1) {
        if (m >= s) return pow2q(dc.q_bits.back() - static_cast<long long>(m) + static_cast<long long>(s) - 1 - v);
        mpq_class tail = 0;
        for (std::size_t i = m; i < s; ++i) tail += pow2q(dc.q_bits[i] - v);
        return tail;
    }
    const mpq_class rv = rho.value();
    if (m <= s) {
        mpq_class prefix = 0;
        for (std::size_t i = 0; i < m; ++i) prefix += pow2q(dc.q_bits[i] - v);
        return rv - prefix;
    }
    // Tail after J full periods and i0 terms of period J+1.
    const std::uint64_t t = dc.r_bits.size();
    const std::uint64_t mp = m - s;
    const std::uint64_t J = mp / t, i0 = mp % t;
    const long long d = static_cast<long long>(dc.d);
    mpq_class frac(dc.r, pow2(dc.d) - 1);
    frac.canonicalize();
    mpq_class inner = frac * pow2q(-v);
    for (std::uint64_t i = 0; i < i0; ++i) inner -= pow2q(dc.r_bits[i] - d - v);
    return inner * pow2q(-static_cast<long long>(J) * d);
}

ExactCount greedy_max_power_sum(const Threshold& rho, std::uint32_t n, std::uint64_t m) {
    // Work with integers: S < a 2^n / den  <=>  S * den < a 2^n.
    const mpz_class den = rho.denominator();
    const mpz_class X = rho.a * pow2(n);
    mpz_class S = 0;
    std::uint64_t used = 0;
    for (; used < m; ++used) {
        // Largest e >= 0 with (S + 2^e) * den < X.
        if ((S + 1) * den >= X) break;
        mpz_class room = X - S * den;  // need 2^e * den < room
        long long e = static_cast<long long>(mpz_sizeinbase(room.get_mpz_t(), 2));
        while (e >= 0 && pow2(e) * den >= room) --e;
        S += pow2(e);
    }
    ExactCount r;
    r.value = S;
    r.term_bound = used;
    return r;
}

mpq_class pow_q(const mpq_class& base, std::uint64_t e) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
    mpq_class r(num, den);
    r.canonicalize();
    return r;
}

mpz_class smallest_power_below(const mpq_class& c, const mpq_class& x) {
    if (!(c > 0 && c < 1) || x <= 0) throw Error(ErrorKind::invalid_argument, "smallest_power_below needs 0<c<1, x>0");
    if (x > 1) return 0;
    std::uint64_t hi = 1;
    while (pow_q(c, hi) >= x) hi *= 2;
    std::uint64_t lo = hi / 2;  // c^lo >= x (or lo = 0 with c^0 = 1 >= x)
    while (hi - lo > 1) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (pow_q(c, mid) < x)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

mpz_class smallest_power_at_least(const mpq_class& base, const mpq_class& x) {
    if (base <= 1) throw Error(ErrorKind::invalid_argument, "smallest_power_at_least needs base > 1");
    if (x <= 1) return 0;
    std::uint64_t hi = 1;
    while (pow_q(base, hi) < x) hi *= 2;
    std::uint64_t lo = hi / 2;
    while (hi - lo > 1) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (pow_q(base, mid) >= x)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

namespace {

// Bounds lo <= e^{1/72} <= hi from a K-term Taylor sum.
void exp_bounds(unsigned K, mpq_class& lo, mpq_class& hi) {
    const mpq_class x(1, 72);
    mpq_class term = 1, sum = 0;
    for (unsigned k = 0; k <= K; ++k) {
        sum += term;
        term = term * x / (k + 1);
    }
    lo = sum;
    hi = sum + 3 * term;  // remainder < x^{K+1}/(K+1)! * e^x and e^x < 3
}

// Is e^{C/72} >= y ? Exact for C > 0 since e^{C/72} is irrational.
bool exp_at_least(std::uint64_t C, const mpq_class& y) {
    for (unsigned K = 16;; K *= 2) {
        mpq_class lo, hi;
        exp_bounds(K, lo, hi);
        if (pow_q(lo, C) >= y) return true;
        if (pow_q(hi, C) < y) return false;
    }
}

}  // namespace

mpz_class c2_constant(const mpq_class& eps) {
    if (!(eps > 0 && eps < 1)) throw Error(ErrorKind::invalid_argument, "c2 needs 0 < eps < 1");
    mpq_class y = 1 / eps;
    // ln y < bitlen(ceil y), so 72 * bitlen bounds the answer.
    mpz_class cy = y.get_num() / y.get_den() + 1;
    std::uint64_t hi = 72 * mpz_sizeinbase(cy.get_mpz_t(), 2) + 1, lo = 0;  // lo fails (e^0 = 1 < y)
    while (hi - lo > 1) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (exp_at_least(mid, y))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

std::uint64_t c_alpha(const Threshold& alpha) {
    mpq_class inv = 1 / alpha.value();
    return 1 + smallest_power_at_least(mpq_class(4, 3), inv).get_ui();
}

std::uint64_t floor_log2_inv(const Threshold& rho) {
    // Largest t with 2^t <= 1/rho, i.e. rho 2^t <= 1.
    mpq_class r = rho.value();
    std::uint64_t t = 0;
    while (r * pow2(t + 1) <= 1) ++t;
    return t;
}

std::uint64_t ceil_log2_inv(const Threshold& rho) {
    mpq_class r = rho.value();
    std::uint64_t t = 0;
    while (r * pow2(t) < 1) ++t;
    return t;
}

}  // namespace thrsat
