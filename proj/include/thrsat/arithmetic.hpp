#pragma once

#include "thrsat/formula.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace thrsat {

Threshold canonicalize_threshold(const mpz_class& p, const mpz_class& q);

// Smallest d >= 1 with 2^d = 1 (mod b); b odd.
std::uint64_t ord2(const mpz_class& b);

struct BinaryExpansion {
    // rho = sum 2^{exponents[i]}, strictly decreasing.
    std::vector<long long> exponents;
    struct Period {
        std::size_t preperiod_terms;  // s: terms coming from the integer part q
        std::size_t period_terms;     // t: ones in r's binary representation
        std::uint64_t shift;          // d: exponent drop per period
    };
    std::optional<Period> period;  // absent for dyadic rho (finite expansion)
    bool terminated = false;       // dyadic expansion fully listed
};

BinaryExpansion binary_expansion(const Threshold& rho, std::size_t count);

// Arithmetic gap: every N with popcount(N) <= m and N < rho 2^n
// satisfies N <= (rho - eta) 2^n. Throws too_large for m > 2^24.
mpq_class eta(const Threshold& rho, std::uint64_t m);

// Largest integer < rho 2^n that is a sum of at most m powers of two (exponents >= 0).
ExactCount greedy_max_power_sum(const Threshold& rho, std::uint32_t n, std::uint64_t m);

// Smallest integer q >= 0 with c^q < x, for rational 0 < c < 1 and x > 0.
mpz_class smallest_power_below(const mpq_class& c, const mpq_class& x);

// Smallest integer e >= 0 with (num/den)^e >= x, for num > den > 0.
mpz_class smallest_power_at_least(const mpq_class& base, const mpq_class& x);

// ceil(72 ln(1/eps)), exact via rational bounds on exp.
mpz_class c2_constant(const mpq_class& eps);

// c(alpha) = 1 + ceil(log_{4/3}(1/alpha)).
std::uint64_t c_alpha(const Threshold& alpha);

// floor(log2(1/rho)) and ceil(log2(1/rho)).
std::uint64_t floor_log2_inv(const Threshold& rho);
std::uint64_t ceil_log2_inv(const Threshold& rho);

mpq_class pow_q(const mpq_class& base, std::uint64_t e);

}  // namespace thrsat
