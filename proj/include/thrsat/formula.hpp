#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace thrsat {

enum class ErrorKind {
    parse,
    width,
    budget_exceeded,
    role_missing,
    too_large,
    invalid_argument,
    too_many_long_clauses,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg, std::size_t line = 0)
        : std::runtime_error(msg), kind_(kind), line_(line) {}
    ErrorKind kind() const { return kind_; }
    // 1-based input line for parse errors, 0 otherwise.
    std::size_t line() const { return line_; }

private:
    ErrorKind kind_;
    std::size_t line_;
};

struct Literal {
    std::uint32_t var = 1;
    bool positive = true;

    Literal() = default;
    Literal(std::uint32_t v, bool pos) : var(v), positive(pos) {}
    static Literal from_int(long long x) {
        return x > 0 ? Literal(static_cast<std::uint32_t>(x), true)
                     : Literal(static_cast<std::uint32_t>(-x), false);
    }
    long long to_int() const { return positive ? (long long)var : -(long long)var; }
    Literal operator~() const { return Literal(var, !positive); }
    // Dense code: x -> 2v, not x -> 2v+1. Orders by variable, positive first.
    std::uint32_t code() const { return 2 * var + (positive ? 0u : 1u); }

    friend bool operator==(const Literal&, const Literal&) = default;
    friend std::strong_ordering operator<=>(const Literal& a, const Literal& b) {
        return a.code() <=> b.code();
    }
};

struct Clause {
    std::vector<Literal> lits;

    Clause() = default;
    explicit Clause(std::vector<Literal> l) : lits(std::move(l)) {}
    Clause(std::initializer_list<int> xs);
    std::size_t width() const { return lits.size(); }
    bool empty() const { return lits.empty(); }
    bool contains(Literal l) const;
    bool mentions(std::uint32_t var) const;

    friend bool operator==(const Clause&, const Clause&) = default;
};

enum class Role : std::uint8_t { plain, existential, probabilistic };

struct CnfFormula {
    std::uint32_t num_vars = 0;
    std::vector<Clause> clauses;
    // roles[v-1] for variable v; empty means all plain.
    std::vector<Role> roles;

    CnfFormula() = default;
    CnfFormula(std::uint32_t n, std::vector<Clause> cs) : num_vars(n), clauses(std::move(cs)) {}

    std::size_t max_width() const;
    std::size_t size() const;  // sum of widths
    bool has_empty_clause() const;
    Role role(std::uint32_t v) const {
        return roles.empty() ? Role::plain : roles.at(v - 1);
    }
    void set_role(std::uint32_t v, Role r);
    // Throws Error(invalid_argument) if a literal is out of range.
    void validate() const;
};

CnfFormula parse_dimacs(std::string_view text);
std::string serialize_dimacs(const CnfFormula& f);
CnfFormula normalize(const CnfFormula& f);
bool is_normalized(const CnfFormula& f);

// rho = a / (2^v * b), b odd, gcd(a, 2^v b) = 1, 0 < rho < 1.
struct Threshold {
    mpz_class a = 1;
    std::uint32_t v = 1;
    mpz_class b = 1;

    static Threshold from_fraction(const mpz_class& p, const mpz_class& q);
    static Threshold from_fraction(long p, long q) { return from_fraction(mpz_class(p), mpz_class(q)); }
    // Accepts only "p/q" with decimal integers.
    static Threshold parse(std::string_view s);
    mpq_class value() const;
    mpz_class denominator() const;  // 2^v * b
    std::string str() const;        // "p/q"
    friend bool operator==(const Threshold& x, const Threshold& y) {
        return x.a == y.a && x.v == y.v && x.b == y.b;
    }
};

struct ExactCount {
    mpz_class value = 0;
    std::optional<std::uint64_t> term_bound;
};

enum class Ordering { LT, EQ, GT };
const char* ordering_name(Ordering o);

Ordering compare_count_to_threshold(const ExactCount& N, const Threshold& rho, std::uint32_t n);
Ordering compare_count_to_threshold(const mpz_class& N, const Threshold& rho, std::uint32_t n);

mpz_class pow2(std::uint64_t e);
std::size_t popcount(const mpz_class& x);

std::string literal_str(Literal l);
std::string clause_str(const Clause& c);

}  // namespace thrsat
