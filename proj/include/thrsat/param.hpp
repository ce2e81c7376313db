#pragma once

#include "thrsat/formula.hpp"

#include <string>

namespace thrsat {

// A schedule parameter that is either known exactly or only bounded from
// below. Galactic values are never materialized; every use compares them
// against a small instance quantity, which the lower bound usually settles.
struct Param {
    mpz_class value = 0;
    bool exact = true;

    static Param of(const mpz_class& v) { return Param{v, true}; }
    static Param of(unsigned long v) { return Param{mpz_class(v), true}; }
    static Param at_least(const mpz_class& v) { return Param{v, false}; }

    // "13" or ">=1234".
    std::string str() const { return (exact ? "" : ">=") + value.get_str(); }
};

// True iff the parameter is <= x. Throws budget_exceeded when only a lower
// bound is known and it does not settle the comparison.
inline bool param_at_most(const Param& p, const mpz_class& x, const std::string& what) {
    if (p.value > x) return false;
    if (p.exact) return true;
    throw Error(ErrorKind::budget_exceeded,
                "parameter " + what + " (" + p.str() + ") cannot be materialized to compare against " + x.get_str());
}

}  // namespace thrsat
