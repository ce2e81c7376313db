#pragma once

#include "thrsat/oracle.hpp"
#include "thrsat/solvers.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>

namespace thrsat::test {

inline Threshold th(long p, long q) { return Threshold::from_fraction(p, q); }

inline bool truth(const CnfFormula& f, const Threshold& rho, bool strict = false) {
    Ordering o = compare_count_to_threshold(brute_count(normalize(f)), rho, f.num_vars);
    return strict ? o == Ordering::GT : o != Ordering::LT;
}

inline CnfFormula random_formula(std::uint32_t n, std::size_t m, std::uint32_t k, std::uint64_t seed,
                                 bool width_mix = false) {
    GeneratorConfig g;
    g.n = n;
    g.clause_count = m;
    g.k = k;
    g.seed = seed;
    g.width_mix = width_mix;
    return random_kcnf(g);
}

// Clauses over fresh variables: count disjoint clauses of the given width.
inline CnfFormula disjoint_clauses(std::size_t count, std::uint32_t width) {
    CnfFormula f(static_cast<std::uint32_t>(count * width), {});
    std::uint32_t v = 1;
    for (std::size_t i = 0; i < count; ++i) {
        Clause c;
        for (std::uint32_t j = 0; j < width; ++j) c.lits.emplace_back(v++, true);
        f.clauses.push_back(c);
    }
    return f;
}

}  // namespace thrsat::test
