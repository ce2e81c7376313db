#pragma once

#include "thrsat/formula.hpp"

#include <functional>
#include <optional>
#include <string>

namespace thrsat {

// A transformation together with the relation it claims between
// #SAT(input) and #SAT(output).
struct ReductionRecord {
    std::string name;
    CnfFormula input;
    CnfFormula output;
    std::string relation;  // human-readable form of `holds`
    std::function<bool(const mpz_class& in_count, const mpz_class& out_count)> holds;
};

// F'(x, y) = (y_1 or ... or y_n) and F(x), with y_j = x_{n+j}.
// #F' = (2^n - 1) #F, so #F > 2^{n-1}  <=>  #F' >= 2^{2n-1}.
CnfFormula gt_to_maj(const CnfFormula& f);

// F' = (not x_{n+1} or F) and (x_{n+1} or G), #G = 2^{n-1} + 1.
// #F' = #F + 2^{n-1} + 1, so #F >= 2^{n-1}  <=>  #F' > 2^n. Requires n >= 1.
CnfFormula maj_to_gt(const CnfFormula& f);

// Exactly t models on n variables: the assignment read as an integer
// (x_1 most significant) is at most t - 1. At most n clauses of width <= n.
CnfFormula exact_count_formula(std::uint32_t n, const mpz_class& t);

// F' = AND_i (x_{n+1} or C_i) and (not x_{n+1} or y_1 or ... or y_t), y_j = x_{n+1+j}.
// #F' = 2^t #F + 2^n (2^t - 1). Requires 1 <= t <= n.
CnfFormula add_one_long_clause(const CnfFormula& f, std::uint32_t t);

// Adds x_{n+1} to every clause: #F' = 2^n + #F, so #F' > 2^n iff F is satisfiable.
CnfFormula gt_hardness_gadget(const CnfFormula& f);

// F(x) and F(y) on fresh copies: #F' = #F^2.
CnfFormula square(const CnfFormula& f);

// Names: gt-to-maj, maj-to-gt, exact-count (input supplies n), add-long-clause,
// gt-gadget, square. `t` is required by exact-count and add-long-clause.
ReductionRecord make_reduction(const std::string& name, const CnfFormula& f, std::optional<mpz_class> t = {});
const std::vector<std::string>& reduction_names();

// Brute-counts both sides (oracle range) and evaluates the claimed relation.
bool check_reduction(const ReductionRecord& r);

}  // namespace thrsat
