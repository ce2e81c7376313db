#pragma once

#include "thrsat/solvers.hpp"

#include <vector>

namespace thrsat {

// Clauses split by the roles of their variables. Width-1 clauses go with
// their variable's side; mixed clauses hold one literal of each role.
struct ClausePartition {
    CnfFormula px, py, pxy;
    std::vector<std::uint32_t> x_vars, y_vars;
};

// Requires every variable to carry a role (role_missing otherwise) and width <= 2.
ClausePartition partition_clauses(const CnfFormula& f);

// Sum over tree leaves of models that also satisfy `units`, over `free_vars`
// variables in total (path-fixed variables included).
mpz_class count_tree_with_units(const DecompositionTree& t, const std::vector<Literal>& units,
                                std::uint32_t free_vars);

// exists x: Pr_y[F(x, y)] >= rho.
Verdict decide_emaj2sat(const CnfFormula& f, const Threshold& rho, Budget& budget);
Verdict decide_emaj2sat(const CnfFormula& f, const Threshold& rho);

// Pr_x[ Pr_y[F(x, y)] >= sigma ] >= rho; good_count holds the number of good x.
Verdict decide_majmaj2sat(const CnfFormula& f, const Threshold& rho, const Threshold& sigma, Budget& budget);
Verdict decide_majmaj2sat(const CnfFormula& f, const Threshold& rho, const Threshold& sigma);

// #SAT(F2 AND longs) >= rho 2^n, by inclusion-exclusion over the long clauses.
// Allows at most c * log2(n + 2) long clauses.
Verdict decide_maj2sat_long_clauses(const CnfFormula& f2, const std::vector<Clause>& longs, const Threshold& rho,
                                    Budget& budget, unsigned c = 1);
Verdict decide_maj2sat_long_clauses(const CnfFormula& f2, const std::vector<Clause>& longs, const Threshold& rho);

}  // namespace thrsat
