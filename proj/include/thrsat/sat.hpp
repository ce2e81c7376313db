#pragma once

#include "thrsat/decomposition.hpp"
#include "thrsat/formula.hpp"

#include <optional>
#include <vector>

namespace thrsat {

// 2-SAT by strongly connected components of the implication graph.
// Requires width <= 2. Returns a model (index v-1 -> value) when satisfiable.
std::optional<std::vector<bool>> two_sat_solve(const CnfFormula& f);
bool two_sat_satisfiable(const CnfFormula& f);

// Unit propagation plus chronological branching; each decision charges one
// node to the budget.
std::optional<std::vector<bool>> dpll_solve(const CnfFormula& f, Budget& budget);
bool dpll_satisfiable(const CnfFormula& f, Budget& budget);

bool satisfies(const CnfFormula& f, const std::vector<bool>& model);

}  // namespace thrsat
