#pragma once

#include "thrsat/solvers.hpp"

#include <optional>
#include <string>

namespace thrsat {

// Decider selection shared by the CLI, the Python module and the tests.
// algo: "auto" (by width: <= 2 thr2, 3 thr3, else thrk), "thr2", "maj3",
// "above-half", "thr3", "thrk".
struct DecideOptions {
    Threshold rho = Threshold::from_fraction(1, 2);
    std::uint32_t k = 0;  // 0: width of the formula
    bool gt = false;      // strict comparison
    std::string algo = "auto";
    bool fallback_oracle = false;  // brute count (n <= 26) when the budget trips
    std::optional<std::uint64_t> budget_leaves;
};

struct DecideOutcome {
    Verdict verdict;
    bool budget_exceeded = false;
    bool used_fallback = false;
};

// Throws Error(budget_exceeded) when the budget trips and no fallback applies.
DecideOutcome run_decide(const CnfFormula& f, const DecideOptions& opt);

}  // namespace thrsat
