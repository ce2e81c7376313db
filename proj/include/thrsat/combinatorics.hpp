#pragma once

#include "thrsat/decomposition.hpp"
#include "thrsat/formula.hpp"
#include "thrsat/param.hpp"

#include <functional>
#include <optional>
#include <variant>
#include <vector>

namespace thrsat {

struct DisjointSet {
    std::vector<std::size_t> clause_indices;
    std::optional<std::size_t> width_filter;
    bool maximal = true;
    std::size_t size() const { return clause_indices.size(); }
};

struct Sunflower {
    std::vector<Literal> core;  // sorted, consistent
    std::vector<std::size_t> petal_indices;
    std::size_t weight() const { return core.size(); }
    std::size_t size() const { return petal_indices.size(); }
};

struct ExtractionOutcome {
    std::variant<Sunflower, DecompositionTree> value;
    // Stage that triggered a sunflower (0 for the first disjoint set).
    std::size_t stage = 0;
    bool is_sunflower() const { return std::holds_alternative<Sunflower>(value); }
    const Sunflower& sunflower() const { return std::get<Sunflower>(value); }
    const DecompositionTree& tree() const { return std::get<DecompositionTree>(value); }
};

// Greedy in clause order. Without a filter every clause is eligible.
DisjointSet maximal_disjoint_set(const CnfFormula& f, std::optional<std::size_t> width_filter = std::nullopt);
bool is_variable_disjoint(const CnfFormula& f, const std::vector<std::size_t>& idx);
bool is_maximal_disjoint(const CnfFormula& f, const DisjointSet& s);

// Satisfying assignments of variable-disjoint clauses, as lists of true
// literals; per clause lexicographic with true before false.
void for_each_satisfying_assignment(const std::vector<Clause>& s,
                                    const std::function<void(const std::vector<Literal>&)>& fn);
std::vector<std::vector<Literal>> enumerate_satisfying_assignments(const CnfFormula& f, const DisjointSet& s);
mpz_class satisfying_assignment_count(const std::vector<Clause>& s);

bool is_valid_sunflower(const CnfFormula& f, const Sunflower& sf);

// 3-CNF extraction: a 0-sunflower of size Z, a 1-sunflower of size Q, or a
// tree. Q and Z may be schedule parameters known only from below.
ExtractionOutcome extract_3cnf(const CnfFormula& f, const Param& Z, const Param& Q, Budget& budget);
ExtractionOutcome extract_3cnf(const CnfFormula& f, std::uint64_t Z, std::uint64_t Q);

// k-CNF extraction for k = Q.size() + 1.
ExtractionOutcome extract_kcnf(const CnfFormula& f, const std::vector<Param>& Q, Budget& budget);
ExtractionOutcome extract_kcnf(const CnfFormula& f, const std::vector<std::uint64_t>& Q);

// Exact tree through staged disjoint sets with the given width filters
// (nullopt = any width). Leaves must be 1-CNFs.
DecompositionTree decompose_staged(const CnfFormula& f, const std::vector<std::optional<std::size_t>>& filters,
                                   Budget& budget);

// Sunflower with exactly this core and at least Q petals, via exact set packing.
std::optional<Sunflower> find_sunflower_with_core(const CnfFormula& f, const std::vector<Literal>& core, std::size_t Q);
std::optional<Sunflower> find_sunflower_with_core(const CnfFormula& f, const std::vector<Literal>& core,
                                                  const Param& Q, const std::string& what);
// Size of the largest packing (used by tests and the debug sandwich check).
std::size_t max_sunflower_size(const CnfFormula& f, const std::vector<Literal>& core);

}  // namespace thrsat
