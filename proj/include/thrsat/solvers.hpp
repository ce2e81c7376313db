#pragma once

#include "thrsat/combinatorics.hpp"
#include "thrsat/decomposition.hpp"
#include "thrsat/formula.hpp"
#include "thrsat/param.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace thrsat {

// A subformula whose satisfying fraction is below the threshold. Indices point
// into normalize(F), the formula every decider works on.
struct NoWitness {
    std::string kind;  // "disjoint-set", "literal-petal-pattern", "two-clause-set"
    std::vector<std::size_t> clause_indices;
    mpq_class bound;  // upper bound on the fraction satisfying these clauses
};

enum class CertificateKind { exact_count, no_witness, hitting_set, ledger };
const char* certificate_kind_name(CertificateKind k);

struct Certificate {
    CertificateKind kind = CertificateKind::exact_count;
    std::optional<ExactCount> count;
    std::shared_ptr<const DecompositionTree> tree;
    std::optional<NoWitness> witness;
    std::vector<Literal> hitting_set;
};

struct SunflowerLedgerEntry {
    std::vector<Literal> core;
    std::size_t size = 0;
    std::vector<std::uint64_t> r_snapshot;  // r before the increment
};

struct SunflowerLedger {
    CnfFormula psi;
    std::vector<SunflowerLedgerEntry> entries;
    std::vector<std::uint64_t> r;  // r_1..r_{k-2}
};

struct Verdict {
    bool yes = false;
    std::string branch_tag;
    Certificate certificate;
    std::vector<std::pair<std::string, std::string>> params_used;
    std::uint64_t leaves_expanded = 0;
    std::optional<SunflowerLedger> ledger;
    std::optional<mpz_class> good_count;  // two-level problems only
};

// Re-check a NO witness on its own clauses: split into variable-connected
// components, brute-count each, and return the exact satisfying fraction.
mpq_class witness_fraction(const CnfFormula& normalized, const NoWitness& w);
bool verify_no_witness(const CnfFormula& normalized, const NoWitness& w, const Threshold& rho);

// ---- Parameter schedules --------------------------------------------------

// Test hook: replace computed parameters with fixed small values. Correctness
// of NO answers outside the exact-count branch is then not guaranteed.
struct ScheduleOverride {
    std::optional<std::uint64_t> z;
    std::vector<std::uint64_t> q;  // 3-CNF: q_0..q_t; k-CNF: per weight w = 1..k-2
    std::vector<std::uint64_t> t;  // k-CNF only: per weight w = 2..k-2 (index w-2)
};

// Parameters of the 3-CNF threshold algorithm.
class Schedule3 {
public:
    Schedule3(const Threshold& rho, const ScheduleOverride& ov = {});
    std::uint64_t z() const { return z_; }
    std::uint64_t t() const { return t_; }
    const Param& q(std::uint64_t r) const { return q_.at(r); }
    std::vector<std::pair<std::string, std::string>> describe() const;

private:
    std::uint64_t z_ = 0, t_ = 0;
    std::vector<Param> q_;
};

// Parameters of the k-CNF threshold algorithm; q and t are computed on demand
// for each prefix of the r-vector and cached.
class ScheduleK {
public:
    ScheduleK(const Threshold& rho, std::uint32_t k, const ScheduleOverride& ov = {});
    std::uint32_t k() const { return k_; }
    std::uint64_t z() const { return z_; }
    std::uint64_t t1() const { return t1_; }
    const mpq_class& alpha() const { return alpha_; }
    const mpq_class& beta() const { return beta_; }
    // q_w(r[1..w]) and t_w(r[1..w-1]); prefix holds exactly w resp. w-1 entries.
    Param q(std::uint32_t w, const std::vector<std::uint64_t>& prefix);
    Param t(std::uint32_t w, const std::vector<std::uint64_t>& prefix);
    Param T(std::uint32_t w);
    std::vector<std::pair<std::string, std::string>> describe() const;

private:
    Param m_lower_bound() const;
    Param eta_bound(std::uint32_t width_gap, const Param& denom) const;
    bool has_later_prefix(const std::vector<std::uint64_t>& prefix);

    Threshold rho_;
    std::uint32_t k_;
    std::uint64_t z_ = 0, t1_ = 0;
    mpq_class alpha_, beta_, gamma_;
    ScheduleOverride ov_;
    std::map<std::pair<std::uint32_t, std::vector<std::uint64_t>>, Param> qcache_, tcache_;
};

// Smallest q >= 0 with (1 - 2^-j)^q < x / denom, where denom may be a lower
// bound; the result is then a lower bound as well.
Param smallest_power_below_param(std::uint32_t j, const mpq_class& x, const Param& denom);

// ---- Deciders -------------------------------------------------------------
// Every decider normalizes its input first. Budget overruns throw
// Error(budget_exceeded).

Verdict decide_thr2sat(const CnfFormula& f, const Threshold& alpha, Budget& budget);
Verdict decide_thr2sat(const CnfFormula& f, const Threshold& alpha);

Verdict decide_maj3sat(const CnfFormula& f, Budget& budget);
Verdict decide_maj3sat(const CnfFormula& f);

// rho > 1/2.
Verdict decide_thr3sat_above_half(const CnfFormula& f, const Threshold& rho, Budget& budget);
Verdict decide_thr3sat_above_half(const CnfFormula& f, const Threshold& rho);

Verdict decide_thr3sat(const CnfFormula& f, const Threshold& rho, Budget& budget, const ScheduleOverride& ov = {});
Verdict decide_thr3sat(const CnfFormula& f, const Threshold& rho);

// k = 0 picks max(2, width of f).
Verdict decide_thrksat(const CnfFormula& f, const Threshold& rho, std::uint32_t k, Budget& budget,
                       const ScheduleOverride& ov = {});
Verdict decide_thrksat(const CnfFormula& f, const Threshold& rho, std::uint32_t k = 0);

// Strict variants: #SAT(F) > rho 2^n.
Verdict decide_gt_thr2sat(const CnfFormula& f, const Threshold& alpha, Budget& budget);
Verdict decide_gt_maj3sat(const CnfFormula& f, Budget& budget);
Verdict decide_gt_thr3sat(const CnfFormula& f, const Threshold& rho, Budget& budget,
                          const ScheduleOverride& ov = {});
Verdict decide_gt_thrksat(const CnfFormula& f, const Threshold& rho, std::uint32_t k, Budget& budget,
                          const ScheduleOverride& ov = {});

// b_0..b_t with #SAT(F) = sum_j b_j 2^{n-j} + lower terms.
std::vector<int> msb_count(const CnfFormula& f, std::uint32_t t, Budget& budget);
std::vector<int> msb_count(const CnfFormula& f, std::uint32_t t);

}  // namespace thrsat
