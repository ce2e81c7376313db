#pragma once

#include "thrsat/formula.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace thrsat {

constexpr std::uint32_t kBruteMaxVars = 26;
constexpr std::uint32_t kTwoLevelMaxVars = 22;
constexpr std::size_t kSunflowerOracleMaxClauses = 24;

// Exact #SAT by enumeration; n <= 26.
ExactCount brute_count(const CnfFormula& f);

// For each assignment to the variables NOT in `low_vars` (ordered by `high_vars`,
// first variable = least significant bit), the number of satisfying assignments
// of the `low_vars`.
std::vector<std::uint64_t> brute_count_by_assignment(const CnfFormula& f, const std::vector<std::uint32_t>& low_vars,
                                                     const std::vector<std::uint32_t>& high_vars);

struct TwoLevelResult {
    bool emaj = false;    // exists x: Pr_y[F] >= sigma
    bool majmaj = false;  // Pr_x[ Pr_y[F] >= sigma ] >= rho
    mpz_class good_count = 0;
};

// Existential/outer variables are role e, probabilistic/inner are role p.
TwoLevelResult brute_two_level(const CnfFormula& f, const Threshold& rho, const Threshold& sigma);

// Largest number of clauses that contain every core literal and become
// pairwise variable-disjoint once the core is removed. <= 24 candidate clauses.
std::size_t brute_max_sunflower(const CnfFormula& f, const std::vector<Literal>& core);

struct GeneratorConfig {
    std::uint32_t n = 0;
    std::size_t clause_count = 0;
    std::uint32_t k = 3;
    std::uint64_t seed = 0;
    bool width_mix = false;                 // widths uniform in [1, k]
    std::optional<std::uint32_t> role_split;  // vars 1..split existential, rest probabilistic
};

// Deterministic across platforms: mt19937_64 plus explicit rejection sampling.
CnfFormula random_kcnf(const GeneratorConfig& cfg);

// Deterministic uniform draws built on mt19937_64 (no std distributions).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    std::uint64_t next() { return gen_(); }
    std::uint64_t below(std::uint64_t bound);
    bool coin() { return (next() >> 63) != 0; }

private:
    std::mt19937_64 gen_;
};

}  // namespace thrsat
