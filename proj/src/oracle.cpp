#include "thrsat/oracle.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace thrsat {

namespace {

constexpr std::uint64_t kLanePattern[6] = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
};

struct CompiledClause {
    std::uint64_t lane_mask = 0;                  // lanes satisfied by low-position literals
    std::vector<std::pair<std::uint32_t, bool>> high;  // (bit of outer index, positive)
};

}  // namespace

std::vector<std::uint64_t> brute_count_by_assignment(const CnfFormula& f, const std::vector<std::uint32_t>& low_vars,
                                                     const std::vector<std::uint32_t>& high_vars) {
    const std::uint32_t N = static_cast<std::uint32_t>(low_vars.size() + high_vars.size());
    if (N != f.num_vars) throw Error(ErrorKind::invalid_argument, "variable split must cover every variable");
    if (N > kBruteMaxVars) throw Error(ErrorKind::too_large, "brute force limited to 26 variables");
    std::vector<std::uint32_t> pos(f.num_vars + 1, UINT32_MAX);
    std::uint32_t p = 0;
    for (auto v : low_vars) pos.at(v) = p++;
    for (auto v : high_vars) pos.at(v) = p++;
    for (std::uint32_t v = 1; v <= f.num_vars; ++v)
        if (pos[v] == UINT32_MAX) throw Error(ErrorKind::invalid_argument, "variable split must cover every variable");

    const std::uint32_t L = static_cast<std::uint32_t>(low_vars.size());
    const std::uint32_t lanes_log = std::min<std::uint32_t>(6, N);
    const std::uint64_t full = lanes_log == 6 ? ~0ull : ((1ull << (1u << lanes_log)) - 1);
    const std::uint32_t outer_bits = N - lanes_log;

    std::vector<CompiledClause> cs;
    cs.reserve(f.clauses.size());
    for (const auto& c : f.clauses) {
        CompiledClause cc;
        for (Literal l : c.lits) {
            std::uint32_t q = pos.at(l.var);
            if (q < 6)
                cc.lane_mask |= l.positive ? kLanePattern[q] : ~kLanePattern[q];
            else
                cc.high.emplace_back(q - 6, l.positive);
        }
        cs.push_back(std::move(cc));
    }
    // Clauses without outer literals first: they prune fastest.
    std::stable_sort(cs.begin(), cs.end(),
                     [](const CompiledClause& a, const CompiledClause& b) { return a.high.size() < b.high.size(); });

    const std::uint32_t H = N - L;
    std::vector<std::uint64_t> counts(std::size_t(1) << H, 0);
    const std::uint64_t outer = 1ull << outer_bits;
    for (std::uint64_t i = 0; i < outer; ++i) {
        std::uint64_t word = full;
        for (const auto& cc : cs) {
            bool sat = false;
            for (auto [bit, positive] : cc.high)
                if (((i >> bit) & 1) == (positive ? 1u : 0u)) {
                    sat = true;
                    break;
                }
            if (sat) continue;
            word &= cc.lane_mask;
            if (!word) break;
        }
        if (!word) continue;
        if (L >= lanes_log) {
            counts[i >> (L - lanes_log)] += std::popcount(word);
        } else {
            const std::uint32_t group = 1u << L;
            const std::uint64_t gmask = group == 64 ? ~0ull : ((1ull << group) - 1);
            const std::uint32_t groups = (1u << lanes_log) >> L;
            for (std::uint32_t g = 0; g < groups; ++g) {
                std::uint64_t part = (word >> (g * group)) & gmask;
                if (part) counts[(i << (lanes_log - L)) | g] += std::popcount(part);
            }
        }
    }
    return counts;
}

ExactCount brute_count(const CnfFormula& f) {
    if (f.num_vars > kBruteMaxVars) throw Error(ErrorKind::too_large, "brute force limited to 26 variables");
    std::vector<std::uint32_t> all;
    for (std::uint32_t v = 1; v <= f.num_vars; ++v) all.push_back(v);
    auto counts = brute_count_by_assignment(f, all, {});
    ExactCount r;
    r.value = mpz_class(std::to_string(counts[0]));
    return r;
}

TwoLevelResult brute_two_level(const CnfFormula& f, const Threshold& rho, const Threshold& sigma) {
    if (f.num_vars > kTwoLevelMaxVars) throw Error(ErrorKind::too_large, "two-level brute force limited to 22 variables");
    std::vector<std::uint32_t> xs, ys;
    for (std::uint32_t v = 1; v <= f.num_vars; ++v) {
        switch (f.role(v)) {
            case Role::existential: xs.push_back(v); break;
            case Role::probabilistic: ys.push_back(v); break;
            case Role::plain: throw Error(ErrorKind::role_missing, "variable " + std::to_string(v) + " has no role");
        }
    }
    auto counts = brute_count_by_assignment(f, ys, xs);
    TwoLevelResult r;
    const auto ny = static_cast<std::uint32_t>(ys.size());
    for (auto c : counts)
        if (compare_count_to_threshold(mpz_class(std::to_string(c)), sigma, ny) != Ordering::LT) r.good_count += 1;
    r.emaj = r.good_count > 0;
    r.majmaj = compare_count_to_threshold(r.good_count, rho, static_cast<std::uint32_t>(xs.size())) != Ordering::LT;
    return r;
}

namespace {

std::size_t max_independent(std::uint32_t mask, const std::vector<std::uint32_t>& adj) {
    if (!mask) return 0;
    int v = std::countr_zero(mask);
    std::uint32_t rest = mask & ~(1u << v);
    std::size_t without = max_independent(rest, adj);
    if (std::size_t(std::popcount(rest & ~adj[v])) + 1 <= without) return without;
    return std::max(without, 1 + max_independent(rest & ~adj[v], adj));
}

}  // namespace

std::size_t brute_max_sunflower(const CnfFormula& f, const std::vector<Literal>& core) {
    std::set<std::uint32_t> core_vars;
    for (Literal l : core) {
        if (!core_vars.insert(l.var).second && std::find(core.begin(), core.end(), ~l) != core.end())
            return 0;  // inconsistent core
    }
    std::vector<std::set<std::uint32_t>> petals;
    for (const auto& c : f.clauses) {
        bool has_all = std::all_of(core.begin(), core.end(), [&](Literal l) { return c.contains(l); });
        if (!has_all) continue;
        std::set<std::uint32_t> vs;
        for (Literal l : c.lits)
            if (!std::count(core.begin(), core.end(), l)) vs.insert(l.var);
        petals.push_back(std::move(vs));
    }
    if (petals.size() > kSunflowerOracleMaxClauses)
        throw Error(ErrorKind::too_large, "sunflower oracle limited to 24 candidate clauses");
    const std::size_t m = petals.size();
    std::vector<std::uint32_t> adj(m, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j) continue;
            bool meet = std::any_of(petals[i].begin(), petals[i].end(), [&](auto v) { return petals[j].count(v); });
            if (meet) adj[i] |= 1u << j;
        }
    return max_independent(m == 32 ? ~0u : ((1u << m) - 1), adj);
}

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw Error(ErrorKind::invalid_argument, "Rng::below(0)");
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        std::uint64_t r = next();
        if (r >= threshold) return r % bound;
    }
}

CnfFormula random_kcnf(const GeneratorConfig& cfg) {
    if (cfg.k == 0) throw Error(ErrorKind::invalid_argument, "k must be at least 1");
    if (cfg.clause_count > 0 && cfg.k > cfg.n && !cfg.width_mix)
        throw Error(ErrorKind::invalid_argument, "k exceeds n");
    if (cfg.clause_count > 0 && cfg.n == 0) throw Error(ErrorKind::invalid_argument, "clauses need variables");
    if (cfg.role_split && *cfg.role_split > cfg.n) throw Error(ErrorKind::invalid_argument, "role split exceeds n");
    Rng rng(cfg.seed);
    CnfFormula f;
    f.num_vars = cfg.n;
    const std::uint32_t kmax = std::min(cfg.k, cfg.n);
    for (std::size_t i = 0; i < cfg.clause_count; ++i) {
        std::uint32_t w = cfg.width_mix ? 1 + static_cast<std::uint32_t>(rng.below(kmax)) : cfg.k;
        std::vector<std::uint32_t> vars;
        while (vars.size() < w) {
            auto v = 1 + static_cast<std::uint32_t>(rng.below(cfg.n));
            if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
        }
        Clause c;
        for (auto v : vars) c.lits.emplace_back(v, rng.coin());
        f.clauses.push_back(std::move(c));
    }
    if (cfg.role_split) {
        for (std::uint32_t v = 1; v <= cfg.n; ++v)
            f.set_role(v, v <= *cfg.role_split ? Role::existential : Role::probabilistic);
    }
    return f;
}

}  // namespace thrsat
