#include "thrsat/driver.hpp"

#include "thrsat/oracle.hpp"

namespace thrsat {

namespace {

Verdict dispatch(const CnfFormula& f, const DecideOptions& opt, Budget& budget) {
    const std::uint32_t width = static_cast<std::uint32_t>(normalize(f).max_width());
    const std::uint32_t k = std::max<std::uint32_t>({opt.k, width, 2});
    std::string algo = opt.algo;
    if (algo == "auto") algo = k <= 2 ? "thr2" : k == 3 ? "thr3" : "thrk";
    const Threshold half = Threshold::from_fraction(1, 2);
    if (algo == "thr2") return opt.gt ? decide_gt_thr2sat(f, opt.rho, budget) : decide_thr2sat(f, opt.rho, budget);
    if (algo == "maj3") {
        if (!(opt.rho == half)) throw Error(ErrorKind::invalid_argument, "maj3 requires rho = 1/2");
        return opt.gt ? decide_gt_maj3sat(f, budget) : decide_maj3sat(f, budget);
    }
    if (algo == "above-half" && !opt.gt) return decide_thr3sat_above_half(f, opt.rho, budget);
    if (algo == "thr3" || algo == "above-half")
        return opt.gt ? decide_gt_thr3sat(f, opt.rho, budget) : decide_thr3sat(f, opt.rho, budget);
    if (algo == "thrk")
        return opt.gt ? decide_gt_thrksat(f, opt.rho, k, budget) : decide_thrksat(f, opt.rho, k, budget);
    throw Error(ErrorKind::invalid_argument, "unknown algorithm " + opt.algo);
}

}  // namespace

DecideOutcome run_decide(const CnfFormula& f, const DecideOptions& opt) {
    Budget budget;
    if (opt.budget_leaves) budget.max_leaves = *opt.budget_leaves;
    DecideOutcome out;
    try {
        out.verdict = dispatch(f, opt, budget);
        return out;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::budget_exceeded || !opt.fallback_oracle || f.num_vars > kBruteMaxVars) throw;
    }
    out.budget_exceeded = out.used_fallback = true;
    ExactCount N = brute_count(normalize(f));
    Ordering o = compare_count_to_threshold(N, opt.rho, f.num_vars);
    Verdict& v = out.verdict;
    v.yes = opt.gt ? o == Ordering::GT : o != Ordering::LT;
    v.branch_tag = "fallback-oracle";
    v.certificate.kind = CertificateKind::exact_count;
    v.certificate.count = N;
    v.leaves_expanded = budget.leaves_expanded;
    return out;
}

}  // namespace thrsat
