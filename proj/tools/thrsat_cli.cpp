#include "thrsat/driver.hpp"
#include "thrsat/inference.hpp"
#include "thrsat/oracle.hpp"
#include "thrsat/reductions.hpp"
#include "thrsat/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

using namespace thrsat;

namespace {

constexpr int kExitYes = 0, kExitNo = 1, kExitBudget = 2, kExitError = 3, kExitUsage = 64;

CnfFormula read_formula(const std::string& path) {
    std::string text;
    if (path.empty() || path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream in(path);
        if (!in) throw Error(ErrorKind::parse, "cannot open " + path);
        text.assign(std::istreambuf_iterator<char>(in), {});
    }
    return parse_dimacs(text);
}

int emit_verdict(const Verdict& v, bool exceeded, bool json) {
    if (json)
        std::cout << verdict_to_json(v, exceeded).dump(2) << "\n";
    else
        std::cout << (v.yes ? "YES" : "NO") << " " << v.branch_tag << "\n";
    return v.yes ? kExitYes : kExitNo;
}

// Malformed thresholds are usage errors.
Threshold parse_rho(const std::string& s) {
    try {
        return Threshold::parse(s);
    } catch (const Error& e) {
        throw Error(ErrorKind::parse, e.what());
    }
}

std::optional<mpz_class> parse_big(const std::string& s) {
    if (s.empty()) return std::nullopt;
    mpz_class x;
    if (x.set_str(s, 10) != 0) throw Error(ErrorKind::invalid_argument, "not an integer: " + s);
    return x;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Threshold model counting for k-CNF formulas"};
    app.require_subcommand(1);

    std::string input, rho_s = "1/2", sigma_s = "1/2", algo = "auto", name, t_s, record_path;
    std::uint32_t k = 0, bits = 0, n = 10, role_split = 0;
    std::size_t m = 40, count = 100;
    std::uint64_t seed = 1, budget_leaves = 0;
    bool gt = false, fallback = false, json = false, width_mix = false;

    auto add_budget = [&](CLI::App* s) {
        s->add_option("--budget-leaves", budget_leaves, "Node budget (default THRSAT_BUDGET_LEAVES or 10^7)");
    };

    auto* decide = app.add_subcommand("decide", "Is #SAT(F) >= rho 2^n (or > with --gt)?");
    decide->add_option("file", input, "DIMACS file (stdin if omitted)");
    decide->add_option("--rho", rho_s, "Threshold p/q")->required();
    decide->add_option("--k", k, "Clause width bound");
    decide->add_option("--algo", algo, "auto, thr2, maj3, above-half, thr3, thrk");
    decide->add_flag("--gt", gt, "Strict comparison");
    decide->add_flag("--fallback-oracle", fallback, "Brute count when the budget trips (n <= 26)");
    decide->add_flag("--json", json, "Print the verdict as JSON");
    add_budget(decide);

    auto* msb = app.add_subcommand("msb", "Top bits b_0..b_t of #SAT(F) / 2^n");
    msb->add_option("file", input);
    msb->add_option("--bits", bits, "t")->required();
    msb->add_flag("--json", json);
    add_budget(msb);

    auto* emaj = app.add_subcommand("emaj", "exists x: Pr_y[F] >= rho (2-CNF, roles e/p)");
    emaj->add_option("file", input);
    emaj->add_option("--rho", rho_s)->required();
    emaj->add_flag("--json", json);
    add_budget(emaj);

    auto* majmaj = app.add_subcommand("majmaj", "Pr_x[Pr_y[F] >= sigma] >= rho (2-CNF, roles e/p)");
    majmaj->add_option("file", input);
    majmaj->add_option("--rho", rho_s)->required();
    majmaj->add_option("--sigma", sigma_s);
    majmaj->add_flag("--json", json);
    add_budget(majmaj);

    auto* analyze = app.add_subcommand("analyze", "Disjoint set, decomposition tree, sunflowers");
    analyze->add_option("file", input);
    std::string core_s;
    std::size_t petals = 2;
    analyze->add_option("--core", core_s, "Comma-separated core literals for a sunflower search");
    analyze->add_option("--petals", petals, "Petal count for --core");
    add_budget(analyze);

    auto* reduce = app.add_subcommand("reduce", "Apply a formula transformation");
    reduce->add_option("file", input);
    reduce->add_option("--name", name, "gt-to-maj, maj-to-gt, exact-count, add-long-clause, gt-gadget, square")
        ->required();
    reduce->add_option("--t", t_s, "Parameter t (exact-count, add-long-clause)");
    reduce->add_option("--n", n, "Variables for exact-count (no input file read)");
    reduce->add_option("--record", record_path, "Write the record JSON here (default stderr)");

    auto* gen = app.add_subcommand("gen", "Random k-CNF in DIMACS");
    gen->add_option("--n", n)->required();
    gen->add_option("--m", m)->required();
    gen->add_option("--k", k)->required();
    gen->add_option("--seed", seed);
    gen->add_flag("--width-mix", width_mix, "Widths uniform in [1, k]");
    gen->add_option("--role-split", role_split, "Variables 1..s existential, the rest probabilistic");

    auto* fuzz = app.add_subcommand("fuzz", "Compare a decider with the brute-force oracle");
    fuzz->add_option("--count", count);
    fuzz->add_option("--n", n);
    fuzz->add_option("--m", m);
    fuzz->add_option("--k", k)->required();
    fuzz->add_option("--rho", rho_s);
    fuzz->add_option("--seed", seed);
    fuzz->add_option("--algo", algo);
    fuzz->add_flag("--gt", gt);
    fuzz->add_flag("--width-mix", width_mix);
    add_budget(fuzz);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    std::optional<std::uint64_t> cap;
    if (budget_leaves) cap = budget_leaves;
    auto make_budget = [&] {
        Budget b;
        if (cap) b.max_leaves = *cap;
        return b;
    };

    try {
        if (*decide) {
            DecideOptions opt;
            opt.rho = parse_rho(rho_s);
            opt.k = k;
            opt.gt = gt;
            opt.algo = algo;
            opt.fallback_oracle = fallback;
            opt.budget_leaves = cap;
            CnfFormula f = read_formula(input);
            DecideOutcome out = run_decide(f, opt);
            return emit_verdict(out.verdict, out.budget_exceeded, json);
        }
        if (*msb) {
            CnfFormula f = read_formula(input);
            Budget b = make_budget();
            std::vector<int> bs = msb_count(f, bits, b);
            if (json) {
                std::cout << Json{{"bits", bs}, {"budget", {{"leaves_expanded", b.leaves_expanded}}}}.dump(2) << "\n";
            } else {
                for (int x : bs) std::cout << x;
                std::cout << "\n";
            }
            return 0;
        }
        if (*emaj) {
            Threshold rho = parse_rho(rho_s);
            CnfFormula f = read_formula(input);
            Budget b = make_budget();
            return emit_verdict(decide_emaj2sat(f, rho, b), false, json);
        }
        if (*majmaj) {
            Threshold rho = parse_rho(rho_s), sigma = parse_rho(sigma_s);
            CnfFormula f = read_formula(input);
            Budget b = make_budget();
            return emit_verdict(decide_majmaj2sat(f, rho, sigma, b), false, json);
        }
        if (*analyze) {
            CnfFormula f = normalize(read_formula(input));
            Budget b = make_budget();
            DisjointSet S = maximal_disjoint_set(f);
            Json j{{"num_vars", f.num_vars},
                   {"num_clauses", f.clauses.size()},
                   {"max_width", f.max_width()},
                   {"disjoint_set", S.clause_indices}};
            j["tree"] = tree_to_json(decompose_staged(f, {std::nullopt}, b));
            if (!core_s.empty()) {
                std::vector<Literal> core;
                std::stringstream ss(core_s);
                for (std::string tok; std::getline(ss, tok, ',');) core.push_back(Literal::from_int(std::stoll(tok)));
                auto sf = find_sunflower_with_core(f, core, petals);
                j["sunflower"] = sf ? sunflower_to_json(*sf) : Json(nullptr);
            }
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (*reduce) {
            CnfFormula f = reduce->count("--n") && name == "exact-count" ? CnfFormula(n, {}) : read_formula(input);
            ReductionRecord r = make_reduction(name, f, parse_big(t_s));
            std::cout << serialize_dimacs(r.output);
            std::string rec = reduction_to_json(r).dump(2) + "\n";
            if (record_path.empty()) {
                std::cerr << rec;
            } else {
                std::ofstream out(record_path);
                out << rec;
            }
            return 0;
        }
        if (*gen) {
            GeneratorConfig g;
            g.n = n;
            g.clause_count = m;
            g.k = k;
            g.seed = seed;
            g.width_mix = width_mix;
            if (role_split) g.role_split = role_split;
            std::cout << serialize_dimacs(random_kcnf(g));
            return 0;
        }
        if (*fuzz) {
            DecideOptions opt;
            opt.rho = parse_rho(rho_s);
            opt.k = k;
            opt.gt = gt;
            opt.algo = algo;
            opt.budget_leaves = cap;
            std::size_t mismatches = 0, budget_trips = 0;
            for (std::size_t i = 0; i < count; ++i) {
                GeneratorConfig g;
                g.n = n;
                g.clause_count = m;
                g.k = k;
                g.seed = seed + i;
                g.width_mix = width_mix;
                CnfFormula f = random_kcnf(g);
                Ordering o = compare_count_to_threshold(brute_count(normalize(f)), opt.rho, f.num_vars);
                bool truth = gt ? o == Ordering::GT : o != Ordering::LT;
                try {
                    DecideOutcome out = run_decide(f, opt);
                    if (out.verdict.yes != truth) {
                        ++mismatches;
                        std::cout << "c mismatch instance " << i << " seed " << g.seed << " tag "
                                  << out.verdict.branch_tag << "\n"
                                  << serialize_dimacs(f);
                    }
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::budget_exceeded) throw;
                    ++budget_trips;
                }
            }
            std::cout << "instances " << count << " mismatches " << mismatches << " budget_exceeded " << budget_trips
                      << "\n";
            return mismatches ? kExitNo : 0;
        }
    } catch (const Error& e) {
        std::cerr << "error (" << error_kind_name(e.kind()) << "): " << e.what();
        if (e.line()) std::cerr << " at line " << e.line();
        std::cerr << "\n";
        switch (e.kind()) {
            case ErrorKind::parse: return kExitUsage;
            case ErrorKind::budget_exceeded:
                if (json)
                    std::cout << Json{{"error", "budget_exceeded"}, {"message", e.what()},
                                      {"budget", {{"exceeded", true}}}}
                                     .dump(2)
                              << "\n";
                return kExitBudget;
            default: return kExitError;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
