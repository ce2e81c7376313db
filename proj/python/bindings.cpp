#include "thrsat/driver.hpp"
#include "thrsat/inference.hpp"
#include "thrsat/oracle.hpp"
#include "thrsat/reductions.hpp"
#include "thrsat/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace thrsat;

namespace {

py::object to_pyint(const mpz_class& x) { return py::module_::import("builtins").attr("int")(x.get_str()); }

std::optional<mpz_class> from_pyint(const std::optional<py::int_>& x) {
    if (!x) return std::nullopt;
    return mpz_class(py::str(*x).cast<std::string>());
}

Budget make_budget(std::optional<std::uint64_t> leaves) {
    Budget b;
    if (leaves) b.max_leaves = *leaves;
    return b;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Threshold model counting for k-CNF formulas";

    using Storage = py::gil_safe_call_once_and_store<std::pair<py::object, py::object>>;
    PYBIND11_CONSTINIT static Storage storage;
    storage.call_once_and_store_result([&] {
        py::exception<Error> base(m, "ThrsatError");
        py::exception<Error> budget(m, "BudgetExceeded", base.ptr());
        return std::pair<py::object, py::object>(base, budget);
    });
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            const auto& [base, budget] = storage.get_stored();
            std::string msg = std::string(error_kind_name(e.kind())) + ": " + e.what();
            py::set_error(e.kind() == ErrorKind::budget_exceeded ? budget : base, msg.c_str());
        }
    });

    m.def(
        "decide",
        [](const std::string& dimacs, const std::string& rho, std::uint32_t k, bool gt, const std::string& algo,
           bool fallback_oracle, std::optional<std::uint64_t> budget_leaves) {
            DecideOptions opt;
            opt.rho = Threshold::parse(rho);
            opt.k = k;
            opt.gt = gt;
            opt.algo = algo;
            opt.fallback_oracle = fallback_oracle;
            opt.budget_leaves = budget_leaves;
            DecideOutcome out = run_decide(parse_dimacs(dimacs), opt);
            return verdict_to_json(out.verdict, out.budget_exceeded).dump();
        },
        py::arg("dimacs"), py::arg("rho") = "1/2", py::arg("k") = 0, py::arg("gt") = false, py::arg("algo") = "auto",
        py::arg("fallback_oracle") = false, py::arg("budget_leaves") = py::none(),
        "Verdict JSON for #SAT(F) >= rho 2^n (> with gt=True).");

    m.def(
        "brute_count", [](const std::string& dimacs) { return to_pyint(brute_count(parse_dimacs(dimacs)).value); },
        py::arg("dimacs"), "Exact model count by enumeration (n <= 26).");

    m.def(
        "msb",
        [](const std::string& dimacs, std::uint32_t bits, std::optional<std::uint64_t> budget_leaves) {
            Budget b = make_budget(budget_leaves);
            return msb_count(parse_dimacs(dimacs), bits, b);
        },
        py::arg("dimacs"), py::arg("bits"), py::arg("budget_leaves") = py::none(),
        "Bits b_0..b_bits with #SAT(F) ~ sum b_j 2^(n-j).");

    m.def(
        "emaj",
        [](const std::string& dimacs, const std::string& rho, std::optional<std::uint64_t> budget_leaves) {
            Budget b = make_budget(budget_leaves);
            return verdict_to_json(decide_emaj2sat(parse_dimacs(dimacs), Threshold::parse(rho), b)).dump();
        },
        py::arg("dimacs"), py::arg("rho"), py::arg("budget_leaves") = py::none());

    m.def(
        "majmaj",
        [](const std::string& dimacs, const std::string& rho, const std::string& sigma,
           std::optional<std::uint64_t> budget_leaves) {
            Budget b = make_budget(budget_leaves);
            return verdict_to_json(
                       decide_majmaj2sat(parse_dimacs(dimacs), Threshold::parse(rho), Threshold::parse(sigma), b))
                .dump();
        },
        py::arg("dimacs"), py::arg("rho"), py::arg("sigma") = "1/2", py::arg("budget_leaves") = py::none());

    m.def(
        "reduce",
        [](const std::string& name, const std::string& dimacs, std::optional<py::int_> t) {
            ReductionRecord r = make_reduction(name, parse_dimacs(dimacs), from_pyint(t));
            return py::make_tuple(serialize_dimacs(r.output), reduction_to_json(r).dump());
        },
        py::arg("name"), py::arg("dimacs"), py::arg("t") = py::none(), "(output DIMACS, record JSON).");

    m.def(
        "check_reduction",
        [](const std::string& name, const std::string& dimacs, std::optional<py::int_> t) {
            return check_reduction(make_reduction(name, parse_dimacs(dimacs), from_pyint(t)));
        },
        py::arg("name"), py::arg("dimacs"), py::arg("t") = py::none(),
        "Checks the stated relation with the brute-force oracle.");

    m.def("reduction_names", &reduction_names);

    m.def(
        "generate",
        [](std::uint32_t n, std::size_t clauses, std::uint32_t k, std::uint64_t seed, bool width_mix) {
            GeneratorConfig g;
            g.n = n;
            g.clause_count = clauses;
            g.k = k;
            g.seed = seed;
            g.width_mix = width_mix;
            return serialize_dimacs(random_kcnf(g));
        },
        py::arg("n"), py::arg("clauses"), py::arg("k"), py::arg("seed") = 1, py::arg("width_mix") = false,
        "Random k-CNF as DIMACS text.");

    m.def(
        "normalize", [](const std::string& dimacs) { return serialize_dimacs(normalize(parse_dimacs(dimacs))); },
        py::arg("dimacs"));
}
