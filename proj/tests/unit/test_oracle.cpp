#include "helpers.hpp"

#include <fstream>
#include <sstream>

using namespace thrsat;
using namespace thrsat::test;

TEST_CASE("brute_count examples") {
    CHECK(brute_count(CnfFormula(3, {})).value == 8);
    CHECK(brute_count(CnfFormula(3, {{1, 2, 3}})).value == 7);
    CHECK(brute_count(CnfFormula(3, {{1, 2}, {-1, 3}})).value == 4);
    CHECK_FALSE(brute_count(CnfFormula(3, {})).term_bound);
    CHECK_THROWS_AS(brute_count(CnfFormula(27, {})), Error);
}

TEST_CASE("brute_two_level examples") {
    CnfFormula top(2, {});
    top.set_role(1, Role::existential);
    top.set_role(2, Role::probabilistic);
    TwoLevelResult t = brute_two_level(top, th(1, 2), th(1, 2));
    CHECK((t.emaj && t.majmaj && t.good_count == 2));

    CnfFormula bot = top;
    bot.clauses = {Clause({2}), Clause({-2})};
    TwoLevelResult b = brute_two_level(bot, th(1, 2), th(1, 2));
    CHECK((!b.emaj && !b.majmaj && b.good_count == 0));

    CnfFormula f = top;
    f.clauses = {Clause({1, 2})};
    TwoLevelResult o = brute_two_level(f, th(1, 2), th(1, 2));
    CHECK((o.emaj && o.majmaj && o.good_count == 2));
}

TEST_CASE("generator is deterministic and well-formed") {
    GeneratorConfig g;
    g.n = 10;
    g.clause_count = 40;
    g.k = 3;
    g.seed = 7;
    CHECK(serialize_dimacs(random_kcnf(g)) == serialize_dimacs(random_kcnf(g)));
    for (const auto& c : random_kcnf(g).clauses) {
        CHECK(c.width() == 3);
        std::set<std::uint32_t> vars;
        for (Literal l : c.lits) vars.insert(l.var);
        CHECK(vars.size() == 3);
    }
    g.clause_count = 0;
    CHECK(random_kcnf(g).clauses.empty());
}

TEST_CASE("generator output matches the recorded golden file") {
    std::ifstream in(THRSAT_GOLDEN_DIR "/k3_n10_m40_seed1.cnf");
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    GeneratorConfig g;
    g.n = 10;
    g.clause_count = 40;
    g.k = 3;
    g.seed = 1;
    CHECK(serialize_dimacs(random_kcnf(g)) == ss.str());
}

TEST_CASE("brute_count is invariant under normalization") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        CnfFormula f = random_formula(1 + seed % 12, seed % 20, 3, seed, true);
        f.clauses.push_back(Clause({1, -1}));
        CHECK(brute_count(normalize(f)).value == brute_count(f).value);
    }
}
