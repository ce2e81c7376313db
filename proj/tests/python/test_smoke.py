import itertools
import json
from fractions import Fraction

import pytest

import thrsat


def parse(dimacs):
    n, clauses = 0, []
    for line in dimacs.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            n = int(line.split()[2])
            continue
        clauses.append([int(x) for x in line.split()[:-1]])
    return n, clauses


def py_count(dimacs):
    n, clauses = parse(dimacs)
    total = 0
    for bits in itertools.product([False, True], repeat=n):
        if all(any(bits[abs(l) - 1] == (l > 0) for l in c) for c in clauses):
            total += 1
    return total


SIX = "p cnf 18 6\n" + "".join(f"{3*i+1} {3*i+2} {3*i+3} 0\n" for i in range(6))


def test_top_is_yes():
    v = thrsat.decide_verdict("p cnf 3 0\n", "1/2")
    assert v["answer"] == "YES"
    assert v["branch_tag"]


def test_six_disjoint_clauses_no_with_witness():
    v = thrsat.decide_verdict(SIX, "1/2")
    assert v["answer"] == "NO"
    c = v["certificate"]
    assert c["witness_kind"] == "disjoint-set"
    assert len(c["witness_clauses"]) == 6
    assert Fraction(c["witness_bound"]) == Fraction(7, 8) ** 6


@pytest.mark.parametrize("seed", range(40))
@pytest.mark.parametrize("k", [2, 3])
def test_decide_matches_python_enumeration(seed, k):
    f = thrsat.generate(n=8, clauses=4 + seed % 20, k=k, seed=seed)
    n_models = py_count(f)
    assert thrsat.brute_count(f) == n_models
    for rho in ["1/2", "1/4", "3/4", "1/3"]:
        r = Fraction(rho)
        want_ge = n_models >= r * 2**8
        want_gt = n_models > r * 2**8
        assert (json.loads(thrsat.decide(f, rho))["answer"] == "YES") == want_ge
        assert (json.loads(thrsat.decide(f, rho, gt=True))["answer"] == "YES") == want_gt


def test_msb_bits():
    f = "p cnf 2 1\n1 2 0\n"
    assert thrsat.msb(f, 2) == [0, 1, 1]
    assert thrsat.msb("p cnf 3 0\n", 2) == [1, 0, 0]


def test_two_level():
    f = "c role e 1 0\nc role p 2 0\np cnf 2 1\n1 2 0\n"
    assert json.loads(thrsat.emaj(f, "1/2"))["answer"] == "YES"
    v = json.loads(thrsat.majmaj(f, "1/2", "1/2"))
    assert v["answer"] == "YES"
    assert v["good_assignment_count"] == "2"


def test_reductions_hold():
    f = thrsat.generate(n=5, clauses=8, k=3, seed=4)
    for name in thrsat.reduction_names():
        t = 3 if name in ("exact-count", "add-long-clause") else None
        out, record = thrsat.reduce(name, f, t)
        assert out.startswith("p cnf")
        assert json.loads(record)["name"] == name
        assert thrsat.check_reduction(name, f, t)


def test_budget_exceeded_is_raised():
    f = thrsat.generate(n=20, clauses=50, k=4, seed=3)
    with pytest.raises(thrsat.BudgetExceeded):
        thrsat.decide(f, "1/3", k=4, budget_leaves=10)
    v = thrsat.decide_verdict(f, "1/3", k=4, budget_leaves=10, fallback_oracle=True)
    assert v["branch_tag"] == "fallback-oracle"
    assert (v["answer"] == "YES") == (thrsat.brute_count(f) * 3 >= 2**20)


def test_errors():
    with pytest.raises(thrsat.ThrsatError):
        thrsat.decide("p cnf x\n", "1/2")
    with pytest.raises(thrsat.ThrsatError):
        thrsat.decide("p cnf 1 0\n", "3/2")
    with pytest.raises(thrsat.ThrsatError):
        thrsat.reduce("nope", "p cnf 1 0\n")
