"""Threshold model counting for k-CNF formulas."""

import json

from ._core import (
    BudgetExceeded,
    ThrsatError,
    brute_count,
    check_reduction,
    decide,
    emaj,
    generate,
    majmaj,
    msb,
    normalize,
    reduce,
    reduction_names,
)

__all__ = [
    "BudgetExceeded",
    "ThrsatError",
    "brute_count",
    "check_reduction",
    "decide",
    "decide_verdict",
    "emaj",
    "generate",
    "majmaj",
    "msb",
    "normalize",
    "reduce",
    "reduction_names",
]


def decide_verdict(dimacs, rho="1/2", **kwargs):
    """decide() with the JSON already parsed."""
    return json.loads(decide(dimacs, rho, **kwargs))
