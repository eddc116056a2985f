"""Nim sequences of all-but subtraction games.

An all-but subtraction game removes any positive number of counters except
those in a finite excluded set X.  This package computes the Grundy values
with two independent engines, proves arithmetic periodicity through cycle
detection on boundary patterns and checks the structural results known for
excluded sets of size three.
"""

from allbut.model import (
    ArithmeticPeriod,
    FesSet,
    NimSequence,
    PeriodStatus,
    ResourceCapError,
    optimal_move,
    sum_nimber,
    validate_fes,
)
from allbut.naive import grundy_prefix
from allbut.fes import fes_grundy_prefix, fes_prefix
from allbut.boundary import detect_period, tighten_preperiod, arithmetic_period
from allbut.oracle import brute_min_period, verify_arith_period

__all__ = [
    "ArithmeticPeriod",
    "FesSet",
    "NimSequence",
    "PeriodStatus",
    "ResourceCapError",
    "arithmetic_period",
    "brute_min_period",
    "detect_period",
    "fes_grundy_prefix",
    "fes_prefix",
    "grundy_prefix",
    "optimal_move",
    "sum_nimber",
    "tighten_preperiod",
    "validate_fes",
    "verify_arith_period",
]
