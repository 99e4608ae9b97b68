"""Exact algebra for matrix commutator equations over commutative rings.

The package solves and machine-checks equations such as AX - XA = X^alpha g(X)
over Z, Q, Z/m, finite fields, dual numbers and finite products of these.
"""

from .equations import (
    EquationId,
    PivotFailure,
    SolutionFamily,
    brute_force_solutions,
    generic_membership_check,
    parse_equation,
    residual,
    solve_jordan_fiber,
)
from .groebner import BudgetExceeded, buchberger, hilbert_dimension, variety_dimension_experiment
from .matrix import Matrix, charpoly, commutator, is_nilpotent, jordan_block, matrix_nilindex
from .multipoly import MonomialOrder, MultiPoly
from .poly import UniPoly, resultant
from .registry import REGISTRY, run_all, run_check
from .report import FAIL, INCONCLUSIVE, PASS, CheckReport, emit_report
from .rings import GF, Dual, Integers, Mod, Product, Rationals, RingSpec, RingValue, parse_ring
from .spectral import HypothesisError, simultaneous_triangularization

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "CheckReport",
    "Dual",
    "EquationId",
    "FAIL",
    "GF",
    "HypothesisError",
    "INCONCLUSIVE",
    "Integers",
    "Matrix",
    "Mod",
    "MonomialOrder",
    "MultiPoly",
    "PASS",
    "PivotFailure",
    "Product",
    "REGISTRY",
    "Rationals",
    "RingSpec",
    "RingValue",
    "SolutionFamily",
    "UniPoly",
    "brute_force_solutions",
    "buchberger",
    "charpoly",
    "commutator",
    "emit_report",
    "generic_membership_check",
    "hilbert_dimension",
    "is_nilpotent",
    "jordan_block",
    "matrix_nilindex",
    "parse_equation",
    "parse_ring",
    "residual",
    "resultant",
    "run_all",
    "run_check",
    "simultaneous_triangularization",
    "solve_jordan_fiber",
    "variety_dimension_experiment",
]
