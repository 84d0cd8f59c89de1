"""Structured (min,+)-convolution with knapsack and lattice applications."""
from .convolution import (
    PiecewiseLinearFn,
    cyclic_minconv_convex,
    full_from_reduced,
    minconv_convex,
    minconv_naive,
    reduced_concave,
    reduced_linear,
    reduced_naive,
    reduced_piecewise,
    reduced_polynomial,
)
from .knapsack import KnapsackInstance, knapsack_bruteforce, knapsack_solve
from .lattice import cvp_solve, lattice_bruteforce, snf, svp_solve
from .sign_partition import CurveOracle, IntPolynomial
from .values import INF

__all__ = [
    "INF", "CurveOracle", "IntPolynomial", "PiecewiseLinearFn",
    "minconv_naive", "reduced_naive", "full_from_reduced", "reduced_linear", "minconv_convex",
    "reduced_piecewise", "reduced_polynomial", "reduced_concave", "cyclic_minconv_convex",
    "KnapsackInstance", "knapsack_solve", "knapsack_bruteforce",
    "snf", "svp_solve", "cvp_solve", "lattice_bruteforce",
]
