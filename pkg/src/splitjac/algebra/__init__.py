"""Exact polynomial algebra over the rationals."""

from .elimination import (EliminationError, discriminant, rational_roots,
                          resultant, symmetric_reduce)
from .mpoly import MPoly, as_rational, poly_gcd
from .quadratic import QuadraticAlg, rational_sqrt
from .ratfunc import RatFunc, substitute_poly

__all__ = [
    "EliminationError", "MPoly", "QuadraticAlg", "RatFunc", "as_rational",
    "discriminant", "poly_gcd", "rational_roots", "rational_sqrt",
    "resultant", "substitute_poly", "symmetric_reduce",
]
