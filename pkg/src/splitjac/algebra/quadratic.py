"""Monic quadratics x^2 - s*x + p with exact rational coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .mpoly import as_rational


def rational_sqrt(q) -> Fraction | None:
    """Exact square root of a non-negative rational, or None if irrational."""
    q = Fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class QuadraticAlg:
    """The monic quadratic ``x^2 - sum*x + product``.

    Its roots are ``(sum ± sqrt(sum^2 - 4*product)) / 2``; they are rational
    exactly when the discriminant is a rational square.
    """

    sum: Fraction
    product: Fraction

    def __post_init__(self):
        object.__setattr__(self, "sum", Fraction(as_rational(self.sum)))
        object.__setattr__(self, "product", Fraction(as_rational(self.product)))

    @classmethod
    def from_roots(cls, r1, r2) -> "QuadraticAlg":
        r1, r2 = Fraction(r1), Fraction(r2)
        return cls(r1 + r2, r1 * r2)

    @property
    def discriminant(self) -> Fraction:
        return self.sum * self.sum - 4 * self.product

    def rational_roots(self) -> list[Fraction]:
        """Both roots (with multiplicity, ascending) if rational, else []."""
        r = rational_sqrt(self.discriminant)
        if r is None:
            return []
        return sorted([(self.sum - r) / 2, (self.sum + r) / 2])

    def has_double_root(self) -> bool:
        return self.discriminant == 0

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        return x * x - self.sum * x + self.product

    def to_json(self) -> dict:
        return {
            "sum": str(self.sum),
            "product": str(self.product),
            "rational_roots": [str(r) for r in self.rational_roots()],
        }
