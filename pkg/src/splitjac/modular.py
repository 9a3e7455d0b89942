"""Classical modular polynomials and j-invariants of Weierstrass cubics."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .algebra import MPoly, as_rational


@lru_cache(maxsize=None)
def modular_polynomial(level: int) -> MPoly:
    """Phi_level(x, y) for level 2 or 3 (symmetric, integer coefficients)."""
    x, y = MPoly.gens("x", "y")
    if level == 2:
        return (x ** 3 + y ** 3 - x ** 2 * y ** 2
                + (x ** 2 * y + x * y ** 2) * 1488
                - (x ** 2 + y ** 2) * 162000
                + x * y * 40773375
                + (x + y) * 8748000000
                - 157464000000000)
    if level == 3:
        return (x ** 4 + y ** 4 - x ** 3 * y ** 3
                + (x ** 3 * y ** 2 + x ** 2 * y ** 3) * 2232
                - (x ** 3 * y + x * y ** 3) * 1069956
                + (x ** 3 + y ** 3) * 36864000
                + x ** 2 * y ** 2 * 2587918086
                + (x ** 2 * y + x * y ** 2) * 8900222976000
                + (x ** 2 + y ** 2) * 452984832000000
                - x * y * 770845966336000000
                + (x + y) * 1855425871872000000000)
    raise ValueError("only levels 2 and 3 are available")


def j_invariant_cubic(c3, c2, c1, c0) -> Fraction:
    """j-invariant of ``V^2 = c3 U^3 + c2 U^2 + c1 U + c0``.

    The cubic is rescaled to ``U^3 + a2 U^2 + a4 U + a6`` first; j does not
    see the quadratic twist introduced by that rescaling.
    """
    c3, c2, c1, c0 = (Fraction(as_rational(c)) for c in (c3, c2, c1, c0))
    if c3 == 0:
        raise ValueError("not a cubic")
    c4, disc = _c4_disc(c3, c2, c1, c0)
    if disc == 0:
        raise ValueError("singular cubic")
    return c4 ** 3 / disc


def j_invariant_cubic_expr(c3, c2, c1, c0):
    """Same as :func:`j_invariant_cubic` for any field elements (e.g. RatFunc)."""
    c4, disc = _c4_disc(c3, c2, c1, c0)
    return c4 ** 3 / disc


def _c4_disc(c3, c2, c1, c0):
    # U -> U / c3 then multiply by c3^2: monic with a2 = c2, a4 = c1 c3, a6 = c0 c3^2
    a2, a4, a6 = c2, c1 * c3, c0 * c3 * c3
    b2, b4, b6 = a2 * 4, a4 * 2, a6 * 4
    b8 = a2 * a6 * 4 - a4 * a4
    c4 = b2 * b2 - b4 * 24
    disc = -(b2 * b2 * b8) - b4 ** 3 * 8 - b6 * b6 * 27 + b2 * b4 * b6 * 9
    return c4, disc


def j_from_lambda(lam) -> Fraction:
    """j of the Legendre curve ``y^2 = x(x - 1)(x - lam)``."""
    lam = Fraction(lam)
    if lam in (0, 1):
        raise ValueError("degenerate Legendre parameter")
    return 256 * (lam * lam - lam + 1) ** 3 / (lam * lam * (lam - 1) ** 2)
