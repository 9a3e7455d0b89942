"""Igusa invariants of binary sextics.

A genus-2 curve ``Y^2 = f(X)`` is encoded by the binary sextic
``f(X, Z) = a6 X^6 + a5 X^5 Z + ... + a0 Z^6``.  Working with the homogeneous
form lets a vanishing ``a6`` stand for a branch point at infinity.

The invariants (J2, J4, J6, J10) are the Igusa-Clebsch invariants, built from
Clebsch's A, B, C, D through transvectants.  With this normalisation the
family ``X^6 - s1 X^4 + s2 X^2 - 1`` gives ``J2 = 240 + 16 s1 s2`` and so on,
with no extra constant factors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .algebra import MPoly, as_rational


class InvariantError(ValueError):
    pass


@dataclass(frozen=True)
class Sextic:
    """Coefficients ``a6, a5, ..., a0`` (degree-descending)."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        cs = tuple(Fraction(as_rational(c)) for c in self.coeffs)
        if len(cs) != 7:
            raise InvariantError("a sextic needs exactly seven coefficients")
        if not any(cs):
            raise InvariantError("zero sextic")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def parse(cls, text: str) -> "Sextic":
        """Parse ``"a6,a5,a4,a3,a2,a1,a0"`` where each entry is ``p`` or ``p/q``."""
        parts = [t.strip() for t in text.split(",")]
        if len(parts) != 7 or not all(parts):
            raise InvariantError(f"expected seven comma-separated rationals, got {text!r}")
        try:
            return cls(tuple(Fraction(p) for p in parts))
        except (ValueError, ZeroDivisionError) as exc:
            raise InvariantError(f"bad rational in curve string: {exc}") from None

    @classmethod
    def from_poly(cls, p: MPoly, var: str = "X") -> "Sextic":
        cs = p.univariate_coeffs(var) if not p.is_constant() else [p.constant_value()]
        if len(cs) > 7:
            raise InvariantError("degree exceeds six")
        cs = list(cs) + [0] * (7 - len(cs))
        return cls(tuple(reversed(cs)))

    def binary_form(self) -> MPoly:
        x, z = MPoly.gens("x", "z")
        out = MPoly.const(0)
        for k, c in enumerate(self.coeffs):
            if c:
                out = out + x ** (6 - k) * z ** k * c
        return out

    def as_poly(self, var: str = "X") -> MPoly:
        return MPoly.from_univariate(list(reversed(self.coeffs)), var)

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coeffs)


@dataclass(frozen=True)
class IgusaInvariants:
    J2: Fraction
    J4: Fraction
    J6: Fraction
    J10: Fraction

    def __post_init__(self):
        for name in ("J2", "J4", "J6", "J10"):
            object.__setattr__(self, name, Fraction(as_rational(getattr(self, name))))

    def as_tuple(self) -> tuple[Fraction, ...]:
        return (self.J2, self.J4, self.J6, self.J10)

    def scaled(self, t) -> "IgusaInvariants":
        t = Fraction(t)
        return IgusaInvariants(t ** 2 * self.J2, t ** 4 * self.J4, t ** 6 * self.J6, t ** 10 * self.J10)


@dataclass(frozen=True)
class AbsoluteInvariants:
    i1: Fraction
    i2: Fraction
    i3: Fraction

    def __post_init__(self):
        for name in ("i1", "i2", "i3"):
            object.__setattr__(self, name, Fraction(as_rational(getattr(self, name))))

    def as_tuple(self) -> tuple[Fraction, ...]:
        return (self.i1, self.i2, self.i3)


def transvectant(f: MPoly, g: MPoly, k: int, m: int, n: int) -> MPoly:
    """The k-th transvectant (f, g)_k of binary forms of degrees m and n in x, z.

    Degrees are passed explicitly because either form may be zero.
    """
    if f.is_zero() or g.is_zero():
        return MPoly.const(0)
    total = MPoly.const(0)
    for i in range(k + 1):
        df = f.diff("x", k - i).diff("z", i)
        dg = g.diff("x", i).diff("z", k - i)
        term = df * dg
        total = total + (term if i % 2 == 0 else -term) * comb(k, i)
    return total.scale(Fraction(factorial(m - k) * factorial(n - k), factorial(m) * factorial(n)))


def clebsch_forms(f: MPoly) -> tuple[MPoly, MPoly, MPoly, MPoly]:
    """Clebsch's A, B, C, D of a binary sextic form in x, z.

    Coefficients may involve further variables; the results are then
    polynomials in those.
    """
    i = transvectant(f, f, 4, 6, 6)
    delta = transvectant(i, i, 2, 4, 4)
    y1 = transvectant(f, i, 4, 6, 4)
    y2 = transvectant(i, y1, 2, 4, 2)
    y3 = transvectant(i, y2, 2, 4, 2)
    A = transvectant(f, f, 6, 6, 6)
    B = transvectant(i, i, 4, 4, 4)
    C = transvectant(i, delta, 4, 4, 4)
    D = transvectant(y3, y1, 2, 2, 2)
    return A, B, C, D


def clebsch_invariants(sextic: Sextic) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Clebsch's A, B, C, D of the sextic."""
    return tuple(_const(p) for p in clebsch_forms(sextic.binary_form()))


def _const(p: MPoly) -> Fraction:
    return Fraction(0) if p.is_zero() else p.constant_value()


def igusa_from_clebsch(A, B, C, D) -> tuple:
    J2 = A * -120
    J4 = A ** 2 * -720 + B * 6750
    J6 = A ** 3 * 8640 - A * B * 108000 + C * 202500
    J10 = (A ** 5 * -62208 + A ** 3 * B * 972000 + A ** 2 * C * 1620000
           - A * B ** 2 * 3037500 - B * C * 6075000 - D * 4556250)
    return J2, J4, J6, J10


def igusa(sextic: Sextic) -> IgusaInvariants:
    """Igusa-Clebsch invariants (J2, J4, J6, J10); J10 vanishes iff f has a repeated root."""
    return IgusaInvariants(*igusa_from_clebsch(*clebsch_invariants(sextic)))


def absolute(J: IgusaInvariants) -> AbsoluteInvariants:
    if J.J2 == 0:
        raise InvariantError("J2 vanishes; alternative invariants of [Sh2] unsupported")
    J2, J4, J6, J10 = J.as_tuple()
    return AbsoluteInvariants(
        144 * J4 / J2 ** 2,
        -1728 * (J2 * J4 - 3 * J6) / J2 ** 3,
        486 * J10 / J2 ** 5,
    )


def genus2_valid(J: IgusaInvariants) -> bool:
    return J.J10 != 0


def moebius_transform(sextic: Sextic, m: Sequence[Sequence]) -> Sextic:
    """Substitute ``X -> a X + b Z``, ``Z -> c X + d Z`` for ``m = [[a, b], [c, d]]``."""
    (a, b), (c, d) = [[Fraction(as_rational(e)) for e in row] for row in m]
    if a * d - b * c == 0:
        raise InvariantError("singular transformation matrix")
    x, z = MPoly.gens("x", "z")
    g = sextic.binary_form().subs({"x": x * a + z * b, "z": x * c + z * d})
    coeffs = tuple(g.coefficient({"x": 6 - k, "z": k}) for k in range(7))
    return Sextic(coeffs)


def invariants_json(sextic: Sextic) -> dict:
    J = igusa(sextic)
    out = {"J2": str(J.J2), "J4": str(J.J4), "J6": str(J.J6), "J10": str(J.J10)}
    if J.J2 != 0:
        i = absolute(J)
        out.update(i1=str(i.i1), i2=str(i.i2), i3=str(i.i3))
    else:
        out.update(i1=None, i2=None, i3=None)
    out["genus2_valid"] = genus2_valid(J)
    return out


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)
