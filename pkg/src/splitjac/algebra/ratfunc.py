"""Rational functions over the rationals, kept in lowest terms."""

from __future__ import annotations

from fractions import Fraction

from .mpoly import MPoly, as_rational, poly_gcd


class RatFunc:
    """Quotient of two :class:`MPoly` values.

    The stored form is canonical: numerator and denominator are coprime, the
    denominator has integer coefficients with content 1 and a positive
    leading coefficient (grevlex).  Two equal functions built in different
    ways therefore have identical ``num`` and ``den``.

    Pass ``reduce=False`` to skip the gcd step; equality still works, only the
    representation is not canonical.  Call :meth:`reduced` to canonicalise.
    """

    __slots__ = ("num", "den", "_canonical")

    def __init__(self, num, den=1, reduce: bool = True):
        num = MPoly._coerce(num)
        den = MPoly._coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if reduce:
            num, den = _canonical(num, den)
        self.num = num
        self.den = den
        self._canonical = reduce

    @classmethod
    def var(cls, name: str) -> "RatFunc":
        return cls(MPoly.var(name))

    def reduced(self) -> "RatFunc":
        return self if self._canonical else RatFunc(self.num, self.den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.reduced().den.is_constant()

    @staticmethod
    def _lift(other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        return RatFunc(MPoly._coerce(other), 1, reduce=False)

    def __add__(self, other) -> "RatFunc":
        o = self._lift(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den, reduce=False)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den, reduce=False)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        out = RatFunc(-self.num, self.den, reduce=False)
        out._canonical = self._canonical
        return out

    def __sub__(self, other) -> "RatFunc":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "RatFunc":
        return self._lift(other) - self

    def __mul__(self, other) -> "RatFunc":
        o = self._lift(other)
        return RatFunc(self.num * o.num, self.den * o.den, reduce=False)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        o = self._lift(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num, reduce=False)

    def __rtruediv__(self, other) -> "RatFunc":
        return self._lift(other) / self

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return RatFunc(self.den ** (-k), self.num ** (-k), reduce=False)
        return RatFunc(self.num ** k, self.den ** k, reduce=False)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, MPoly, RatFunc)):
            o = self._lift(other)
            return (self.num * o.den - o.num * self.den).is_zero()
        return NotImplemented

    def __hash__(self) -> int:
        r = self.reduced()
        return hash((r.num, r.den))

    def subs(self, mapping) -> "RatFunc":
        """Substitute numbers, polynomials or rational functions for variables."""
        plain = {k: v for k, v in mapping.items() if not isinstance(v, RatFunc)}
        fracs = {k: v for k, v in mapping.items() if isinstance(v, RatFunc)}
        if not fracs:
            num = self.num.subs(plain) if plain else self.num
            den = self.den.subs(plain) if plain else self.den
            if den.is_zero():
                raise ZeroDivisionError("denominator vanishes under substitution")
            return RatFunc(num, den, reduce=False)
        return substitute_poly(self.num, {**plain, **fracs}) / substitute_poly(self.den, {**plain, **fracs})

    def evaluate(self, point) -> Fraction:
        point = {k: as_rational(v) for k, v in point.items()}
        d = self.den.evaluate(point)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at the point")
        return Fraction(self.num.evaluate(point)) / d

    def __repr__(self) -> str:
        r = self.reduced()
        if r.den == MPoly.const(1):
            return f"{r.num}"
        return f"({r.num}) / ({r.den})"


def substitute_poly(p: MPoly, mapping) -> RatFunc:
    """Evaluate ``p`` at rational-function arguments without expanding powers twice.

    Rational arguments ``n/d`` are handled by homogenising: each term is
    multiplied up to the maximal power of ``d`` so the result is a single
    fraction with denominator ``prod d^deg``.
    """
    fracs = {k: RatFunc._lift(v) for k, v in mapping.items()}
    p = p.trim()
    names = [v for v in p.vars if v in fracs]
    rest = [v for v in p.vars if v not in fracs]
    degs = {v: p.degree(v) for v in names}
    num_pows = {v: _powers(fracs[v].num, degs[v]) for v in names}
    den_pows = {v: _powers(fracs[v].den, degs[v]) for v in names}
    idx = {v: i for i, v in enumerate(p.vars)}
    total = MPoly.const(0)
    for exps, c in p.terms.items():
        term = MPoly.const(c)
        for v in rest:
            e = exps[idx[v]]
            if e:
                term = term * MPoly.var(v) ** e
        for v in names:
            e = exps[idx[v]]
            term = term * num_pows[v][e] * den_pows[v][degs[v] - e]
        total = total + term
    den = MPoly.const(1)
    for v in names:
        den = den * den_pows[v][degs[v]]
    return RatFunc(total, den, reduce=False)


def _powers(p: MPoly, k: int) -> list[MPoly]:
    out = [MPoly.const(1)]
    for _ in range(k):
        out.append(out[-1] * p)
    return out


def _canonical(num: MPoly, den: MPoly) -> tuple[MPoly, MPoly]:
    if num.is_zero():
        return MPoly.const(0), MPoly.const(1)
    if not den.is_constant() and not num.is_constant():
        g = poly_gcd(num, den)
        if not g.is_constant():
            num = num.exquo(g)
            den = den.exquo(g)
    c = abs(den.content())
    if den.leading_coefficient() < 0:
        c = -c
    return num.scale(1 / c).trim(), den.scale(1 / c).trim()
