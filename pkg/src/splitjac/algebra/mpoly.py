"""Sparse multivariate polynomials with exact rational coefficients.

Terms are stored as a dict mapping exponent tuples to coefficients. Integer
coefficients are kept as plain ``int`` and everything else as
``fractions.Fraction``; this keeps the integer-heavy eliminations fast while
staying exact.

Variables are ordered alphabetically (Python string order, so upper case
sorts before lower case). Monomials are compared in graded reverse
lexicographic order with respect to that variable order; leading terms,
canonical sign and the text format all use this order.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping, Sequence

Number = int | Fraction


def as_rational(value) -> Number:
    """Coerce an int, Fraction or ``"p/q"`` string to an exact coefficient."""
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, _RationalABC):
        return _norm(Fraction(value.numerator, value.denominator))
    if isinstance(value, str):
        return _norm(Fraction(value.strip()))
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def _norm(c: Number) -> Number:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _grevlex_key(exps: tuple[int, ...]):
    return (sum(exps), tuple(-e for e in reversed(exps)))


class MPoly:
    """Immutable sparse polynomial over the rationals.

    >>> x, y = MPoly.gens("x", "y")
    >>> (x + y) ** 2 - x * x
    2*x*y + y^2
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, ...], Number] | None = None,
                 variables: Sequence[str] = ()):
        variables = tuple(variables)
        if list(variables) != sorted(set(variables)):
            raise ValueError(f"variables must be sorted and distinct: {variables}")
        clean = {}
        n = len(variables)
        for exps, c in (terms or {}).items():
            if len(exps) != n:
                raise ValueError("exponent tuple arity does not match variables")
            c = as_rational(c)
            if c:
                clean[tuple(exps)] = c
        self.vars = variables
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, variables: tuple[str, ...]) -> "MPoly":
        p = object.__new__(cls)
        p.vars = variables
        p.terms = terms
        p._hash = None
        return p

    # constructors -------------------------------------------------------
    @classmethod
    def gens(cls, *names: str) -> tuple["MPoly", ...]:
        return tuple(cls.var(n) for n in names)

    @classmethod
    def var(cls, name: str) -> "MPoly":
        return cls._raw({(1,): 1}, (name,))

    @classmethod
    def const(cls, c, variables: Sequence[str] = ()) -> "MPoly":
        variables = tuple(variables)
        c = as_rational(c)
        if not c:
            return cls._raw({}, variables)
        return cls._raw({(0,) * len(variables): c}, variables)

    @classmethod
    def from_univariate(cls, coeffs: Sequence, var: str) -> "MPoly":
        """Build from ascending coefficients; entries may be numbers or MPoly."""
        x = cls.var(var)
        out = cls.const(0)
        power = cls.const(1)
        for c in coeffs:
            if isinstance(c, MPoly):
                out = out + c * power
            elif c:
                out = out + power * c
            power = power * x
        return out

    # basic queries ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return Fraction(next(iter(self.terms.values()), 0))

    def used_vars(self) -> tuple[str, ...]:
        seen = [False] * len(self.vars)
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e:
                    seen[i] = True
        return tuple(v for v, s in zip(self.vars, seen) if s)

    def degree(self, var: str | None = None) -> int:
        """Degree in ``var`` (total degree if omitted); -1 for zero."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def total_degree(self) -> int:
        return self.degree()

    def coefficient(self, monomial: Mapping[str, int]) -> Fraction:
        """Coefficient of a monomial given as ``{var: exponent}``."""
        for v in monomial:
            if v not in self.vars and monomial[v]:
                return Fraction(0)
        exps = tuple(monomial.get(v, 0) for v in self.vars)
        return Fraction(self.terms.get(exps, 0))

    def leading_term(self) -> tuple[tuple[int, ...], Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=_grevlex_key)
        return exps, Fraction(self.terms[exps])

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    # ring alignment -----------------------------------------------------
    def in_vars(self, variables: Sequence[str]) -> "MPoly":
        """Re-express in a (sorted) superset of the used variables."""
        variables = tuple(variables)
        if variables == self.vars:
            return self
        pos = []
        for v in self.vars:
            if v in variables:
                pos.append(variables.index(v))
            else:
                pos.append(None)
        n = len(variables)
        out = {}
        for exps, c in self.terms.items():
            new = [0] * n
            for p, e in zip(pos, exps):
                if e:
                    if p is None:
                        raise ValueError(f"variable {self.vars[pos.index(p)]} not in target ring")
                    new[p] = e
            out[tuple(new)] = c
        return MPoly._raw(out, variables)

    def _align(self, other: "MPoly") -> tuple["MPoly", "MPoly"]:
        if self.vars == other.vars:
            return self, other
        variables = tuple(sorted(set(self.vars) | set(other.vars)))
        return self.in_vars(variables), other.in_vars(variables)

    def trim(self) -> "MPoly":
        """Drop variables that do not occur."""
        return self.in_vars(self.used_vars())

    @staticmethod
    def _coerce(value) -> "MPoly":
        if isinstance(value, MPoly):
            return value
        return MPoly.const(value)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other) -> "MPoly":
        if not isinstance(other, MPoly):
            try:
                c = as_rational(other)
            except TypeError:
                return NotImplemented
            if not c:
                return self
            zero = (0,) * len(self.vars)
            terms = dict(self.terms)
            s = _norm(terms.get(zero, 0) + c)
            if s:
                terms[zero] = s
            else:
                terms.pop(zero, None)
            return MPoly._raw(terms, self.vars)
        a, b = self._align(other)
        terms = dict(a.terms)
        for exps, c in b.terms.items():
            s = terms.get(exps)
            if s is None:
                terms[exps] = c
            else:
                s = _norm(s + c)
                if s:
                    terms[exps] = s
                else:
                    del terms[exps]
        return MPoly._raw(terms, a.vars)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly._raw({e: -c for e, c in self.terms.items()}, self.vars)

    def __sub__(self, other) -> "MPoly":
        if not isinstance(other, MPoly):
            try:
                other = as_rational(other)
            except TypeError:
                return NotImplemented
            return self + (-other)
        return self + (-other)

    def __rsub__(self, other) -> "MPoly":
        return (-self) + other

    def scale(self, c) -> "MPoly":
        c = as_rational(c)
        if not c:
            return MPoly._raw({}, self.vars)
        if c == 1:
            return self
        return MPoly._raw({e: _norm(v * c) for e, v in self.terms.items()}, self.vars)

    def __mul__(self, other) -> "MPoly":
        if not isinstance(other, MPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        a, b = self._align(other)
        if len(a.terms) < len(b.terms):
            a, b = b, a
        out: dict = {}
        get = out.get
        bt = list(b.terms.items())
        n = len(a.vars)
        if n == 1:
            for (ea,), ca in a.terms.items():
                for (eb,), cb in bt:
                    k = (ea + eb,)
                    out[k] = get(k, 0) + ca * cb
        else:
            for ea, ca in a.terms.items():
                for eb, cb in bt:
                    k = tuple([x + y for x, y in zip(ea, eb)])
                    out[k] = get(k, 0) + ca * cb
        terms = {}
        for k, c in out.items():
            if c:
                terms[k] = _norm(c)
        return MPoly._raw(terms, a.vars)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result = MPoly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other) -> "MPoly":
        """Division by a nonzero constant or exact division by a polynomial."""
        if isinstance(other, MPoly):
            if other.is_constant():
                return self.scale(1 / other.constant_value())
            return self.exquo(other)
        c = as_rational(other)
        if not c:
            raise ZeroDivisionError("division by zero")
        return self.scale(Fraction(1) / c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MPoly):
            try:
                other = MPoly.const(other)
            except TypeError:
                return NotImplemented
        a, b = self.trim(), other.trim()
        return a.vars == b.vars and a.terms == b.terms

    def __hash__(self) -> int:
        if self._hash is None:
            t = self.trim()
            self._hash = hash((t.vars, frozenset(t.terms.items())))
        return self._hash

    # division -----------------------------------------------------------
    def divmod(self, divisor: "MPoly") -> tuple["MPoly", "MPoly"]:
        """Multivariate division by a single polynomial (grevlex).

        For one divisor the remainder is zero exactly when the divisor
        divides ``self``.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        p, d = self._align(divisor)
        lt_e, lt_c = d.leading_term()
        dterms = list(d.terms.items())
        rem = dict(p.terms)
        quo: dict = {}
        keep: dict = {}
        while rem:
            e = max(rem, key=_grevlex_key)
            c = rem[e]
            if all(x >= y for x, y in zip(e, lt_e)):
                qe = tuple(x - y for x, y in zip(e, lt_e))
                qc = _norm(Fraction(c) / lt_c)
                quo[qe] = qc
                for de, dc in dterms:
                    k = tuple(x + y for x, y in zip(qe, de))
                    v = _norm(rem.get(k, 0) - qc * dc)
                    if v:
                        rem[k] = v
                    else:
                        rem.pop(k, None)
            else:
                keep[e] = c
                del rem[e]
        return MPoly._raw(quo, p.vars), MPoly._raw(keep, p.vars)

    def divides(self, other: "MPoly") -> bool:
        """True if ``self`` divides ``other`` exactly."""
        if self.is_zero():
            return other.is_zero()
        return other.divmod(self)[1].is_zero()

    def exquo(self, divisor: "MPoly") -> "MPoly":
        q, r = self.divmod(divisor)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    # calculus and substitution ------------------------------------------
    def diff(self, var: str, k: int = 1) -> "MPoly":
        if var not in self.vars:
            return MPoly._raw({}, self.vars)
        i = self.vars.index(var)
        out = {}
        for exps, c in self.terms.items():
            e = exps[i]
            if e < k:
                continue
            f = 1
            for j in range(k):
                f *= e - j
            new = list(exps)
            new[i] = e - k
            out[tuple(new)] = c * f
        return MPoly._raw(out, self.vars)

    def subs(self, mapping: Mapping[str, object]) -> "MPoly":
        """Substitute numbers or polynomials for variables (simultaneously)."""
        mapping = {k: v for k, v in mapping.items() if k in self.vars}
        if not mapping:
            return self
        rest = tuple(v for v in self.vars if v not in mapping)
        idx_rest = [self.vars.index(v) for v in rest]
        targets = []
        for v in self.vars:
            if v in mapping:
                val = mapping[v]
                targets.append((self.vars.index(v), val if isinstance(val, MPoly) else as_rational(val)))
        cache: dict = {}

        def power(i, val, e):
            key = (i, e)
            if key not in cache:
                cache[key] = val ** e
            return cache[key]

        # group terms by the monomial in the substituted variables
        groups: dict = {}
        for exps, c in self.terms.items():
            sub_key = tuple(exps[i] for i, _ in targets)
            rest_key = tuple(exps[i] for i in idx_rest)
            g = groups.setdefault(sub_key, {})
            g[rest_key] = c
        out = MPoly.const(0, rest)
        for sub_key, g in groups.items():
            factor: object = 1
            for (i, val), e in zip(targets, sub_key):
                if e:
                    factor = factor * power(i, val, e)
            part = MPoly._raw(dict(g), rest)
            if isinstance(factor, MPoly):
                out = out + part * factor
            else:
                out = out + part.scale(factor)
        return out

    def __call__(self, **values) -> "MPoly | Fraction":
        r = self.subs(values)
        return r.constant_value() if r.is_constant() else r

    def evaluate(self, point: Mapping[str, object]) -> Fraction:
        r = self.subs(point)
        if not r.is_constant():
            raise ValueError(f"free variables remain: {r.used_vars()}")
        return r.constant_value()

    def rename(self, mapping: Mapping[str, str]) -> "MPoly":
        return self.subs({k: MPoly.var(v) for k, v in mapping.items()})

    # univariate views ---------------------------------------------------
    def coeffs_in(self, var: str) -> list["MPoly"]:
        """Ascending coefficients with respect to ``var`` (in remaining vars)."""
        if var not in self.vars:
            return [self] if self.terms else []
        i = self.vars.index(var)
        rest = self.vars[:i] + self.vars[i + 1:]
        buckets: dict[int, dict] = {}
        for exps, c in self.terms.items():
            buckets.setdefault(exps[i], {})[exps[:i] + exps[i + 1:]] = c
        if not buckets:
            return []
        deg = max(buckets)
        return [MPoly._raw(buckets.get(k, {}), rest) for k in range(deg + 1)]

    def univariate_coeffs(self, var: str | None = None) -> list[Fraction]:
        """Ascending rational coefficients of a univariate polynomial."""
        used = self.used_vars()
        if var is None:
            if len(used) > 1:
                raise ValueError(f"not univariate: {used}")
            var = used[0] if used else "x"
        elif any(v != var for v in used):
            raise ValueError(f"not univariate in {var}: {used}")
        return [c.constant_value() for c in self.trim().coeffs_in(var)] if self.terms else []

    # normalisation ------------------------------------------------------
    def content(self) -> Fraction:
        """Positive rational content: gcd of numerators over lcm of denominators."""
        if not self.terms:
            return Fraction(0)
        nums = [Fraction(c).numerator for c in self.terms.values()]
        dens = [Fraction(c).denominator for c in self.terms.values()]
        return Fraction(abs(reduce(gcd, nums)), reduce(lcm, dens))

    def primitive(self) -> "MPoly":
        """Integer primitive part with positive grevlex-leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        if self.leading_coefficient() < 0:
            c = -c
        return self.scale(1 / c)

    def monic(self) -> "MPoly":
        return self.scale(1 / self.leading_coefficient())

    # display ------------------------------------------------------------
    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(((e, Fraction(c)) for e, c in self.terms.items()),
                      key=lambda t: _grevlex_key(t[0]), reverse=True)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            mono = "*".join(v if e == 1 else f"{v}^{e}"
                            for v, e in zip(self.vars, exps) if e)
            if not mono:
                s = str(abs(c))
            elif abs(c) == 1:
                s = mono
            else:
                s = f"{abs(c)}*{mono}"
            parts.append(("-" if c < 0 else "+", s))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, s in parts[1:]:
            out += f" {sign} {s}"
        return out

    __str__ = __repr__


def poly_gcd(p: MPoly, q: MPoly) -> MPoly:
    """Greatest common divisor over Q, normalised by :meth:`MPoly.primitive`.

    Recursive primitive-remainder-sequence algorithm; adequate for the
    moderate sizes used when reducing rational functions.
    """
    p, q = p._align(q)
    if p.is_zero():
        return q.primitive()
    if q.is_zero():
        return p.primitive()
    used = sorted(set(p.used_vars()) | set(q.used_vars()))
    if not used:
        return MPoly.const(1, p.vars)
    if p.is_constant() or q.is_constant():
        return MPoly.const(1, p.vars)
    x = used[0]
    return _gcd_main(p, q, x).primitive()


def _content_in(p: MPoly, x: str) -> MPoly:
    coeffs = [c for c in p.coeffs_in(x) if not c.is_zero()]
    g = coeffs[0].primitive()
    for c in coeffs[1:]:
        if g.is_constant():
            break
        g = poly_gcd(g, c)
    return g


def _gcd_main(p: MPoly, q: MPoly, x: str) -> MPoly:
    if p.degree(x) == 0 or q.degree(x) == 0:
        cp = p if p.degree(x) == 0 else _content_in(p, x)
        cq = q if q.degree(x) == 0 else _content_in(q, x)
        return poly_gcd(cp, cq)
    cp, cq = _content_in(p, x), _content_in(q, x)
    c = poly_gcd(cp, cq)
    a, b = p.exquo(cp), q.exquo(cq)
    if a.degree(x) < b.degree(x):
        a, b = b, a
    while not b.is_zero() and b.degree(x) > 0:
        r = pseudo_remainder(a, b, x)
        a = b
        if r.is_zero():
            b = r
            break
        b = r.exquo(_content_in(r, x))
    if b.is_zero():
        g = a.exquo(_content_in(a, x))
    else:
        g = MPoly.const(1)
    return (g * c).primitive()


def pseudo_remainder(a: MPoly, b: MPoly, x: str) -> MPoly:
    """lc(b)^(deg a - deg b + 1) * a reduced modulo b, with respect to x."""
    A = a.coeffs_in(x)
    B = b.coeffs_in(x)
    return MPoly.from_univariate(_prem_dense(A, B), x) if A else a


def _prem_dense(A: list, B: list) -> list:
    """Pseudo-remainder on dense ascending coefficient lists of ring elements."""
    m, n = len(A) - 1, len(B) - 1
    if m < n:
        return list(A)
    lb = B[n]
    R = list(A)
    for k in range(m, n - 1, -1):
        lead = R[k]
        R = [r * lb for r in R[:k]]
        if _is_zero(lead):
            continue
        shift = k - n
        for i in range(n):
            R[shift + i] = R[shift + i] - lead * B[i]
    # every step scales by lb, zero leads included, so the factor is exactly
    # lb^(delta + 1)
    while R and _is_zero(R[-1]):
        R.pop()
    return R


def _is_zero(c) -> bool:
    return c.is_zero() if isinstance(c, MPoly) else not c


def lcm_poly(p: MPoly, q: MPoly) -> MPoly:
    return (p * q).exquo(poly_gcd(p, q)).primitive()


def product(items: Iterable) -> MPoly:
    out = MPoly.const(1)
    for it in items:
        out = out * it
    return out
