"""Resultants, discriminants, rational roots and symmetric reduction."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from .mpoly import MPoly, _is_zero, _prem_dense


class EliminationError(ValueError):
    pass


# -- subresultant PRS ---------------------------------------------------------

def _exdiv(a, b):
    if isinstance(a, MPoly):
        if isinstance(b, MPoly):
            if b.is_constant():
                return a.scale(1 / b.constant_value())
            return a.exquo(b)
        return a.scale(Fraction(1) / b)
    if isinstance(b, MPoly):
        b = b.constant_value()
    return Fraction(a) / b


def _pow(a, k):
    if isinstance(a, MPoly):
        return a ** k
    return Fraction(a) ** k


def subresultant_resultant(A: list, B: list, one=1):
    """Resultant of two dense (ascending) coefficient lists over an integral domain.

    Subresultant PRS (Collins / Brown), sign as in the Sylvester determinant
    ``det Syl(A, B)``.  Entries are numbers or :class:`MPoly`.
    """
    A = _strip(A)
    B = _strip(B)
    if not A or not B:
        return 0 * one
    dA, dB = len(A) - 1, len(B) - 1
    s = 1
    if dA < dB:
        A, B = B, A
        dA, dB = dB, dA
        if dA % 2 == 1 and dB % 2 == 1:
            s = -1
    if dB == 0:
        return _pow(B[0], dA) * s
    g = one
    h = one
    while True:
        dA, dB = len(A) - 1, len(B) - 1
        delta = dA - dB
        if dA % 2 == 1 and dB % 2 == 1:
            s = -s
        R = _prem_dense(A, B)
        A = B
        if not R:
            return 0 * one
        div = g * _pow(h, delta)
        B = [_exdiv(r, div) for r in R]
        g = A[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = _exdiv(_pow(g, delta), _pow(h, delta - 1))
        if len(B) - 1 == 0:
            break
    dA = len(A) - 1
    if dA == 0:
        return h * s
    h = _exdiv(_pow(B[0], dA), _pow(h, dA - 1)) if dA > 1 else B[0]
    return h * s


def _strip(c: list) -> list:
    c = list(c)
    while c and _is_zero(c[-1]):
        c.pop()
    return c


def resultant(p: MPoly, q: MPoly, var: str) -> MPoly:
    """Sylvester resultant of ``p`` and ``q`` with respect to ``var``."""
    if var not in p.used_vars() and var not in q.used_vars():
        raise EliminationError(f"variable not present: {var}")
    P, Q = p.coeffs_in(var), q.coeffs_in(var)
    if not P or not Q:
        return MPoly.const(0)
    rest = tuple(sorted((set(p.used_vars()) | set(q.used_vars())) - {var}))
    if not rest:
        r = subresultant_resultant([c.constant_value() for c in P],
                                   [c.constant_value() for c in Q], Fraction(1))
        return MPoly.const(r)
    P = [c.in_vars(rest) if set(c.vars) <= set(rest) else c.trim().in_vars(rest) for c in P]
    Q = [c.in_vars(rest) if set(c.vars) <= set(rest) else c.trim().in_vars(rest) for c in Q]
    r = subresultant_resultant(P, Q, MPoly.const(1, rest))
    return r if isinstance(r, MPoly) else MPoly.const(r, rest)


def discriminant(p: MPoly, var: str) -> MPoly:
    """Standard discriminant (-1)^(n(n-1)/2) Res(p, p') / lc(p)."""
    n = p.degree(var)
    if n < 2:
        raise EliminationError("discriminant needs degree >= 2")
    lc = p.coeffs_in(var)[-1]
    r = resultant(p, p.diff(var), var)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return (r / lc) * sign if not lc.is_constant() else r.scale(Fraction(sign) / lc.constant_value())


def sylvester_matrix(A: list, B: list) -> list[list]:
    """Sylvester matrix of two ascending coefficient lists (for cross-checks)."""
    m, n = len(A) - 1, len(B) - 1
    size = m + n
    rows = []
    Ad = list(reversed(A))
    Bd = list(reversed(B))
    for i in range(n):
        rows.append([0] * i + Ad + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + Bd + [0] * (size - n - 1 - i))
    return rows


# -- dense univariate helpers over Q -----------------------------------------

def ueval(coeffs: list, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def udivmod(a: list, b: list) -> tuple[list, list]:
    a = [Fraction(c) for c in _strip(a)]
    b = [Fraction(c) for c in _strip(b)]
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        c = a[-1] / lb
        q[k] = c
        for i, bc in enumerate(b):
            a[k + i] -= c * bc
        a = _strip(a)
    return _strip(q), a


def ugcd(a: list, b: list) -> list:
    """Monic gcd of two univariate rational polynomials (primitive PRS)."""
    a, b = _primitive_int(a), _primitive_int(b)
    while b:
        r = _prem_dense(a, b)
        a, b = b, _primitive_int(r)
    if not a:
        return []
    lc = Fraction(a[-1])
    return [Fraction(c) / lc for c in a]


def _primitive_int(c: list) -> list:
    c = _strip(c)
    if not c:
        return []
    den = reduce(lcm, (Fraction(x).denominator for x in c), 1)
    ints = [int(Fraction(x) * den) for x in c]
    g = reduce(gcd, ints)
    if ints[-1] < 0:
        g = -g
    return [x // g for x in ints]


def uderiv(c: list) -> list:
    return [i * c[i] for i in range(1, len(c))]


# -- rational roots -----------------------------------------------------------

def rational_roots(p) -> list[Fraction]:
    """All rational roots of a univariate polynomial, with multiplicity, sorted.

    Accepts a univariate :class:`MPoly` or an ascending coefficient list.
    Roots of the square-free part are found p-adically: simple roots modulo a
    small good prime are Hensel-lifted past the root-size bound and recovered
    by rational reconstruction, then checked exactly.
    """
    coeffs = p.univariate_coeffs() if isinstance(p, MPoly) else list(p)
    coeffs = _primitive_int(coeffs)
    if not coeffs:
        raise EliminationError("zero polynomial has no finite root set")
    roots: list[Fraction] = []
    while coeffs and coeffs[0] == 0:
        roots.append(Fraction(0))
        coeffs = coeffs[1:]
    if len(coeffs) <= 1:
        return sorted(roots)
    g = ugcd(coeffs, uderiv(coeffs))
    sqf = _primitive_int(udivmod(coeffs, g)[0]) if len(g) > 1 else coeffs
    distinct = _squarefree_rational_roots(sqf)
    rest = coeffs
    for r in distinct:
        lin = [-r.numerator, r.denominator]
        while True:
            q, rem = udivmod(rest, lin)
            if rem:
                break
            roots.append(r)
            rest = _primitive_int(q)
    return sorted(roots)


def _squarefree_rational_roots(f: list[int]) -> list[Fraction]:
    d = len(f) - 1
    if d == 1:
        return [Fraction(-f[0], f[1])]
    lc, c0 = f[-1], f[0]
    p = _good_prime(f)
    fp = [c % p for c in f]
    df = uderiv(f)
    bound = 2 * abs(c0) * abs(lc) + 1
    out = []
    for r0 in range(p):
        if ueval(fp, r0) % p:
            continue
        r, m = r0, p
        while m <= bound:
            m2 = m * m
            fr = ueval(f, r) % m2
            dfr = ueval(df, r) % m2
            r = (r - fr * pow(dfr, -1, m2)) % m2
            m = m2
        cand = _rational_reconstruct(r, m, abs(c0), abs(lc))
        if cand is not None and _is_root(f, cand):
            out.append(cand)
    return sorted(set(out))


def _is_root(f: list[int], r: Fraction) -> bool:
    a, b = r.numerator, r.denominator
    d = len(f) - 1
    return sum(c * a ** i * b ** (d - i) for i, c in enumerate(f)) == 0


def _good_prime(f: list[int]) -> int:
    for p in _primes():
        if f[-1] % p == 0:
            continue
        fp = _strip([c % p for c in f])
        dfp = _strip([(i * c) % p for i, c in enumerate(fp)][1:])
        if _gcd_mod_p(fp, dfp, p) == [1]:
            return p
    raise EliminationError("no good prime found")


def _primes():
    n = 3
    while True:
        if all(n % k for k in range(3, int(n ** 0.5) + 1, 2)):
            yield n
        n += 2


def _gcd_mod_p(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _strip(a), _strip(b)
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b) and a:
            k = len(a) - len(b)
            c = a[-1] * inv % p
            for i, bc in enumerate(b):
                a[k + i] = (a[k + i] - c * bc) % p
            a = _strip(a)
        a, b = b, a
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _rational_reconstruct(r: int, m: int, nbound: int, dbound: int) -> Fraction | None:
    r0, r1 = m, r % m
    t0, t1 = 0, 1
    while r1 > nbound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > dbound:
        return None
    if t1 < 0:
        r1, t1 = -r1, -t1
    if gcd(r1, t1) != 1:
        return None
    return Fraction(r1, t1)


# -- symmetric reduction ------------------------------------------------------

def symmetric_reduce(p: MPoly, x: str = "x", y: str = "y",
                     e1: str = "e1", e2: str = "e2") -> MPoly:
    """Rewrite a polynomial symmetric in ``x, y`` in ``e1 = x + y``, ``e2 = x*y``."""
    X, Y = MPoly.var(x), MPoly.var(y)
    swapped = p.subs({x: Y, y: X})
    if swapped != p:
        raise EliminationError("not symmetric")
    E1, E2 = MPoly.var(e1), MPoly.var(e2)
    s, pr = X + Y, X * Y
    rest = p
    out = MPoly.const(0)
    while not rest.is_zero():
        lead = _lex_leading(rest, x, y)
        (a, b), coeff = lead
        if a < b:
            raise EliminationError("not symmetric")
        out = out + (E1 ** (a - b) * E2 ** b) * coeff
        rest = rest - (s ** (a - b) * pr ** b) * coeff
    return out


def _lex_leading(p: MPoly, x: str, y: str):
    best = None
    for k, c in enumerate(p.coeffs_in(x)):
        if not c.is_zero():
            best = k
    cx = p.coeffs_in(x)[best]
    ycoeffs = cx.coeffs_in(y)
    b = max(i for i, c in enumerate(ycoeffs) if not c.is_zero())
    return (best, b), ycoeffs[b]
