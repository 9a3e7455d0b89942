"""Parse polynomials written as sums of monomials, e.g. ``3u^2v - v^4 + 7``.

Juxtaposition and ``*`` both mean multiplication.  Variable names are given
explicitly so that ``i_1`` or ``r1`` can be recognised without a full
expression grammar; parentheses are not supported.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .mpoly import MPoly


def parse_poly(text: str, variables: Sequence[str], rename: dict[str, str] | None = None) -> MPoly:
    names = sorted(variables, key=len, reverse=True)
    atom = "|".join(re.escape(n) for n in names)
    factor_re = re.compile(rf"\*?({atom})(?:\^(\d+))?")
    number_re = re.compile(r"\d+(?:/\d+)?")
    s = re.sub(r"\s+", "", text)
    rename = rename or {}
    out = MPoly.const(0)
    pos = 0
    if not s:
        raise ValueError("empty polynomial text")
    while pos < len(s):
        sign = 1
        while pos < len(s) and s[pos] in "+-":
            if s[pos] == "-":
                sign = -sign
            pos += 1
        coeff = Fraction(1)
        m = number_re.match(s, pos)
        if m:
            coeff = Fraction(m.group(0))
            pos = m.end()
        term = MPoly.const(sign * coeff)
        seen_factor = bool(m)
        while pos < len(s) and s[pos] not in "+-":
            f = factor_re.match(s, pos)
            if not f:
                raise ValueError(f"cannot parse near {s[pos:pos + 20]!r}")
            name = rename.get(f.group(1), f.group(1))
            term = term * MPoly.var(name) ** int(f.group(2) or 1)
            pos = f.end()
            seen_factor = True
        if not seen_factor:
            raise ValueError(f"dangling sign near position {pos}")
        out = out + term
    return out
