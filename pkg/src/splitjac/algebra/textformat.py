"""Canonical text serialisation of polynomials.

Layout::

    # splitjac-poly v1
    # vars: i1 i2 i3
    # order: grevlex
    <coefficient> <e1> <e2> <e3>
    ...

Terms are written in decreasing grevlex order. Integer content is removed and
the leading coefficient is positive, so the file depends only on the
polynomial up to a nonzero rational multiple.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .mpoly import MPoly

HEADER = "# splitjac-poly v1"


def canonical(p: MPoly) -> MPoly:
    return p.trim().primitive()


def dumps(p: MPoly) -> str:
    q = canonical(p)
    lines = [HEADER, "# vars: " + " ".join(q.vars), "# order: grevlex"]
    for exps, c in q.sorted_terms():
        lines.append(f"{c} " + " ".join(str(e) for e in exps))
    return "\n".join(lines) + "\n"


def loads(text: str) -> MPoly:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != HEADER:
        raise ValueError("missing polynomial header")
    variables: tuple[str, ...] | None = None
    terms = {}
    for ln in lines[1:]:
        if ln.startswith("# vars:"):
            variables = tuple(ln[len("# vars:"):].split())
        elif ln.startswith("# order:"):
            if ln.split(":", 1)[1].strip() != "grevlex":
                raise ValueError("unsupported monomial order")
        elif ln.startswith("#"):
            continue
        else:
            if variables is None:
                raise ValueError("term before variable header")
            parts = ln.split()
            exps = tuple(int(e) for e in parts[1:])
            if len(exps) != len(variables):
                raise ValueError(f"bad term line: {ln}")
            terms[exps] = Fraction(parts[0])
    return MPoly(terms, variables or ())


def write(p: MPoly, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(p))
    return path


def read(path: str | Path) -> MPoly:
    return loads(Path(path).read_text())
