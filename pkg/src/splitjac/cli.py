"""Command-line entry point.

Every subcommand prints one JSON object on standard output with sorted keys
and rationals as exact strings.  Progress messages go to standard error.

Exit codes: 0 success, 2 invalid input, 3 precondition failure (singular
curve, J2 = 0, degree out of range), 4 failed identity check.

Curves are given as seven rationals ``a6,a5,a4,a3,a2,a1,a0``, highest degree
first, so ``"0,1,0,0,0,-1,0"`` is ``Y^2 = X^5 - X``.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import covers, hurwitz, l2, l3
from .algebra import MPoly, QuadraticAlg, RatFunc
from .invariants import (AbsoluteInvariants, InvariantError, Sextic, absolute, genus2_valid,
                         igusa, invariants_json)

EXIT_OK, EXIT_INPUT, EXIT_PRECONDITION, EXIT_IDENTITY = 0, 2, 3, 4


class CliError(Exception):
    def __init__(self, code: int, message: str, note: str | None = None):
        super().__init__(message)
        self.code = code
        self.note = note


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(EXIT_INPUT, message)


def _log(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


# -- serialisation --------------------------------------------------------------

def to_json(x):
    """Exact, deterministic JSON view of library values."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, QuadraticAlg):
        return x.to_json()
    if isinstance(x, (MPoly, RatFunc)):
        return str(x)
    if isinstance(x, dict):
        return {str(k): to_json(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_json(v) for v in x]
    if hasattr(x, "value"):
        return x.value
    return str(x)


def dumps(obj) -> str:
    return json.dumps(to_json(obj), sort_keys=True, indent=2)


# -- argument helpers ---------------------------------------------------------------

def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise CliError(EXIT_INPUT, f"not a rational number: {text!r}") from None


def _curve(text: str) -> Sextic:
    try:
        return Sextic.parse(text)
    except InvariantError as exc:
        raise CliError(EXIT_INPUT, str(exc)) from None


def _absolute_of(sextic: Sextic) -> AbsoluteInvariants:
    J = igusa(sextic)
    if not genus2_valid(J):
        raise CliError(EXIT_PRECONDITION, "singular curve: J10 = 0")
    if J.J2 == 0:
        raise CliError(EXIT_PRECONDITION, "J2 = 0: absolute invariants undefined",
                       "curves with J2 = 0 need different invariants; out of scope")
    return absolute(J)


def _l2_point(u, v) -> l2.L2Point:
    try:
        return l2.L2Point(u, v)
    except l2.LocusError as exc:
        raise CliError(EXIT_PRECONDITION, str(exc)) from None


def _l3_point(u, v) -> l3.L3Point:
    try:
        return l3.L3Point(u, v)
    except l3.LocusError as exc:
        raise CliError(EXIT_PRECONDITION, str(exc)) from None


# -- reports -----------------------------------------------------------------------

def _l2_point_report(p: l2.L2Point) -> dict:
    iso = {}
    for d in (2, 3):
        verdict = l2.l2_isogeny(p, d)
        iso[str(d)] = {"isogenous": verdict.isogenous, "factors": list(verdict.factors)}
    return {"u": p.u, "v": p.v, "group": l2.l2_group(p).value,
            "j_pair": l2.l2_j_pair(p), "isomorphic_subcovers": l2.l2_isomorphic(p),
            "isogeny": iso}


def _l3_point_report(p: l3.L3Point) -> dict:
    out = {"u": p.u, "v": p.v, "theta_critical": l3.theta_critical(p)}
    try:
        out["j_pair"] = list(l3.l3_j_pair(p))
        out["nu"] = {"u": l3.nu(p).u, "v": l3.nu(p).v}
    except l3.LocusError as exc:
        out["j_pair"] = None
        out["note"] = str(exc)
    return out


def analyze(sextic: Sextic) -> dict:
    inv = _absolute_of(sextic)
    warnings = []
    res = l2.l2_check(inv)
    l2_part = {"member": res.on_locus, "status": res.status,
               "points": [_l2_point_report(p) for p in res.points]}
    if res.points:
        warnings.append("l2 j-pair product uses the cubed factor (u^2+9u-3v)^3")
    try:
        pts = l3.l3_membership(inv)
        l3_part = {"member": bool(pts), "points": [_l3_point_report(p) for p in pts],
                   "e3_estimate": l3.e3_estimate(inv) if pts else 0}
    except l3.LocusError as exc:
        l3_part = {"member": None, "points": [], "note": str(exc)}
    l3_part["scope"] = "rational (u, v) with v != 0"
    return {"curve": str(sextic), "invariants": invariants_json(sextic),
            "l2": l2_part, "l3": l3_part, "warnings": warnings}


def _subcover_json(m: l3.SubcoverMap) -> dict:
    return {"branch": m.branch, "U": m.U, "V_factor": m.V_factor, "c": m.c,
            "target": list(m.target), "j": m.j_invariant()}


def l3_build(a, b) -> dict:
    try:
        p = l3.L3Params(a, b)
    except l3.LocusError as exc:
        raise CliError(EXIT_PRECONDITION, str(exc)) from None
    s1, s2 = l3.l3_subcover1(p), l3.l3_subcover2(p)
    FG = l3.l3_curve(p).as_poly()
    if not (s1.identity_holds(FG) and s2.identity_holds(FG)):
        raise CliError(EXIT_IDENTITY, "subcover identity failed")
    out = {"a": p.a, "b": p.b, "u": p.u, "v": p.v, "curve": str(l3.l3_curve(p)),
           "subcover1": _subcover_json(s1), "subcover2": _subcover_json(s2),
           "parameters": l3.subcover_parameters(p),
           "j_pair": [s1.j_invariant(), s2.j_invariant()]}
    return out


def l3_jpair(u, v) -> dict:
    p = _l3_point(u, v)
    try:
        j1, j2 = l3.l3_j_pair(p)
        r = l3.l3_r_invariants(p)
        q = l3.l3_TN(r)
        nu = l3.nu(p)
    except (l3.LocusError, ZeroDivisionError) as exc:
        raise CliError(EXIT_PRECONDITION, str(exc) or "pole of the r-invariants") from None
    return {"u": p.u, "v": p.v, "j_pair": [j1, j2], "r_invariants": [r.r1, r.r2],
            "sum_product": q, "nu": {"u": nu.u, "v": nu.v}}


def ram_list(n: int, text: bool = False):
    notes: list = []
    try:
        types = covers.ram_types(n, notes)
    except covers.CoverTypeError as exc:
        raise CliError(EXIT_PRECONDITION, str(exc)) from None
    rows = [{"case": c.label, "type": str(t), "parts": [list(p) for p in t.branch_points],
             "weierstrass_ok": covers.weierstrass_parity_check(t)} for c, t in types]
    if text:
        return "\n".join(f"{r['case']}: {r['type']}" for r in rows)
    return {"degree": n, "types": rows,
            "excluded": [{"case": x.label, "reason": x.reason} for x in notes]}


def hurwitz_count(n: int, types_text: str | None, orbits: bool, audit: bool) -> dict:
    out: dict = {}
    if types_text is not None:
        try:
            types = hurwitz.parse_types(types_text)
            _log(f"enumerating degree {n} types {types_text}")
            out = hurwitz.count_report(n, types, orbits=orbits, progress=True)
        except hurwitz.HurwitzError as exc:
            code = EXIT_PRECONDITION if n > hurwitz.MAX_DEGREE else EXIT_INPUT
            raise CliError(code, str(exc)) from None
        for row in hurwitz.TABULATED:
            if row.degree == n and row.types == tuple(tuple(t) for t in out["types"]):
                out["table_count"] = row.count
                if row.count != out["class_count"]:
                    out["discrepancies"].append({"case": row.case, "table_count": row.count,
                                                 "class_count": out["class_count"]})
    elif not audit:
        raise CliError(EXIT_INPUT, "give --types or --audit-table")
    if audit:
        table = hurwitz.audit_table(progress=True)
        out["table_audit"] = table
        out.setdefault("discrepancies", [])
        out["discrepancies"].extend(hurwitz.discrepancies(table))
    return out


# -- verify-all ----------------------------------------------------------------------

def _job_l2_locus():
    L = l2.derive_l2_locus()
    disp = l2.displayed_l2_equation().primitive()
    return {"substitution_vanishes": l2.locus_substitution_vanishes(L),
            "matches_display": L == disp or L == -disp}


def _job_isogeny(level):
    return {f"phi{level}_factors": l2.verify_isogeny_locus(level).ok}


def _job_degenerate():
    d = l3.degenerate_solutions()
    j = MPoly.var("j")
    want = ((j - 1728) * (j ** 2 - 297 * j + 46656)).primitive()
    return {"diagonal_cubic": d.diagonal_cubic == want or d.diagonal_cubic == -want}


def _job_hurwitz():
    return {"n3_class_count": hurwitz.nielsen_enumerate(3, ((2,),) * 4).count == 4}


def _job_l3(name):
    return getattr(l3, name)()


JOBS = {
    "l2.locus": (_job_l2_locus, ()),
    "l2.isogeny2": (_job_isogeny, (2,)),
    "l2.isogeny3": (_job_isogeny, (3,)),
    "l3.subcovers": (_job_l3, ("verify_subcovers",)),
    "l3.subcover_j": (_job_l3, ("verify_subcover_j",)),
    "l3.r_normalisation": (_job_l3, ("verify_r_normalisation",)),
    "l3.uv_quadratics": (_job_l3, ("verify_uv_quadratics",)),
    "l3.coherence": (_job_l3, ("verify_coherence",)),
    "l3.degenerate": (_job_degenerate, ()),
    "hurwitz": (_job_hurwitz, ()),
}


def _run_job(name):
    fn, args = JOBS[name]
    return fn(*args)


def verify_all(jobs: int = 1, only: list[str] | None = None) -> tuple[dict, bool]:
    names = [n for n in JOBS if not only or n in only]
    results = {}
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            futures = {n: ex.submit(_run_job, n) for n in names}
            for n in names:
                results[n] = futures[n].result()
                _log(f"done {n}")
    else:
        for n in names:
            _log(f"running {n}")
            results[n] = _run_job(n)
    ok = all(v for r in results.values() for v in r.values())
    return {"checks": results, "ok": ok}, ok


# -- dispatch ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="splitjac", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze")
    a.add_argument("--curve", required=True)
    a = sub.add_parser("invariants")
    a.add_argument("--curve", required=True)

    g = sub.add_parser("l2").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    g.add_parser("check").add_argument("--curve", required=True)
    x = g.add_parser("params")
    x.add_argument("--s1", required=True)
    x.add_argument("--s2", required=True)
    for name in ("group", "jpair", "isogeny"):
        x = g.add_parser(name)
        x.add_argument("--u", required=True)
        x.add_argument("--v", required=True)
        if name == "isogeny":
            x.add_argument("--degree", type=int, choices=(2, 3), required=True)
    x = g.add_parser("derive-locus")
    x.add_argument("--write", action="store_true", help="write the artifact to the work directory")

    g = sub.add_parser("l3").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    x = g.add_parser("build")
    x.add_argument("--a", required=True)
    x.add_argument("--b", required=True)
    g.add_parser("check").add_argument("--curve", required=True)
    x = g.add_parser("jpair")
    x.add_argument("--u", required=True)
    x.add_argument("--v", required=True)
    g.add_parser("verify")

    g = sub.add_parser("ram").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    x = g.add_parser("list")
    x.add_argument("--degree", type=int, required=True)
    x.add_argument("--text", action="store_true", help="plain lines instead of JSON")

    g = sub.add_parser("hurwitz").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    x = g.add_parser("count")
    x.add_argument("--degree", type=int, required=True)
    x.add_argument("--types")
    x.add_argument("--orbits", action="store_true")
    x.add_argument("--audit-table", action="store_true")

    x = sub.add_parser("verify-all")
    x.add_argument("--jobs", type=int, default=1)
    x.add_argument("--only", action="append", choices=sorted(JOBS))
    return p


def run(args) -> tuple[object, int]:
    cmd, subcmd = args.cmd, getattr(args, "sub", None)
    if cmd == "analyze":
        return analyze(_curve(args.curve)), EXIT_OK
    if cmd == "invariants":
        return invariants_json(_curve(args.curve)), EXIT_OK
    if cmd == "l2":
        if subcmd == "check":
            res = l2.l2_check(_absolute_of(_curve(args.curve)))
            return {"status": res.status, "member": res.on_locus,
                    "points": [{"u": q.u, "v": q.v} for q in res.points],
                    "locus_value": res.locus_value}, EXIT_OK
        if subcmd == "params":
            try:
                nf = l2.L2NormalForm(_rational(args.s1), _rational(args.s2))
            except l2.LocusError as exc:
                raise CliError(EXIT_PRECONDITION, str(exc)) from None
            q = l2.l2_uv(nf)
            return {"s1": nf.s1, "s2": nf.s2, "u": q.u, "v": q.v,
                    "curve": str(l2.l2_curve(nf))}, EXIT_OK
        if subcmd == "derive-locus":
            _log("deriving the L2 locus equation")
            L = l2.derive_l2_locus()
            disp = l2.displayed_l2_equation().primitive()
            out = {"polynomial": L, "terms": len(L.terms),
                   "substitution_vanishes": l2.locus_substitution_vanishes(L),
                   "matches_display": L == disp or L == -disp}
            if args.write:
                out["artifact"] = str(l2.write_l2_locus_artifact())
            return out, EXIT_OK if out["substitution_vanishes"] else EXIT_IDENTITY
        q = _l2_point(_rational(args.u), _rational(args.v))
        if subcmd == "group":
            return {"u": q.u, "v": q.v, "group": l2.l2_group(q).value}, EXIT_OK
        if subcmd == "jpair":
            return {"u": q.u, "v": q.v, "j_pair": l2.l2_j_pair(q),
                    "isomorphic_subcovers": l2.l2_isomorphic(q)}, EXIT_OK
        verdict = l2.l2_isogeny(q, args.degree)
        return {"u": q.u, "v": q.v, "degree": verdict.degree,
                "isogenous": verdict.isogenous, "factors": list(verdict.factors)}, EXIT_OK
    if cmd == "l3":
        if subcmd == "build":
            return l3_build(_rational(args.a), _rational(args.b)), EXIT_OK
        if subcmd == "check":
            inv = _absolute_of(_curve(args.curve))
            pts = l3.l3_membership(inv)
            return {"member": bool(pts), "points": [_l3_point_report(q) for q in pts],
                    "e3_estimate": l3.e3_estimate(inv) if pts else 0}, EXIT_OK
        if subcmd == "jpair":
            return l3_jpair(_rational(args.u), _rational(args.v)), EXIT_OK
        _log("running the symbolic identities for the degree-3 family")
        res = l3.verify_all()
        return {"checks": res, "ok": all(res.values())}, EXIT_OK if all(res.values()) else EXIT_IDENTITY
    if cmd == "ram":
        return ram_list(args.degree, args.text), EXIT_OK
    if cmd == "hurwitz":
        return hurwitz_count(args.degree, args.types, args.orbits, args.audit_table), EXIT_OK
    out, ok = verify_all(args.jobs, args.only)
    return out, EXIT_OK if ok else EXIT_IDENTITY


def dispatch(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        out, code = run(args)
    except CliError as exc:
        out, code = {"code": exc.code, "message": str(exc)}, exc.code
        if exc.note:
            out["paper_note"] = exc.note
    except (InvariantError, l2.LocusError, l3.LocusError, covers.CoverTypeError,
            hurwitz.HurwitzError) as exc:
        out, code = {"code": EXIT_PRECONDITION, "message": str(exc)}, EXIT_PRECONDITION
    print(out if isinstance(out, str) else dumps(out), file=stdout)
    return code


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
