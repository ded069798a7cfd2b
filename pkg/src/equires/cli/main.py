"""Command line front end.

Exit codes: 0 success, 1 parse error, 2 validation failure, 3 out of scope.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from ..errors import EquiresError, InvalidSpaceError, OutOfScopeError, SchemaError, WindowError
from ..resolution import BUILDERS, validate_resolution
from ..theories import (
    chern_rank,
    chern_triangle_check,
    delocalized_cohomology,
    equivariant_cohomology,
    fixed_point_classes,
    k_theory,
)
from .serialize import parse_space

__all__ = ["main", "run", "MAX_PARAM", "ParseError"]

MAX_PARAM = 64


class ParseError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2, which is reserved for validation failures
    def error(self, message):
        raise ParseError(message)


def _bounded(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if not 0 <= v <= MAX_PARAM:
        raise argparse.ArgumentTypeError(f"{v} is outside 0..{MAX_PARAM}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="equires", description="Equivariant cohomology, delocalized cohomology and K-theory of resolved actions.")
    p.add_argument("space", help=f"builder name ({', '.join(BUILDERS)}) or path to a JSON space file")
    p.add_argument("--validate", action="store_true", help="run the resolution validator")
    p.add_argument("--hg", type=_bounded, metavar="D", help="equivariant cohomology up to degree D")
    p.add_argument("--hdl", type=_bounded, metavar="W", help="delocalized cohomology in window W")
    p.add_argument("--k", type=_bounded, metavar="W", help="K^0 in window W")
    p.add_argument("--chern", type=_bounded, nargs=2, metavar=("D", "W"), help="Chern character checks")
    p.add_argument("--ab", type=_bounded, metavar="D", help="fixed point push-forward of Borel classes up to degree D")
    p.add_argument("--format", choices=("text", "csv", "jsonl"), default="text")
    p.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    return p


def load(spec: str):
    if os.path.exists(spec):
        try:
            with open(spec, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"{spec}: {exc.strerror}") from None
        try:
            return parse_space(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{spec}: malformed JSON at line {exc.lineno} column {exc.colno} (char {exc.pos}): {exc.msg}") from None
        except SchemaError as exc:
            raise ParseError(f"{spec}: {exc}") from None
    if spec in BUILDERS:
        return BUILDERS[spec]()
    raise ParseError(f"unknown builder or file {spec!r}")


# records ----------------------------------------------------------------------------


def _rec(space, comp, params, rows, notes=()):
    return {
        "space": space,
        "computation": comp,
        "params": {k: str(v) for k, v in params},
        "rows": [[str(a), str(b)] for a, b in rows],
        "notes": list(notes),
    }


def _validate(s):
    rep = validate_resolution(s)
    rows = [("ok", "true" if rep.ok else "false")]
    for i in rep.issues:
        cells = ",".join(i.cells)
        rows.append(("issue", f"{i.code}: {i.message}" + (f" [cells: {cells}]" if cells else "")))
    return _rec(s.name, "validate", (), rows, rep.notes), rep.ok


def _theory_rec(s, comp, r):
    rows = list(r.rows())
    if r.theory == "K":
        rows = [("rank", r.dims[0]), ("torsion", "none"), ("K1", 0)]
        rows.append(("invariant_factors", " ".join(str(x) for x in r.invariant_factors) or "-"))
        rows += [(f"generator {i}", g) for i, g in enumerate(r.generators)]
    return _rec(s.name, comp, r.params, rows, r.notes)


def _chern(s, D, W):
    rep = chern_triangle_check(s, D, W)
    rk, ev = chern_rank(s, W)
    rows = [("triangle", "pass" if rep.ok else "fail"), ("checked", rep.checked), ("ch_rank", rk), ("hdl_even", ev)]
    rows += [("failure", f) for f in rep.failures]
    return _rec(s.name, "chern", (("D", D), ("W", W)), rows)


def _ab(s, D):
    rows = []
    for j, vals, res in fixed_point_classes(s, D):
        key = f"j={j} (" + ", ".join(str(v) for v in vals) + ")"
        rows.append((key, res if not isinstance(res, Exception) else f"obstruction: {res}"))
    return _rec(s.name, "ab", (("D", D),), rows)


def run(args) -> tuple:
    """Run every requested computation; returns ``(records, exit code, message)``."""
    s = load(args.space)
    recs = []
    try:
        if args.validate:
            r, ok = _validate(s)
            recs.append(r)
            if not ok:
                return recs, 2, "validation failed"
        if args.hg is not None:
            recs.append(_theory_rec(s, "hg", equivariant_cohomology(s, args.hg)))
        if args.hdl is not None:
            recs.append(_theory_rec(s, "hdl", delocalized_cohomology(s, args.hdl)))
        if args.k is not None:
            recs.append(_theory_rec(s, "k", k_theory(s, args.k)))
        if args.chern is not None:
            recs.append(_chern(s, *args.chern))
        if args.ab is not None:
            recs.append(_ab(s, args.ab))
    except InvalidSpaceError as exc:
        for i in exc.report.issues:
            recs.append(_rec(s.name, "validate", (), [("issue", f"{i.code}: {i.message} [cells: {','.join(i.cells)}]")]))
        return recs, 2, str(exc)
    except (OutOfScopeError, WindowError) as exc:
        return recs, 3, str(exc)
    return recs, 0, ""


# formatting -------------------------------------------------------------------------


def format_records(recs, fmt: str) -> str:
    if fmt == "jsonl":
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in recs)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["space", "computation", "params", "key", "value"])
        for r in recs:
            ps = ";".join(f"{k}={v}" for k, v in r["params"].items())
            for a, b in r["rows"]:
                w.writerow([r["space"], r["computation"], ps, a, b])
        return buf.getvalue()
    out = []
    for r in recs:
        ps = " ".join(f"{k}={v}" for k, v in r["params"].items())
        out.append(f"== {r['space']}: {r['computation']}" + (f" ({ps})" if ps else ""))
        width = max((len(a) for a, _ in r["rows"]), default=0)
        out += [f"  {a.ljust(width)}  {b}" for a, b in r["rows"]]
        out += [f"  note: {n}" for n in r["notes"]]
    return "\n".join(out) + ("\n" if out else "")


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        recs, code, msg = run(args)
    except ParseError as exc:
        print(f"equires: error: {exc}", file=sys.stderr)
        return 1
    except EquiresError as exc:
        print(f"equires: error: {exc}", file=sys.stderr)
        return 1
    text = format_records(recs, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if msg:
        print(f"equires: {msg}", file=sys.stderr)
    return code
