"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 truncated run.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import braided as B
from .braided import BraidedError, BraidedSpace
from .field import FieldError, FieldSpec, auto_k, make_field
from .nichols import FINITE, NicholsError, compute
from .splitting import dynkin, displayed_diagram, k1_for
from .verify import (
    VerifyError, bosonization_dim, canonical_orders, fuzz_check, lemma_suite, oracle_check, relation_suite,
    split_report, table1_check,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_TRUNCATED = 0, 1, 2, 3

FAMILIES = ("jordan", "block", "lstr", "pale", "block_points", "poseidon", "diagonal")


class UsageError(ValueError):
    pass


# -- parameters ------------------------------------------------------------------------

def _split_list(text: str | None) -> list[str]:
    return [t.strip() for t in text.split(",")] if text else []


def _matrix_strings(text: str | None) -> list[list[str]]:
    if not text:
        return []
    return [_split_list(row) for row in text.split(";")]


def _field_strings(args) -> list[str]:
    out = [getattr(args, k) for k in ("p", "q22", "a", "eps") if getattr(args, k, None)]
    out += [e for row in _matrix_strings(getattr(args, "q", None)) for e in row]
    out += _split_list(getattr(args, "avec", None))
    return out


def select_field(args) -> FieldSpec:
    """``--k n`` or ``--k auto``: the smallest k holding every ord: and int: parameter."""
    if args.k != "auto":
        try:
            return make_field(int(args.k))
        except ValueError:
            raise UsageError(f"--k must be an integer or 'auto', got {args.k!r}") from None
    orders, masks = [], []
    for s in _field_strings(args):
        kind, _, val = s.partition(":")
        try:
            n = int(val)
        except ValueError:
            raise UsageError(f"bad field element {s!r}") from None
        if kind == "ord":
            orders.append(n)
        elif kind == "int":
            masks.append(n)
        else:
            raise UsageError(f"bad field element {s!r}")
    return make_field(auto_k(orders, masks))


def _need(args, *names):
    for n in names:
        if getattr(args, n, None) in (None, ""):
            raise UsageError(f"family {args.family} needs --{n}")


def build_space(args) -> BraidedSpace:
    F = select_field(args)
    fam = args.family
    if fam is None:
        raise UsageError("--family is required")
    el = F.parse
    if fam == "jordan":
        return B.jordan(F)
    if fam == "block":
        _need(args, "eps")
        return B.block(el(args.eps), args.l)
    if fam == "lstr":
        _need(args, "p", "q22", "a")
        return B.lstr(el(args.p), el(args.q22), el(args.a))
    if fam == "pale":
        _need(args, "p", "q22")
        return B.pale(el(args.p), el(args.q22))
    q = [[el(e) for e in row] for row in _matrix_strings(args.q)]
    if fam == "diagonal":
        _need(args, "q")
        return B.diagonal(q)
    if fam in ("block_points", "poseidon"):
        _need(args, "q", "avec")
        a = [el(e) for e in _split_list(args.avec)]
        return (B.block_points if fam == "block_points" else B.poseidon)(q, a)
    raise UsageError(f"unknown family {fam!r}")


def space_summary(space: BraidedSpace) -> dict:
    return {"family": space.family, "labels": space.label_names(), "field": space.field.to_json(),
            "params": space.params}


# -- output ------------------------------------------------------------------------------

def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    lines: list[str] = []

    def walk(prefix, v):
        if isinstance(v, dict):
            for k in sorted(v):
                walk(f"{prefix}.{k}" if prefix else str(k), v[k])
        elif isinstance(v, list) and any(isinstance(x, (dict, list)) for x in v):
            for i, x in enumerate(v):
                walk(f"{prefix}[{i}]", x)
        else:
            lines.append(f"{prefix}: {json.dumps(v, sort_keys=True)}")

    walk("", report)
    return "\n".join(lines) + "\n"


def _emit(args, report: dict) -> Path | None:
    text = render(report, args.format)
    if args.out in (None, "-", "stdout"):
        sys.stdout.write(text)
        return None
    path = Path(args.out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    return path


def _figure_base(args, out: Path | None) -> Path | None:
    """Figures go next to the output file, or into --figures DIR."""
    if args.no_figures:
        return None
    if args.figures:
        d = Path(args.figures)
        d.mkdir(parents=True, exist_ok=True)
        return d / args.command
    if out is not None:
        return out.with_suffix("")
    return None


def _hilbert_figure(args, out, dims, truncated, title):
    base = _figure_base(args, out)
    if base is None:
        return []
    from .plots import hilbert_chart

    return [str(hilbert_chart(dims, f"{base}_hilbert.png", title, truncated))]


def _dynkin_figure(args, out, diagram, title):
    base = _figure_base(args, out)
    if base is None:
        return []
    from .plots import dynkin_figure

    return [str(dynkin_figure(diagram, f"{base}_dynkin.png", title))]


def _finish(args, report: dict, code: int, figures=None) -> int:
    out = _emit(args, report)
    if figures is not None:
        paths = figures(out)
        if paths:
            print("figures: " + ", ".join(paths), file=sys.stderr)
    return code


# -- commands ----------------------------------------------------------------------------

def cmd_compute(args) -> int:
    space = build_space(args)
    gb = compute(space, args.max_degree)
    h = gb.hilbert()
    report = {"command": "compute", "space": space_summary(space), "hilbert": h.to_json(),
              "max_degree": args.max_degree}
    code = EXIT_OK if gb.status == FINITE else EXIT_TRUNCATED
    title = f"{space.family} Hilbert series"
    return _finish(args, report, code, lambda out: _hilbert_figure(args, out, h.dims, gb.status != FINITE, title))


def cmd_verify(args) -> int:
    space = build_space(args)
    report: dict = {"command": "verify", "space": space_summary(space)}
    ok = True
    if space.family in ("jordan", "block", "lstr", "pale", "poseidon"):
        try:
            rep = relation_suite(space, expensive=args.expensive)
        except VerifyError as exc:
            # infinite instances have no presentation; the identities still apply
            if not args.lemmas:
                raise
            report["relations_skipped"] = str(exc)
        else:
            report["relations"] = rep.to_json()
            ok &= rep.passed
    if args.lemmas or space.family == "block_points":
        lem = lemma_suite(space)
        report["lemmas"] = lem.to_json()
        ok &= lem.passed
    if "relations" not in report and "lemmas" not in report:
        raise UsageError(f"no verification suite for family {space.family!r}")
    if args.fuzz:
        gb = compute(space, args.max_degree)
        fz = fuzz_check(gb, args.fuzz, args.seed)
        report["fuzz"] = fz.to_json()
        ok &= fz.passed
    dims = report.get("relations", {}).get("hilbert", {}).get("engine")
    title = f"{space.family} Hilbert series"
    figures = (lambda out: _hilbert_figure(args, out, dims, report["relations"]["hilbert"]["status"] != FINITE,
                                           title)) if dims else None
    return _finish(args, report, EXIT_OK if ok else EXIT_FAIL, figures)


def cmd_dynkin(args) -> int:
    space = build_space(args)
    k1 = k1_for(space)
    d = dynkin(k1.q_matrix, k1.names)
    report = {"command": "dynkin", "space": space_summary(space), "k1": k1.to_json(), "dynkin": d.to_json(),
              "connected": d.is_connected()}
    if args.format == "text":
        report["diagram_text"] = d.text().splitlines()
    try:
        shown = displayed_diagram(space)
    except BraidedError as exc:
        report["displayed"] = {"available": False, "reason": str(exc)}
    else:
        exact = d.isomorphic(shown)
        report["displayed"] = {"available": True, "diagram": shown.to_json(), "isomorphic": exact,
                               "contains": exact or d.contains(shown)}
    title = f"K^1 Dynkin diagram ({space.family})"
    return _finish(args, report, EXIT_OK, lambda out: _dynkin_figure(args, out, d, title))


def cmd_split(args) -> int:
    space = build_space(args)
    k1, gb, rep = split_report(space, args.max_degree)
    report = {"command": "split", "space": space_summary(space), "k1": k1.to_json(),
              "consistency": rep.to_json(), "status": gb.status}
    if not rep.passed:
        code = EXIT_FAIL
    else:
        code = EXIT_OK if gb.status == FINITE else EXIT_TRUNCATED
    return _finish(args, report, code)


def cmd_oracle(args) -> int:
    space = build_space(args)
    rep = oracle_check(space, args.max_degree)
    report = {"command": "oracle", "space": space_summary(space), "oracle": rep.to_json()}
    return _finish(args, report, EXIT_OK if rep.passed else EXIT_FAIL)


def cmd_table1(args) -> int:
    args.family = args.row
    space = build_space(args)
    res = table1_check(space, expensive=args.expensive)
    report = {"command": "table1", "space": space_summary(space), "table1": res.to_json()}
    code = EXIT_TRUNCATED if res.passed is None else (EXIT_OK if res.passed else EXIT_FAIL)
    return _finish(args, report, code,
                   lambda out: _hilbert_figure(args, out, res.dims, res.status != FINITE, f"reference row: {res.row}"))


def cmd_boson(args) -> int:
    space = build_space(args)
    if args.orders:
        try:
            orders = [int(x) for x in _split_list(args.orders)]
        except ValueError:
            raise UsageError(f"--orders must be comma-separated integers, got {args.orders!r}") from None
    else:
        orders = canonical_orders(space, args.N)
    res = bosonization_dim(space, orders, expensive=args.expensive)
    report = {"command": "boson", "space": space_summary(space), "bosonization": res.to_json()}
    return _finish(args, report, EXIT_FAIL if res.formula_matches is False else EXIT_OK)


COMMANDS = {
    "compute": cmd_compute, "verify": cmd_verify, "dynkin": cmd_dynkin, "split": cmd_split,
    "oracle": cmd_oracle, "table1": cmd_table1, "boson": cmd_boson,
}


# -- argument parsing ----------------------------------------------------------------------

def _common(p: argparse.ArgumentParser, family: bool = True):
    if family:
        p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--p", help="q12 of the block/point families (field element: int:<mask> or ord:<M>)")
    p.add_argument("--q22", help="braiding of the point with itself")
    p.add_argument("--a", help="interaction parameter of lstr")
    p.add_argument("--q", help="braiding matrix, rows separated by ';' and entries by ','")
    p.add_argument("--avec", help="a-vector for block_points / poseidon, comma separated")
    p.add_argument("--eps", help="eigenvalue of a block")
    p.add_argument("--l", type=int, default=2, help="size of a block (default 2)")
    p.add_argument("--k", default="auto", help="field GF(2^k): an integer or 'auto' (default)")
    p.add_argument("--max-degree", type=int, default=16, dest="max_degree")
    p.add_argument("--out", default="-", help="output path, or '-' for stdout")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--expensive", action="store_true", help="allow full runs of large algebras")
    p.add_argument("--figures", metavar="DIR", help="write PNG figures into DIR")
    p.add_argument("--no-figures", action="store_true", dest="no_figures",
                   help="do not write figures next to --out")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nicholsgf2", description="Nichols algebras over GF(2^k).")
    sub = parser.add_subparsers(dest="command", required=True)
    _common(sub.add_parser("compute", help="graded dimensions of B(V)"))
    v = sub.add_parser("verify", help="relation suite, PBW comparison, lemma identities")
    _common(v)
    v.add_argument("--lemmas", action="store_true", help="also run the identity suite")
    v.add_argument("--fuzz", type=int, default=0, metavar="N", help="N random derivation/product checks")
    v.add_argument("--seed", type=int, default=0, help="seed for --fuzz sampling only")
    _common(sub.add_parser("dynkin", help="Dynkin diagram of K^1"))
    s = sub.add_parser("split", help="K^1 data and Hilbert series factorization")
    _common(s)
    s.set_defaults(max_degree=None)
    o = sub.add_parser("oracle", help="engine against quantum symmetrizer ranks")
    _common(o)
    o.set_defaults(max_degree=5)
    t = sub.add_parser("table1", help="check one row of the reference dimension table")
    _common(t, family=False)
    t.add_argument("--row", choices=("lstr", "pale", "poseidon"), required=True)
    b = sub.add_parser("boson", help="dimension of the bosonization B(V) # kGamma")
    _common(b)
    b.add_argument("--orders", help="orders of the cyclic factors of Gamma, comma separated")
    b.add_argument("--N", type=int, help="common order N for poseidon (default: smallest valid)")
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except (UsageError, BraidedError, FieldError, VerifyError, NicholsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


__all__ = ["run", "main", "make_parser", "build_space", "render", "select_field"]
