"""Command-line front end.

Exit codes: 0 success, 1 a checked property failed, 2 usage or resource error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import poset as poset_io
from .decompose import (
    brute_force_indecomposable,
    component_split,
    decompose,
    is_c_indecomposable,
    omega,
    verify_minkowski,
    BRUTE_MAX_MARKS,
    BRUTE_MAX_VALUE,
)
from .equivalence import StarRelationError, build_unimodular_map, verify_equivalence
from .families import demazure_poset, gt_poset, star_poset, symplectic_poset
from .lattice import LatticePointSet, dilate_counts, enumerate_chain_points, enumerate_order_points
from .oracle import MAX_DIM, MAX_FVECTOR_DIM, MAX_ROWS, enumerate_vertices, f_vector, facet_count
from .polytope import (
    HRep,
    NotRegularError,
    chain_hrep,
    facet_count_chain,
    facet_count_order,
    has_star_relation,
    order_hrep,
)
from .poset import MarkedPoset, ResourceError, normalize_marking, validate
from .regularize import RegularizationTrace, regularity_violations, regularize


class UsageError(Exception):
    pass


def _rational(v) -> str:
    return str(Fraction(v))


def _write(text: str, path: Optional[str]) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _poset_text(p: MarkedPoset) -> str:
    lines = ["elements: " + " ".join(p.elements)]
    lines.append("covers: " + " ".join(f"{x}<{y}" for x, y in p.covers))
    lines.append("marking: " + " ".join(f"{a}={p.marking[a]}" for a in p.elements if a in p.marking))
    return "\n".join(lines) + "\n"


def _emit_poset(p: MarkedPoset, fmt: str, path: Optional[str] = None) -> None:
    _write(poset_io.dumps(p) if fmt == "json" else _poset_text(p), path)


def _read(path: str) -> MarkedPoset:
    try:
        if path == "-":
            return poset_io.loads(sys.stdin.read())
        return poset_io.load(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _read_valid(path: str) -> MarkedPoset:
    p = _read(path)
    problems = validate(p)
    if problems:
        raise UsageError(f"{path}: invalid marked poset: " + "; ".join(problems))
    return p


def _trace_lines(trace: RegularizationTrace) -> str:
    return "".join(f"regularize: {json.dumps(step, ensure_ascii=False)}\n" for step in trace.steps)


def _regular_input(args) -> MarkedPoset:
    """Load a poset for a regular-only command, regularizing under ``--regular``."""
    p = _read_valid(args.file)
    if getattr(args, "regular", False):
        reg, trace = regularize(p)
        if getattr(args, "trace", None):
            _write(_json(trace.to_json_obj()), args.trace)
        else:
            sys.stderr.write(_trace_lines(trace))
        return reg
    problems = regularity_violations(p)
    if problems:
        raise UsageError("input is not regular (pass --regular): " + "; ".join(problems))
    return p


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args) -> int:
    p = _read(args.file)
    problems = validate(p)
    if args.format == "json":
        _write(_json({"valid": not problems, "problems": problems}), None)
    elif problems:
        _write("".join(f"invalid: {msg}\n" for msg in problems), None)
    else:
        _write("valid\n", None)
    return 1 if problems else 0


def cmd_regularize(args) -> int:
    p = _read_valid(args.file)
    reg, trace = regularize(p)
    _emit_poset(reg, args.format, args.output)
    if args.trace:
        _write(_json(trace.to_json_obj()), args.trace)
    return 0


def cmd_facets(args) -> int:
    p = _regular_input(args)
    order, chain = facet_count_order(p), facet_count_chain(p)
    if args.order_hrep:
        _write(order_hrep(p).to_text(), args.order_hrep)
    if args.chain_hrep:
        _write(chain_hrep(p).to_text(), args.chain_hrep)
    if args.format == "json":
        _write(_json({"order": order, "chain": chain}), None)
    else:
        _write(f"order={order} chain={chain}\n", None)
    return 0


def cmd_star(args) -> int:
    p = _regular_input(args) if args.regular else _read_valid(args.file)
    w = has_star_relation(p)
    if args.format == "json":
        obj = None if w is None else {"center": w.center, "lower": list(w.lower), "upper": list(w.upper)}
        _write(_json({"star": obj}), None)
    elif w is None:
        _write("star: none\n", None)
    else:
        _write(f"star: {' '.join(w.elements())} (center {w.center})\n", None)
    return 0


def cmd_equiv(args) -> int:
    p = _regular_input(args)
    try:
        psi = build_unimodular_map(p)
    except StarRelationError as exc:
        sys.stderr.write(f"no unimodular map: {exc}\n")
        return 1
    report = verify_equivalence(p, psi)
    if args.format == "json":
        _write(
            _json(
                {
                    "coordinates": list(psi.coordinates),
                    "matrix": [list(r) for r in psi.matrix],
                    "translation": list(psi.translation),
                    "determinant": psi.determinant(),
                    "checks": report.checks,
                    "ok": report.ok,
                }
            ),
            None,
        )
    else:
        out = ["coordinates: " + " ".join(psi.coordinates), "matrix:"]
        out += ["  " + " ".join(str(c) for c in row) for row in psi.matrix]
        out.append("translation: " + " ".join(str(c) for c in psi.translation))
        out.append(f"determinant: {psi.determinant()}")
        out += report.lines()
        _write("\n".join(out) + "\n", None)
    return 0 if report.ok else 1


def _points(p: MarkedPoset, which: str) -> LatticePointSet:
    return enumerate_order_points(p) if which == "order" else enumerate_chain_points(p)


def cmd_points(args) -> int:
    p = _read_valid(args.file)
    if args.dilate != 1:
        p = p.scaled(args.dilate)
    pts = _points(p, args.polytope)
    if args.count:
        _write(f"{len(pts)}\n", args.output)
    elif args.format == "json":
        _write(_json({"coordinates": list(pts.coordinates), "points": [list(q) for q in pts]}), args.output)
    else:
        _write(pts.to_text(), args.output)
    return 0


def cmd_ehrhart(args) -> int:
    p = _read_valid(args.file)
    if args.max_dilate < 1:
        raise UsageError("--max-dilate must be at least 1")
    rows = dilate_counts(p, args.max_dilate)
    if args.format == "json":
        _write(_json([{"k": k, "chain": c, "order": o} for k, c, o in rows]), None)
    else:
        _write("".join(f"k={k} chain={c} order={o}\n" for k, c, o in rows), None)
    return 0 if all(c == o for _, c, o in rows) else 1


def _normalized(p: MarkedPoset) -> MarkedPoset:
    q, shift = normalize_marking(p)
    if shift:
        sys.stderr.write(f"marking shifted by {-shift} to normalize\n")
    return q


def cmd_decompose(args) -> int:
    p = _normalized(_read_valid(args.file))
    dec = decompose(p)
    if args.format == "json":
        _write(_json(dec.to_json_obj()), None)
    else:
        lines = []
        for part, prov in zip(dec.parts, dec.provenance):
            vals = " ".join(f"{a}={part[a]}" for a in p.elements if a in part)
            lines.append(f"round={prov['round']} component={prov['component']}: {vals}")
        _write("\n".join(lines) + ("\n" if lines else ""), None)
    return 0


def cmd_indecomposable(args) -> int:
    p = _normalized(_read_valid(args.file))
    verdict = brute_force_indecomposable(p) if args.brute else is_c_indecomposable(p)
    if args.format == "json":
        _write(_json({"indecomposable": verdict.indecomposable, "witness": verdict.witness, **verdict.metadata}), None)
    else:
        word = "indecomposable" if verdict else "decomposable"
        extra = "" if verdict else f" {json.dumps(verdict.witness, ensure_ascii=False, sort_keys=True)}"
        _write(f"{word}{extra}\n", None)
    return 0


def _read_hrep(path: str) -> HRep:
    try:
        if path == "-":
            return HRep.from_text(sys.stdin.read())
        with open(path, encoding="utf-8") as fh:
            return HRep.from_text(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def cmd_oracle(args) -> int:
    h = _read_hrep(args.file)
    verts = enumerate_vertices(h, method=args.method)
    if args.what == "vertices":
        if args.format == "json":
            _write(_json({"coordinates": list(h.coordinates), "vertices": [[_rational(c) for c in v] for v in verts]}), None)
        else:
            lines = [" ".join(h.coordinates)] + [" ".join(_rational(c) for c in v) for v in verts]
            _write("\n".join(lines) + "\n", None)
    elif args.what == "facets":
        n = facet_count(h, verts)
        _write(_json({"facets": n}) if args.format == "json" else f"facets={n}\n", None)
    else:
        fv = f_vector(h, verts)
        _write(_json({"f_vector": list(fv)}) if args.format == "json" else "f=(" + ",".join(map(str, fv)) + ")\n", None)
    return 0


def cmd_family(args) -> int:
    if args.kind == "gt":
        p = gt_poset(args.values)
    elif args.kind == "sp":
        p = symplectic_poset(args.values)
    elif args.kind == "demazure":
        if args.m is None or not args.values:
            raise UsageError("demazure needs diagonal lengths and --m")
        p = demazure_poset(args.values, args.m)
    else:
        if len(args.values) not in (0, 2):
            raise UsageError("star takes no values or a bottom and a top mark")
        p = star_poset(*args.values)
    _emit_poset(p, args.format, args.output)
    return 0


def _check_rows(p: MarkedPoset) -> list[tuple[str, Optional[bool]]]:
    """Invariant suite; ``None`` marks a check skipped by a size guard."""
    rows: list[tuple[str, Optional[bool]]] = []
    oh, ch = order_hrep(p), chain_hrep(p)
    fo, fc = facet_count_order(p), facet_count_chain(p)
    small = len(p.unmarked) <= MAX_DIM and len(ch.rows) <= MAX_ROWS
    star = has_star_relation(p)
    if small:
        vo, vc = enumerate_vertices(oh), enumerate_vertices(ch)
        oo, oc = facet_count(oh, vo), facet_count(ch, vc)
        rows.append(("order facets = cover count", oo == fo))
        rows.append(("chain facets = |P\\A| + sum c(a,b)", oc == fc))
    else:
        rows += [("order facets = cover count", None), ("chain facets = |P\\A| + sum c(a,b)", None)]
    rows.append(("order facets <= chain facets", fo <= fc))
    rows.append(("equality iff star-free", (fo == fc) == (star is None)))
    rows.append(("ehrhart k=1..3", all(c == o for _, c, o in dilate_counts(p, 3))))
    if star is None:
        rep = verify_equivalence(p, build_unimodular_map(p)) if small else None
        rows.append(("unimodular map", None if rep is None else rep.ok))
        if small and len(p.unmarked) <= MAX_FVECTOR_DIM - 1:
            rows.append(("f-vectors agree", f_vector(oh, vo) == f_vector(ch, vc)))
    q, _ = normalize_marking(p)
    lam = dict(q.marking)
    om = omega(lam)
    rest = {a: lam[a] - om[a] for a in lam}
    rows.append(("minkowski omega split", verify_minkowski(q, lam, [rest, om]) if any(rest.values()) else True))
    rows.append(("minkowski decomposition", verify_minkowski(q, lam, decompose(q).parts)))
    if all(v <= 1 for v in lam.values()):
        parts = [part for part, _ in component_split(q, lam)]
        rows.append(("minkowski component split", verify_minkowski(q, lam, parts) if parts else True))
    if len(lam) <= BRUTE_MAX_MARKS and max(lam.values(), default=0) <= BRUTE_MAX_VALUE:
        rows.append(("indecomposable matches brute force", bool(is_c_indecomposable(q)) == bool(brute_force_indecomposable(q))))
    else:
        rows.append(("indecomposable matches brute force", None))
    return rows


def cmd_check(args) -> int:
    p = _regular_input(args)
    rows = _check_rows(p)
    status = {True: "pass", False: "FAIL", None: "skip"}
    if args.format == "json":
        _write(_json({name: status[ok] for name, ok in rows}), None)
    else:
        width = max(len(name) for name, _ in rows)
        _write("".join(f"{name:<{width}}  {status[ok]}\n" for name, ok in rows), None)
    return 1 if any(ok is False for _, ok in rows) else 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="posetpoly", description="Marked order and chain polytopes.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name: str, func: Callable, help: str, file: bool = True) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(func=func)
        if file:
            sp.add_argument("file", help="marked-poset JSON file ('-' for stdin)")
        sp.add_argument("--format", choices=("json", "text"), default="text")
        return sp

    def regular_flags(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--regular", action="store_true", help="regularize the input first")
        sp.add_argument("--trace", help="write the regularization trace here (JSON)")

    add("validate", cmd_validate, "check the marked-poset invariants")
    sp = add("regularize", cmd_regularize, "rewrite into regular form", file=True)
    sp.add_argument("-o", "--output", help="output poset file (default stdout)")
    sp.add_argument("--trace", help="trace file (JSON list of steps)")
    sp.set_defaults(format="json")
    sp = add("facets", cmd_facets, "facet counts of both polytopes")
    regular_flags(sp)
    sp.add_argument("--order-hrep", help="export the order polytope rows here")
    sp.add_argument("--chain-hrep", help="export the chain polytope rows here")
    sp = add("star", cmd_star, "find a star relation")
    regular_flags(sp)
    sp = add("equiv", cmd_equiv, "build and verify the unimodular map")
    regular_flags(sp)
    sp = add("points", cmd_points, "enumerate lattice points")
    sp.add_argument("--polytope", choices=("order", "chain"), default="order")
    sp.add_argument("--dilate", type=int, default=1)
    sp.add_argument("--count", action="store_true", help="print only the number of points")
    sp.add_argument("-o", "--output")
    sp = add("ehrhart", cmd_ehrhart, "compare lattice-point counts of dilates")
    sp.add_argument("--max-dilate", type=int, default=3)
    add("decompose", cmd_decompose, "Minkowski decomposition into indecomposables")
    sp = add("indecomposable", cmd_indecomposable, "decide C-indecomposability")
    sp.add_argument("--brute", action="store_true", help="use the brute-force search")
    sp = add("oracle", cmd_oracle, "exact polyhedral computations on an HRep file", file=False)
    sp.add_argument("what", choices=("facets", "vertices", "fvector"))
    sp.add_argument("file", help="HRep text file ('-' for stdin)")
    sp.add_argument("--method", choices=("dd", "subsets"), default="dd")
    sp = add("family", cmd_family, "emit a named marked poset", file=False)
    sp.add_argument("kind", choices=("gt", "sp", "demazure", "star"))
    sp.add_argument("values", nargs="*", type=int, help="lambda, diagonal lengths, or star marks")
    sp.add_argument("--m", type=int, help="top mark of the Demazure poset")
    sp.add_argument("-o", "--output")
    sp.set_defaults(format="json")
    sp = add("check", cmd_check, "run the invariant suite and print a table")
    regular_flags(sp)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, NotRegularError, ResourceError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        sys.stderr.write(f"posetpoly {args.command}: error: {msg}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
