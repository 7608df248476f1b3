"""Command-line front end.

Exit status: 0 on success, 1 when a validation or property check fails,
2 for usage and I/O errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import List, Optional

from . import catalog
from .catalog import CatalogEntry
from .catalog_io import FormatError, ValidationError, load
from .elementary_group import (MINUS, PLUS, GroupElement, MembershipError, act_in_chart, bergman,
                               chart_failures)
from .exact_linalg import Matrix, det
from .filtration import Filtration, NotTransversal, chart_coordinates, chart_embed, torsor_solve
from .flag_geometry import canonical_kernel, kernel_transversality, point
from .lie_algebra import LieAlgebra
from .properties import SUITES, run_suite
from .scalar import scalar, to_str
from .vector_fields import bracket_annotation, realize

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# input parsing


def parse_vector(L: LieAlgebra, text: str) -> tuple:
    """``[1, 0, -1/2]`` or a combination of labels such as ``2*e - 1/3*f``."""
    text = text.strip()
    if text.startswith("["):
        if not text.endswith("]"):
            raise UsageError(f"unterminated vector {text!r}")
        body = text[1:-1].strip()
        items = [s.strip().strip('"') for s in body.split(",")] if body else []
        if len(items) != L.dim:
            raise UsageError(f"vector has {len(items)} entries, the algebra has dimension {L.dim}")
        try:
            return tuple(scalar(s) for s in items)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad rational in {text!r}") from None
    v = [scalar(0)] * L.dim
    if text in ("", "0"):
        return tuple(v)
    terms = re.findall(r"([+-]?)\s*([^+-]+)", text.replace(" ", ""))
    if not terms or "".join(s + t for s, t in terms) != text.replace(" ", ""):
        raise UsageError(f"cannot parse {text!r}")
    for sign, term in terms:
        coef, _, label = term.rpartition("*")
        try:
            c = scalar(coef) if coef else scalar(1)
            j = L.labels.index(label)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"cannot parse term {sign}{term!r}") from None
        v[j] += -c if sign == "-" else c
    return tuple(v)


def parse_word(entry: CatalogEntry, text: str) -> GroupElement:
    """``+[0,1,0];-[1,0,0]``: generators applied left to right."""
    G0 = entry.grading
    word = []
    for part in filter(None, (p.strip() for p in text.split(";"))):
        side, body = part[0], part[1:]
        if side not in (PLUS, MINUS):
            raise UsageError(f"generator {part!r} must start with '+' or '-'")
        word.append((side, parse_vector(entry.algebra, body)))
    try:
        return GroupElement(G0, word)
    except MembershipError as exc:
        raise UsageError(str(exc)) from None


def load_entry(spec: Optional[str]) -> CatalogEntry:
    if not spec:
        raise UsageError("--algebra is required")
    if spec.startswith("catalog:"):
        try:
            return catalog.by_name(spec[len("catalog:"):])
        except (KeyError, ValueError) as exc:
            raise UsageError(str(exc)) from None
    obj = load(spec)
    if isinstance(obj, CatalogEntry):
        return obj
    raise UsageError(f"{spec} does not describe a graded algebra")


# output


def fmt_matrix(m: Matrix) -> List[List[str]]:
    return [[to_str(a) for a in row] for row in m.rows]


def _human_matrix(m: Matrix) -> str:
    rows = fmt_matrix(m)
    if not rows:
        return "  (empty)"
    w = max(len(a) for r in rows for a in r) if rows[0] else 1
    return "\n".join("  [" + " ".join(a.rjust(w) for a in r) + "]" for r in rows)


def emit(args, data: dict, human: str):
    if args.format == "json":
        print(json.dumps(data, sort_keys=True))
    else:
        print(human)


def _layer(args, entry) -> int:
    i = args.layer if args.layer is not None else 1
    if not 1 <= i <= entry.grading.k:
        raise UsageError(f"layer {i} outside 1..{entry.grading.k}")
    return i


# commands


def cmd_catalog(args) -> int:
    if not args.name:
        emit(args, {"names": list(catalog.NAMES)}, "\n".join(catalog.NAMES))
        return EXIT_OK
    entry = load_entry("catalog:" + args.name)
    G = entry.grading
    dims = {str(d): G.layers[d].dim for d in G.degrees}
    data = {"name": entry.name, "dim": entry.algebra.dim, "k": G.k, "layers": dims,
            "labels": list(entry.algebra.labels), "notes": entry.notes}
    human = (f"{entry.name}: dim {entry.algebra.dim}, k = {G.k}\n"
             f"layer dims (degree {G.k} down to {-G.k}): {[G.layers[d].dim for d in G.degrees]}\n"
             f"basis: {' '.join(entry.algebra.labels)}\n{entry.notes}")
    if args.save:
        from .catalog_io import save

        save(entry, args.save)
        human += f"\nwritten to {args.save}"
        data["written"] = args.save
    emit(args, data, human)
    return EXIT_OK


def cmd_validate(args) -> int:
    try:
        entry = load_entry(args.algebra)
    except ValidationError as exc:
        report = [{k: (list(v) if isinstance(v, tuple) else v) for k, v in r.items()} for r in exc.report]
        emit(args, {"ok": False, "error": str(exc), "violations": report},
             f"INVALID: {exc}\n" + "\n".join(f"  {r}" for r in report))
        return EXIT_FAIL
    report = catalog.check_entry(entry)
    if report:
        emit(args, {"ok": False, "violations": report}, "INVALID\n" + "\n".join(f"  {r}" for r in report))
        return EXIT_FAIL
    G = entry.grading
    emit(args, {"ok": True, "name": entry.name, "dim": entry.algebra.dim, "k": G.k},
         f"ok: {entry.name or args.algebra} (dim {entry.algebra.dim}, k = {G.k}): "
         "Jacobi, grading and filtrations valid")
    return EXIT_OK


def cmd_act(args) -> int:
    entry = load_entry(args.algebra)
    L, G0 = entry.algebra, entry.grading
    g = parse_word(entry, args.word or "")
    x = parse_vector(L, args.x)
    if not G0.in_plus(x, 1):
        raise UsageError("x must lie in the plus nilpotent part")
    y = act_in_chart(L, G0, g, x)
    if y is None:
        bad = chart_failures(G0, g, x)
        emit(args, {"inside": False, "failures": [[s, i] for s, i in bad]},
             "outside chart: singular " + ", ".join(f"{s}_{i}" for s, i in bad))
        return EXIT_OK
    emit(args, {"inside": True, "point": [to_str(a) for a in y.coords]}, L.format(y.coords))
    return EXIT_OK


def cmd_bergman(args) -> int:
    entry = load_entry(args.algebra)
    L, G0 = entry.algebra, entry.grading
    x, w = parse_vector(L, args.x), parse_vector(L, args.w)
    i = _layer(args, entry)
    try:
        op = bergman(L, G0, x, w, i, args.sign)
    except MembershipError as exc:
        raise UsageError(str(exc)) from None
    name = f"B+(x, w)_{i}" if args.sign == PLUS else f"B-(w, x)_{i}"
    d = det(op.matrix)
    emit(args, {"layer": i, "sign": args.sign, "matrix": fmt_matrix(op.matrix), "det": to_str(d)},
         f"{name} =\n{_human_matrix(op.matrix)}\ndet = {to_str(d)}")
    return EXIT_OK


def cmd_torsor(args) -> int:
    entry = load_entry(args.algebra)
    L, G0 = entry.algebra, entry.grading
    if args.filtration:
        target = load(args.filtration)
        if not isinstance(target, Filtration):
            raise UsageError(f"{args.filtration} does not describe a filtration")
    elif args.v:
        target = chart_embed(L, G0, parse_vector(L, args.v))
    else:
        raise UsageError("give --v or --filtration")
    try:
        Y, rounds = torsor_solve(L, G0, target)
    except NotTransversal as exc:
        emit(args, {"transversal": False, "error": str(exc)}, f"not in the torsor: {exc}")
        return EXIT_FAIL
    data = {"transversal": True, "rounds": rounds, "Y": fmt_matrix(Y)}
    human = f"Y (rounds = {rounds}) =\n{_human_matrix(Y)}"
    if G0.euler is not None:
        v = chart_coordinates(L, G0, target)
        data["chart"] = [to_str(a) for a in v.coords]
        human += f"\nY = ad({L.format(v.coords)})"
    emit(args, data, human)
    return EXIT_OK


def cmd_kernel(args) -> int:
    entry = load_entry(args.algebra)
    L, G0 = entry.algebra, entry.grading
    x, y = parse_vector(L, args.x), parse_vector(L, args.y)
    i = _layer(args, entry)
    try:
        n_pt = point(G0, PLUS, GroupElement(G0, [(PLUS, x)]))
        m_pt = point(G0, MINUS, GroupElement(G0, [(MINUS, y)]))
    except MembershipError as exc:
        raise UsageError(str(exc)) from None
    K = canonical_kernel(m_pt, n_pt, i).matrix
    tr = kernel_transversality(m_pt, n_pt)
    emit(args, {"layer": i, "matrix": fmt_matrix(K), "det": to_str(det(K)), "transversal": tr},
         f"K_{i} for x = {L.format(x)}, y = {L.format(y)}:\n{_human_matrix(K)}\n"
         f"det = {to_str(det(K))}; pair {'is' if tr else 'is not'} transversal")
    return EXIT_OK


def cmd_realize(args) -> int:
    entry = load_entry(args.algebra)
    L, G0 = entry.algebra, entry.grading
    i = _layer(args, entry)
    Y = parse_vector(L, args.Y)
    pm = realize(L, G0, Y, i)
    names = ["t"] if pm.input_dim == 1 else [f"t{j + 1}" for j in range(pm.input_dim)]
    coords = [G0.basis.column(j) for j in G0.plus_block(i)]
    legend = ", ".join(f"{n} -> {L.format(c)}" for n, c in zip(names, coords))
    text = pm.format(names)
    emit(args, {"layer": i, "map": text, "variables": names,
                "polys": [p.format(names) for p in pm.polys], "degree": pm.degree()},
         f"x -> pr_(n+_{i}) of {bracket_annotation(G0.k)}\n"
         f"Y = {L.format(Y)}; x = sum of t_j times ({legend})\n= {text}")
    return EXIT_OK


def cmd_properties(args) -> int:
    entry = load_entry(args.algebra)
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        if name not in SUITES:
            raise UsageError(f"unknown suite {name!r}; choose from all, {', '.join(sorted(SUITES))}")
    results = [run_suite(name, entry, args.trials, args.seed) for name in names]
    ok = all(r.ok for r in results)
    lines = []
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        extra = f", skipped {r.skipped}" if r.skipped else ""
        lines.append(f"{status} {r.suite} on {r.fixture}: {r.passed}/{r.trials}{extra}")
        lines.extend(f"  failed: {f}" for f in sorted(r.failures)[:10])
    emit(args, {"ok": ok, "seed": args.seed, "results": [r.as_dict() for r in results]}, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


# parser


def _common(parser: argparse.ArgumentParser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--algebra", default=d(None), help="algebra file, or catalog:NAME")
    parser.add_argument("--seed", type=int, default=d(0))
    parser.add_argument("--trials", type=int, default=d(20))
    parser.add_argument("--layer", type=int, default=d(None))
    parser.add_argument("--format", choices=("human", "json"), default=d("human"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gradedflag",
                                     description="Exact computations on (2k+1)-graded Lie algebras")
    _common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        _common(p, suppress=True)
        p.set_defaults(func=fn)
        return p

    p = add("catalog", cmd_catalog, "list built-in algebras or describe one")
    p.add_argument("name", nargs="?")
    p.add_argument("--save", metavar="PATH", help="write the entry as a document")
    add("validate", cmd_validate, "check Jacobi, grading and filtration axioms")
    p = add("act", cmd_act, "chart action of a generator word")
    p.add_argument("--word", default="", help='e.g. "+[0,1,0];-[1,0,0]"')
    p.add_argument("--x", required=True, help="point of the plus part")
    p = add("bergman", cmd_bergman, "generalized Bergman operator on a layer")
    p.add_argument("--x", required=True)
    p.add_argument("--w", required=True)
    p.add_argument("--sign", choices=(PLUS, MINUS), default=PLUS)
    p = add("torsor", cmd_torsor, "solve for the unipotent element reaching a filtration")
    p.add_argument("--v", help="target is e^{ad v} applied to the minus filtration")
    p.add_argument("--filtration", help="filtration document")
    p = add("kernel", cmd_kernel, "canonical kernel of a chart pair")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p = add("realize", cmd_realize, "polynomial realization of an element")
    p.add_argument("--Y", required=True)
    p = add("properties", cmd_properties, "run a seeded property suite")
    p.add_argument("--suite", required=True, help="suite name or 'all'")
    return parser


_VALUE_FLAGS = ("--word", "--x", "--w", "--y", "--Y", "--v")


def _attach_values(argv: List[str]) -> List[str]:
    # words and vectors often start with '-', which argparse would read as a flag
    out, it = [], iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and not nxt.startswith("--"):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
        else:
            out.append(tok)
    return out


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_attach_values(list(sys.argv[1:] if argv is None else argv)))
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        for r in exc.report:
            print(f"  {r}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
