"""Command line front end.

Exit codes: 0 success, 1 validation or property failure, 2 IO or parse error.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import sys
from typing import Optional, Sequence

from .complex import FaceSet, FaceSetError, boundary_components
from .cupi import corrupted_cup
from .filtered import (
    FilteredFaceSet,
    ParseError,
    Perversity,
    cone,
    cone_off_boundary,
    face_set_of,
    format_degree,
    parse,
    serialize,
    suspension,
    trivial_filtration,
)
from .relations import format_report, verify_complex
from .squares import blowup_of, perverse_cohomology, steenrod_square

EXIT_OK, EXIT_FAIL, EXIT_IO = 0, 1, 2


class CliError(Exception):
    def __init__(self, msg: str, code: int):
        super().__init__(msg)
        self.code = code


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise CliError(f"cannot read {path}: {e.strerror}", EXIT_IO) from None


def _load(path: str) -> FilteredFaceSet:
    text = _read(path)
    try:
        return parse(text)
    except ParseError as e:
        raise CliError(str(e), EXIT_IO) from None
    except FaceSetError as e:
        raise CliError("\n".join(str(v) for v in e.violations), EXIT_FAIL) from None


def _load_plain(path: str) -> FaceSet:
    k = _load(path)
    try:
        return face_set_of(k)
    except ValueError as e:
        raise CliError(f"{path}: {e}", EXIT_FAIL) from None


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        try:
            with open(out, "w") as fh:
                fh.write(text)
        except OSError as e:
            raise CliError(f"cannot write {out}: {e.strerror}", EXIT_IO) from None
    else:
        sys.stdout.write(text)


def _perversities(specs: Optional[Sequence[str]], n: int) -> list[Perversity]:
    if not specs:
        return [Perversity.zero(n)]
    out = []
    for s in specs:
        try:
            p = Perversity.parse(s)
        except ValueError:
            raise CliError(f"parse error: bad perversity {s!r}", EXIT_IO) from None
        if p.n != n:
            raise CliError(f"perversity {s!r} has {p.n} entries, the complex has formal dimension {n}", EXIT_FAIL)
        out.append(p)
    return out


def _degrees(spec: Optional[str], top: int) -> range:
    if not spec:
        return range(0, top + 1)
    try:
        if ".." in spec:
            a, b = spec.split("..", 1)
            return range(int(a), int(b) + 1)
        return range(int(spec), int(spec) + 1)
    except ValueError:
        raise CliError(f"parse error: bad degree range {spec!r}", EXIT_IO) from None


def _ints(spec: str) -> list[int]:
    try:
        return [int(t) for t in spec.split(",") if t.strip()]
    except ValueError:
        raise CliError(f"parse error: bad list {spec!r}", EXIT_IO) from None


def _table(header: Sequence[str], rows: list[Sequence[str]], fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue()
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    lines = ["  ".join(str(x).ljust(wd) for x, wd in zip(r, widths)).rstrip() for r in [header, *rows]]
    return "\n".join(lines) + "\n"


def _vec(coords: int, length: int) -> str:
    return "[" + ",".join(str((coords >> j) & 1) for j in range(length)) + "]"


def _pdeg(v) -> str:
    return "(" + ",".join(format_degree(x) for x in v) + ")"


# ---------------------------------------------------------------- commands

def cmd_validate(args) -> int:
    k = _load(args.path)
    print(f"ok: {len(k)} simplices, {len(k.regular_ids)} regular, formal dimension {k.n}")
    return EXIT_OK


def cmd_build(args) -> int:
    f = _load_plain(args.input)
    try:
        if args.kind == "cone":
            k = cone(f, args.n)
        elif args.kind == "suspension":
            k = suspension(f, args.n)
        elif args.kind == "trivial":
            k = trivial_filtration(f, args.n if args.n is not None else max(f.dim, 1))
        else:
            if args.boundary in (None, "auto"):
                comps = boundary_components(f)
            else:
                try:
                    comps = json.loads(_read(args.boundary))
                except json.JSONDecodeError as e:
                    raise CliError(f"parse error: {e}", EXIT_IO) from None
                if not isinstance(comps, list) or not all(isinstance(c, list) for c in comps):
                    raise CliError("parse error: boundary file must be a list of lists of ids", EXIT_IO)
            k = cone_off_boundary(f, comps, args.n)
        k.validated()
    except FaceSetError as e:
        raise CliError("\n".join(str(v) for v in e.violations), EXIT_FAIL) from None
    except ValueError as e:
        raise CliError(str(e), EXIT_FAIL) from None
    _emit(serialize(k), args.out)
    return EXIT_OK


def cmd_cohomology(args) -> int:
    k = _load(args.path)
    b = blowup_of(k)
    rows = []
    for p in _perversities(args.perversity, k.n):
        for d in _degrees(args.degrees, b.top_degree):
            dim = perverse_cohomology(b, p, d).dim if d >= 0 else 0
            rows.append((str(p), str(d), str(dim)))
    _emit(_table(("perversity", "degree", "dim"), rows, args.format), args.out)
    return EXIT_OK


def cmd_squares(args) -> int:
    k = _load(args.path)
    b = blowup_of(k)
    i_list = _ints(args.i)
    rows = []
    for p in _perversities(args.perversity, k.n):
        for d in _degrees(args.degrees, b.top_degree):
            if d < 0:
                continue
            h = perverse_cohomology(b, p, d)
            for j in range(h.dim):
                for i in i_list:
                    sq = steenrod_square(b, p, d, 1 << j, i)
                    tdim = perverse_cohomology(b, sq.target_perversity, d + i).dim if d + i >= 0 else 0
                    ddim = perverse_cohomology(b, p.double(), d + i).dim if d + i >= 0 else 0
                    rows.append((
                        f"H^{d}_({p})[{j}]",
                        str(i),
                        str(sq.target_perversity),
                        _vec(sq.target_coords, tdim),
                        _pdeg(sq.witness_perverse_degree),
                        _vec(sq.image_in_2p, ddim),
                    ))
    header = ("class", "i", "target_perversity", "coords", "witness_perverse_degree", "image_in_2p")
    _emit(_table(header, rows, args.format), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.paths:
        items = [(path, _load(path)) for path in args.paths]
    else:
        from .corpus import corpus
        items = corpus()
    results = []
    with corrupted_cup() if args.corrupt_cup else contextlib.nullcontext():
        for name, k in items:
            ps = _perversities(args.perversity, k.n) if args.perversity else None
            results += verify_complex(name, k, ps, seed=args.seed, pairs=args.pairs)
    _emit(format_report(results), args.out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="perverse-squares",
        description="Intersection cohomology and Steenrod squares of filtered face sets.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and validate a complex file")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("build", help="build a filtered complex from a plain face set")
    p.add_argument("kind", choices=("cone", "suspension", "coneoff", "trivial"))
    p.add_argument("input", help="plain face set (formal_dimension 0)")
    p.add_argument("--n", type=int, default=None, help="formal dimension of the result")
    p.add_argument("--boundary", default=None, help="coneoff only: JSON list of components, or 'auto'")
    p.add_argument("--out")
    p.set_defaults(func=cmd_build)

    def common(p):
        p.add_argument("path")
        p.add_argument("--perversity", action="append", help="comma list for depths 1..n, 'inf' allowed")
        p.add_argument("--degrees", help="a..b or a single degree")
        p.add_argument("--format", choices=("table", "csv"), default="table")
        p.add_argument("--out")

    p = sub.add_parser("cohomology", help="dimensions of intersection cohomology")
    common(p)
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("squares", help="Steenrod squares in the canonical bases")
    common(p)
    p.add_argument("--i", default="0,1,2", help="comma list of square indices")
    p.set_defaults(func=cmd_squares)

    p = sub.add_parser("verify", help="run the relation suite")
    p.add_argument("paths", nargs="*", help="complex files (default: the built-in corpus)")
    p.add_argument("--perversity", action="append")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pairs", type=int, default=200, help="random section pairs per complex")
    p.add_argument("--out")
    p.add_argument("--corrupt-cup", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as e:
        print(str(e), file=sys.stderr)
        return e.code


if __name__ == "__main__":
    sys.exit(main())
