"""Command-line front end.

Exit codes: 0 success, 1 verification mismatch, 2 usage or I/O error,
3 domain error (e.g. a disconnected d-clique graph).
"""

from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Iterator

from . import linalg, matrix_io, theory
from .graph import SimpleGraph, decode_graph6, encode_graph6
from .ktree import KTree, from_trace, generate_all
from .metric import NotConnectedError, clique_label, d_distance_matrix, ktree_distance_matrix

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


def default_jobs() -> int:
    env = os.environ.get("KTDIST_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise CliError(f"KTDIST_JOBS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


@contextlib.contextmanager
def worker_map(jobs: int) -> Iterator:
    if jobs <= 1:
        yield map
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield lambda fn, items: pool.map(fn, items, chunksize=8)


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    try:
        with open(out, "w") as fh:
            fh.write(text)
    except OSError as e:
        raise CliError(f"cannot write {out}: {e.strerror}") from None


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise CliError(f"cannot read {path}: {e.strerror}") from None


def _parse_trace(text: str) -> list[int]:
    text = text.strip().strip("[]")
    if not text:
        return []
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise CliError(f"trace must be a list of integers, got {text!r}") from None


# ---------------------------------------------------------------------------


def cmd_generate(args) -> int:
    if args.nmax < args.k:
        raise CliError(f"-n must be at least k={args.k}")
    levels = generate_all(args.k, args.nmax)
    if args.out is not None:
        fmt = args.format or "json"
        lines = []
        for trees in levels:
            for t in trees:
                if fmt == "graph6":
                    lines.append(encode_graph6(t.graph))
                elif fmt == "json":
                    lines.append(json.dumps({"k": t.k, "n": t.n, "trace": list(t.trace)}))
                elif fmt == "text":
                    lines.append(f"{t.n} {' '.join(map(str, t.trace))}".rstrip())
                else:
                    raise CliError(f"generate does not support --format {fmt}")
        _write("\n".join(lines) + "\n", args.out)
    print(" ".join(f"n={trees[0].n}:{len(trees)}" for trees in levels))
    return EXIT_OK


def _load_input(args) -> tuple[SimpleGraph, KTree | None]:
    if args.trace is not None:
        if args.k is None:
            raise CliError("--trace needs -k")
        try:
            t = from_trace(args.k, _parse_trace(args.trace))
        except ValueError as e:
            raise CliError(str(e)) from None
        return t.graph, t
    if args.graph6 is not None:
        try:
            return decode_graph6(args.graph6), None
        except ValueError as e:
            raise CliError(f"bad graph6: {e}") from None
    if args.input is None:
        raise CliError("one of --input, --graph6 or --trace is required")
    text = _read(args.input).strip()
    if text.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as e:
            raise CliError(f"{args.input}: line {e.lineno}, column {e.colno}: {e.msg}") from None
        try:
            if "trace" in obj:
                t = KTree.from_json(obj)
                return t.graph, t
            return SimpleGraph.from_json(obj), None
        except (KeyError, ValueError, TypeError) as e:
            raise CliError(f"{args.input}: {e}") from None
    try:
        return decode_graph6(text.splitlines()[0]), None
    except (ValueError, IndexError) as e:
        raise CliError(f"{args.input}: bad graph6: {e}") from None


def cmd_dmatrix(args) -> int:
    g, t = _load_input(args)
    d = args.d if args.d is not None else (t.k if t is not None else None)
    if d is None:
        raise CliError("-d is required for graph input")
    if not 1 <= d <= g.n:
        raise CliError(f"-d must lie in 1..{g.n}")
    try:
        if t is not None and d == t.k:
            D = ktree_distance_matrix(t)
        else:
            D = d_distance_matrix(g, d)
    except NotConnectedError as e:
        raise CliError(str(e), EXIT_DOMAIN) from None
    rows = D.rows()
    fmt = args.format or "text"
    if fmt == "text":
        text = matrix_io.format_text(rows)
    elif fmt == "json":
        text = matrix_io.format_json(rows)
    elif fmt == "csv":
        labels = [clique_label(c) for c in D.labels] if args.labels else None
        text = matrix_io.format_csv(rows, labels)
    else:
        raise CliError(f"dmatrix does not support --format {fmt}")
    _write(text, args.out)
    return EXIT_OK


def _load_matrix(path: str) -> list[list[int]]:
    try:
        return matrix_io.parse_matrix(_read(path))
    except matrix_io.MatrixFormatError as e:
        raise CliError(f"{path}: {e}") from None


def cmd_snf(args) -> int:
    res = linalg.snf(_load_matrix(args.matrix))
    if args.format == "json":
        _write(json.dumps(res.to_json()) + "\n", args.out)
    else:
        _write(" ".join(map(str, res.factors)) + "\n", args.out)
    return EXIT_OK


def cmd_det(args) -> int:
    m = _load_matrix(args.matrix)
    try:
        det = linalg.determinant(m)
    except linalg.MatrixShapeError as e:
        raise CliError(str(e)) from None
    if args.format == "json":
        _write(json.dumps({"det": det}) + "\n", args.out)
    else:
        _write(f"{det}\n", args.out)
    return EXIT_OK


def cmd_predict(args) -> int:
    if args.n < args.k + 1:
        raise CliError(f"-n must be at least k+1={args.k + 1}")
    spec = theory.predicted_snf(args.k, args.n)
    det = theory.predicted_det(args.k, args.n)
    if args.format == "json":
        _write(json.dumps({"k": args.k, "n": args.n, "factors": list(spec.factors), "det": det}) + "\n", args.out)
    else:
        _write(f"snf: {' '.join(map(str, spec.factors))}\ndet: {det}\n", args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    jobs = args.jobs if args.jobs is not None else default_jobs()
    d = args.d if args.d is not None else args.k
    if args.what != "survey" and args.nmax < args.k + 2:
        raise CliError(f"--nmax must be at least k+2={args.k + 2}")
    if args.nmax < args.k:
        raise CliError(f"--nmax must be at least k={args.k}")
    if not 1 <= d <= args.k:
        raise CliError(f"-d must lie in 1..{args.k}")
    with worker_map(jobs) as mapper:
        if args.what == "theorem":
            report = theory.verify_theorem(args.k, args.nmax, d, mapper)
        elif args.what == "equivalence":
            report = theory.verify_equivalence(args.k, args.nmax, mapper, args.seed)
        else:
            report = theory.survey_snf(args.k, d, args.nmax, mapper)
    if args.format == "json":
        _write(json.dumps(report.to_json(), indent=1) + "\n", args.out)
    else:
        _write(report.to_text() + "\n", args.out)
    if args.what == "survey":
        return EXIT_OK
    return EXIT_OK if report.passed else EXIT_MISMATCH


# ---------------------------------------------------------------------------


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ktdist", description="Clique distance matrices of k-trees and their integer invariants.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats):
        sp.add_argument("--format", choices=formats)
        sp.add_argument("--out", metavar="PATH")

    g = sub.add_parser("generate", help="all non-isomorphic k-trees up to n vertices")
    g.add_argument("-k", type=_positive, required=True)
    g.add_argument("-n", "--nmax", type=int, required=True)
    common(g, ["text", "json", "graph6"])
    g.set_defaults(func=cmd_generate)

    dm = sub.add_parser("dmatrix", help="d-distance matrix of a graph or k-tree trace")
    dm.add_argument("--input", metavar="PATH", help="graph6 line, graph JSON or trace JSON")
    dm.add_argument("--graph6", metavar="STR")
    dm.add_argument("--trace", metavar="LIST", help="attachment labels, e.g. 1,2,2")
    dm.add_argument("-k", type=_positive)
    dm.add_argument("-d", type=_positive)
    dm.add_argument("--labels", action="store_true", help="clique labels as CSV header")
    common(dm, ["text", "json", "csv"])
    dm.set_defaults(func=cmd_dmatrix)

    for name, func in (("snf", cmd_snf), ("det", cmd_det)):
        sp = sub.add_parser(name, help=f"{name} of a matrix file ('-' for stdin)")
        sp.add_argument("matrix")
        common(sp, ["text", "json"])
        sp.set_defaults(func=func)

    pr = sub.add_parser("predict", help="closed-form SNF and determinant")
    pr.add_argument("-k", type=_positive, required=True)
    pr.add_argument("-n", type=int, required=True)
    common(pr, ["text", "json"])
    pr.set_defaults(func=cmd_predict)

    v = sub.add_parser("verify", help="exhaustive sweeps")
    v.add_argument("what", choices=["theorem", "equivalence", "survey"])
    v.add_argument("-k", type=_positive, required=True)
    v.add_argument("-n", "--nmax", type=int, required=True)
    v.add_argument("-d", type=_positive)
    v.add_argument("--jobs", type=_positive)
    v.add_argument("--seed", type=int, help="adds a seeded random relabelling check (equivalence)")
    common(v, ["text", "json"])
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.func(args)
    except CliError as e:
        print(f"ktdist: error: {e}", file=sys.stderr)
        return e.code


if __name__ == "__main__":
    sys.exit(main())
