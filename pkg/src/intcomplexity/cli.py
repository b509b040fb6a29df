"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 range/capacity/input error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import analysis, boolean, conjectures
from .bounds import SpfSieve, bounds_report, sandwich_violations
from .conjectures import Rational3
from .core import ComputeMode, compute_table
from .errors import (
    CapacityError,
    ComplexityError,
    DomainError,
    InvariantViolation,
    RangeError,
    TableFormatError,
)
from .expressions import max_value, parse, reconstruct_optimal, render, value, weight
from .storage import load_table, save_table


EXIT_OK, EXIT_USAGE, EXIT_RANGE, EXIT_INVARIANT = 0, 1, 2, 3
DEFAULT_WINDOW = 200_000


@dataclass
class Dataset:
    columns: Sequence[str]
    rows: list
    records: Optional[list] = None  # JSON objects overriding the flat rows


def _jsonable(x):
    if isinstance(x, Rational3):
        return x.as_dict()
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return repr(x)
    return str(x)


def emit(dataset: Dataset, fmt: str) -> bytes:
    """Serialize deterministically: UTF-8, LF endings, header row always present for CSV."""
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(dataset.columns)
        for row in dataset.rows:
            w.writerow([_cell(x) for x in row])
        text = buf.getvalue()
    elif fmt == "json":
        records = dataset.records
        if records is None:
            records = [dict(zip(dataset.columns, row)) for row in dataset.rows]
        text = json.dumps(_jsonable(records), ensure_ascii=False) + "\n"
    elif fmt == "plain":
        text = "".join(" ".join(_cell(x) for x in row) + "\n" for row in dataset.rows)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return text.encode("utf-8")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {n}")
    return n


def _nonnegative(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {n}")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json", "plain"), default=argparse.SUPPRESS)
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--table", metavar="FILE", default=argparse.SUPPRESS,
                        help="read a saved table instead of computing one")

    parser = _Parser(prog="intcomplexity", description="Exact integer complexity toolkit.")
    parser.add_argument("--format", choices=("csv", "json", "plain"), default="plain")
    parser.add_argument("--quiet", action="store_true", default=False)
    parser.add_argument("--table", metavar="FILE", default=None)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compute", parents=[common], help="compute and save a table")
    p.add_argument("--max", type=_positive, required=True, dest="max_n")
    p.add_argument("--mode", choices=("naive", "pruned"), default="pruned")
    p.add_argument("--out", required=True)

    p = sub.add_parser("query", parents=[common], help="complexity and an optimal expression")
    p.add_argument("n", type=_positive)

    p = sub.add_parser("bounds", parents=[common], help="g, ||n||, L and L2 for one n")
    p.add_argument("n", type=_positive)

    p = sub.add_parser("bad-factors", parents=[common], help="bad factorizations m*n")
    p.add_argument("--max", type=_positive, required=True, dest="max_factor")

    p = sub.add_parser("figure", parents=[common], help="datasets behind the two plots")
    p.add_argument("--which", type=int, choices=(1, 2), required=True)
    p.add_argument("--limit", type=_positive, required=True)

    p = sub.add_parser("hardest", parents=[common], help="least n of a complexity class")
    p.add_argument("--class", type=_positive, required=True, dest="k")

    p = sub.add_parser("sequence", parents=[common], help="integer sequences")
    p.add_argument("name", choices=("great",))
    p.add_argument("--count", type=_positive, required=True)

    for name in ("selfridge", "mersenne"):
        p = sub.add_parser(name, parents=[common], help=f"{name} powers-of-two check")
        p.add_argument("--max", type=_positive, default=DEFAULT_WINDOW, dest="max_n")

    p = sub.add_parser("a-set", parents=[common], help="members of A up to a horizon")
    p.add_argument("--max", type=_positive, required=True, dest="max_base")
    p.add_argument("--horizon", type=_nonnegative, required=True)

    p = sub.add_parser("classes", parents=[common], help="all n with ||n|| = k")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--base3", action="store_true")

    p = sub.add_parser("seq", parents=[common], help="prefix of the a, b or c sequence")
    p.add_argument("--kind", choices=("a", "b", "c"), required=True)
    p.add_argument("--count", type=_positive, required=True)
    p.add_argument("--max", type=_positive, default=DEFAULT_WINDOW, dest="max_n")
    p.add_argument("--min-horizon", type=_nonnegative, default=2)

    p = sub.add_parser("sandwich", parents=[common], help="verify every bound over a table")
    p.add_argument("--max", type=_positive, default=DEFAULT_WINDOW, dest="max_n")

    p = sub.add_parser("boolean", parents=[common], help="boolean function complexity")
    p.add_argument("action", choices=("census", "counts"))
    p.add_argument("--vars", type=_positive, required=True, dest="n_vars")
    p.add_argument("--kmax", type=_nonnegative, default=None)
    return parser


class _Session:
    def __init__(self, args):
        self.args = args

    def note(self, message: str) -> None:
        if not self.args.quiet:
            print(message, file=sys.stderr)

    def table(self, need: int):
        if self.args.table:
            t = load_table(self.args.table)
            if t.max_n < need:
                raise RangeError(f"{self.args.table} covers 1..{t.max_n}, need 1..{need}")
            return t
        t = compute_table(need)
        self.note(f"computed table 1..{need}")
        return t


def _cmd_compute(s: _Session, a) -> Dataset:
    t = compute_table(a.max_n, ComputeMode(a.mode))
    bad = sandwich_violations(t)
    if bad:
        raise InvariantViolation(f"bound sandwich fails at n={bad[0]}")
    save_table(t, a.out)
    return Dataset(("max_n", "mode", "file"), [(t.max_n, a.mode, a.out)])


def _cmd_query(s: _Session, a) -> Dataset:
    t = s.table(a.n)
    c = int(t.values[a.n])
    e = reconstruct_optimal(t, a.n)
    canonical, ones_style = render(e, "canonical"), render(e, "ones")
    back = parse(canonical)
    if value(back) != a.n or weight(back) != c:
        raise InvariantViolation(f"expression for {a.n} does not re-evaluate to ({a.n}, {c})")
    return Dataset(("n", "complexity", "canonical", "ones"), [(a.n, c, canonical, ones_style)])


def _cmd_bounds(s: _Session, a) -> Dataset:
    r = bounds_report(s.table(a.n), a.n)
    d = r.as_dict()
    return Dataset(tuple(d), [tuple(d.values())])


def _cmd_bad_factors(s: _Session, a) -> Dataset:
    rows = analysis.figure_data(s.table(a.max_factor**2), 1, a.max_factor)
    return Dataset(analysis.FIGURE_COLUMNS[1], rows)


def _cmd_figure(s: _Session, a) -> Dataset:
    need = a.limit**2 if a.which == 1 else a.limit
    return Dataset(analysis.FIGURE_COLUMNS[a.which], analysis.figure_data(s.table(need), a.which, a.limit))


def _cmd_hardest(s: _Session, a) -> Dataset:
    t = s.table(max_value(a.k))
    hits = t.members(a.k)
    if not len(hits):
        raise RangeError(f"class {a.k} is empty")
    return Dataset(("k", "n_k"), [(a.k, int(hits[0]))])


def _cmd_sequence(s: _Session, a) -> Dataset:
    t = s.table(max_value(a.count))
    rows = [(e.k, e.n_k) for e in analysis.great_complexity_sequence(t, a.count)]
    return Dataset(("k", "n_k"), rows)


def _cmd_selfridge(s: _Session, a) -> Dataset:
    rows = analysis.selfridge_check(s.table(a.max_n))
    return Dataset(("e", "complexity", "target", "ok"), rows)


def _cmd_mersenne(s: _Session, a) -> Dataset:
    rows = analysis.mersenne_check(s.table(a.max_n))
    return Dataset(("e", "complexity", "target", "ok"), rows)


def _cmd_a_set(s: _Session, a) -> Dataset:
    t = s.table(a.max_base * 3**a.horizon)
    return Dataset(("n",), [(n,) for n in conjectures.a_set_members(t, a.max_base, a.horizon)])


def _cmd_classes(s: _Session, a) -> Dataset:
    t = s.table(max_value(a.k))
    members = conjectures.class_members(t, a.k)
    if a.base3:
        return Dataset(("n", "base3"), [(n, conjectures.to_base3(n)) for n in members])
    return Dataset(("n",), [(n,) for n in members])


def _cmd_seq(s: _Session, a) -> Dataset:
    terms = conjectures.sequence_prefix(s.table(a.max_n), a.kind, a.count, a.min_horizon)
    records = [
        {"position": x.position, "value": x.value,
         "witness_complexity": x.witness_complexity, "stable": x.stable}
        for x in terms
    ]
    return Dataset(conjectures.SEQUENCE_COLUMNS, [x.as_row() for x in terms], records)


def _cmd_sandwich(s: _Session, a) -> Dataset:
    t = s.table(a.max_n)
    bad = sandwich_violations(t, SpfSieve(t.max_n))
    if bad:
        raise InvariantViolation(f"{len(bad)} bound violations, first at n={bad[0]}")
    return Dataset(("max_n", "violations"), [(t.max_n, 0)])


def _cmd_boolean(s: _Session, a) -> Dataset:
    if a.action == "census":
        census = boolean.exhaustive_complexity(a.n_vars)
        rows = [(f, c, census.formula(f)) for f, c in sorted(census.complexity.items())]
        return Dataset(("truth_table", "complexity", "formula"), rows)
    if a.kmax is None:
        raise DomainError("boolean counts needs --kmax")
    bound = boolean.count_recurrence(a.n_vars, a.kmax)
    if a.n_vars <= boolean.MAX_VARS:
        counts = boolean.exhaustive_complexity(a.n_vars).counts()
        exact = [counts.get(k, 0) for k in range(a.kmax + 1)]
    else:
        exact = [None] * (a.kmax + 1)
    return Dataset(("k", "a_k", "A_k"), list(zip(range(a.kmax + 1), exact, bound)))


COMMANDS = {
    "compute": _cmd_compute,
    "query": _cmd_query,
    "bounds": _cmd_bounds,
    "bad-factors": _cmd_bad_factors,
    "figure": _cmd_figure,
    "hardest": _cmd_hardest,
    "sequence": _cmd_sequence,
    "selfridge": _cmd_selfridge,
    "mersenne": _cmd_mersenne,
    "a-set": _cmd_a_set,
    "classes": _cmd_classes,
    "seq": _cmd_seq,
    "sandwich": _cmd_sandwich,
    "boolean": _cmd_boolean,
}


def _plain_query(ds: Dataset) -> bytes:
    n, c, canonical, ones_style = ds.rows[0]
    return f"{c}\n{canonical}\n{ones_style}\n".encode("utf-8")


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # --help, or a usage error already reported
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    session = _Session(args)
    try:
        ds = COMMANDS[args.command](session, args)
    except DomainError as exc:
        print(f"intcomplexity: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (RangeError, CapacityError, TableFormatError, OSError) as exc:
        print(f"intcomplexity: error: {exc}", file=sys.stderr)
        return EXIT_RANGE
    except (InvariantViolation, AssertionError) as exc:
        print(f"intcomplexity: invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except ComplexityError as exc:
        print(f"intcomplexity: error: {exc}", file=sys.stderr)
        return EXIT_RANGE

    if args.command == "query" and args.format == "plain":
        data = _plain_query(ds)
    else:
        data = emit(ds, args.format)
    try:
        out = getattr(sys.stdout, "buffer", None)
        if out is not None:
            out.write(data)
        else:
            sys.stdout.write(data.decode("utf-8"))
        sys.stdout.flush()
    except BrokenPipeError:
        return EXIT_RANGE
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
