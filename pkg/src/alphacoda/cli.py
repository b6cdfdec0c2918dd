"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 domain violation (zero
parts, dimension problems, bad proportions), 3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

import numpy as np

from . import __version__
from .errors import CodaError, DomainError, NumericalError, SingularCovariance
from .fixtures import FIXTURES, fixture_csv
from .geometry import (
    DistanceSpec,
    distance,
    distance_matrix,
    mean_arithmetic,
    mean_frechet_alpha,
    mean_geometric_closed,
)
from .io import ParseError, format_table, format_value, read_dataset
from .likelihood import CriterionSpec, select_alpha
from .simplex import CompositionDataset
from .transforms import TransformKind, TransformSpec, transform
from .viz import render_ternary, three_means_spec

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_NUMERIC = 0, 1, 2, 3

_KIND_ALIASES = {
    "alpha": TransformKind.ALPHA_POWER,
    "alpha-power": TransformKind.ALPHA_POWER,
    "alpha-isometric": TransformKind.ALPHA_ISOMETRIC,
    "alpha-iso": TransformKind.ALPHA_ISOMETRIC,
    "boxcox": TransformKind.BOXCOX_RATIO,
    "boxcox-ratio": TransformKind.BOXCOX_RATIO,
}


class UsageError(CodaError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _transform_kind(s: str) -> TransformKind:
    key = s.lower()
    if key in _KIND_ALIASES:
        return _KIND_ALIASES[key]
    try:
        return TransformKind(key.replace("-", "_"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"unknown transform {s!r}") from None


def _load(path: str) -> CompositionDataset:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        ds = read_dataset(sys.stdin if path == "-" else path)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return ds


def _emit(text: str, output: str | None) -> None:
    if output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def _row_index(ds: CompositionDataset, key: str) -> int:
    if key in ds.row_ids:
        return ds.row_ids.index(key)
    try:
        i = int(key)
    except ValueError:
        raise UsageError(f"no row with id {key!r}") from None
    if not 1 <= i <= ds.n:
        raise UsageError(f"row number {i} out of range 1..{ds.n}")
    return i - 1


# -- commands ---------------------------------------------------------------------


def cmd_transform(args) -> int:
    ds = _load(args.input)
    spec = TransformSpec(args.kind, args.alpha, args.divisor)
    td = transform(ds, spec)
    names = list(ds.component_names)
    if spec.kind in (TransformKind.CLR, TransformKind.ALPHA_POWER):
        cols = names
    elif spec.kind in (TransformKind.ALR, TransformKind.BOXCOX_RATIO):
        k = (spec.divisor or ds.D) - 1
        cols = [f"{n}/{names[k]}" for i, n in enumerate(names) if i != k]
    else:
        cols = [f"z{i + 1}" for i in range(ds.D - 1)]
    _emit(format_table(td.values, cols, ds.row_ids, args.precision), args.output)
    return EXIT_OK


def cmd_mean(args) -> int:
    ds = _load(args.input)
    labels, rows = [], []
    if args.all:
        if ds.is_positive():
            labels.append("mu_0")
            rows.append(mean_geometric_closed(ds).parts)
        else:
            print("warning: data contain zeros; mu_0 omitted", file=sys.stderr)
        for a in args.alpha or []:
            if a in (0.0, 1.0):
                continue
            labels.append(f"mu_{a:g}")
            rows.append(mean_frechet_alpha(ds, a).mean.parts)
        labels.append("mu_1")
        rows.append(mean_arithmetic(ds).parts)
    else:
        if not args.alpha:
            raise UsageError("give --alpha VALUE [VALUE ...] or --all")
        for a in args.alpha:
            labels.append(f"mu_{a:g}")
            rows.append(mean_frechet_alpha(ds, a).mean.parts)
    _emit(format_table(np.array(rows), ds.component_names, labels, args.precision, "mean"), args.output)
    return EXIT_OK


def cmd_dist(args) -> int:
    ds = _load(args.input)
    spec = DistanceSpec(args.kind, args.alpha if args.kind == "alpha" else 1.0)
    if args.pair:
        i, j = (_row_index(ds, k) for k in args.pair)
        d = distance(ds[i], ds[j], spec)
        _emit(format_value(d, args.precision) + "\n", args.output)
    else:
        M = distance_matrix(ds, spec)
        _emit(format_table(M, ds.row_ids, ds.row_ids, args.precision), args.output)
    return EXIT_OK


def _report(ds: CompositionDataset, res, precision: int) -> str:
    fv = lambda v: format_value(v, precision)  # noqa: E731
    lo, hi = res.interval
    lines = [
        "quantity,value",
        f"alpha_hat,{fv(res.alpha_hat)}",
        f"loglik_hat,{fv(res.loglik_hat)}",
        f"boundary_maximum,{str(res.boundary_maximum).lower()}",
        f"escape_fraction,{fv(res.escape_fraction)}",
        f"include_jacobian,{str(res.include_jacobian).lower()}",
        f"interval_lo,{fv(lo)}",
        f"interval_hi,{fv(hi)}",
        f"n,{ds.n}",
        f"D,{ds.D}",
        "",
    ]
    labels, rows = [], []
    if res.mean_lra is not None:
        labels.append("mu_0")
        rows.append(res.mean_lra.parts)
    labels.append("mu_alpha_hat")
    rows.append(res.mean_alpha.parts)
    labels.append("mu_1")
    rows.append(res.mean_rda.parts)
    return "\n".join(lines) + "\n" + format_table(np.array(rows), ds.component_names, labels, precision, "mean")


def cmd_select_alpha(args) -> int:
    ds = _load(args.input)
    interval = None
    if args.lo is not None or args.hi is not None:
        default = CriterionSpec().interval_for(ds)
        interval = (args.lo if args.lo is not None else default[0], args.hi if args.hi is not None else default[1])
    spec = CriterionSpec(
        search_interval=interval, grid_points=args.grid, include_jacobian=False if args.no_jacobian else None
    )
    res = select_alpha(ds, spec, seed=args.seed, n_draws=args.draws)
    if res.boundary_maximum:
        print(
            f"warning: BoundaryMaximum: the profile log-likelihood peaks at the end of "
            f"[{res.interval[0]:g}, {res.interval[1]:g}]",
            file=sys.stderr,
        )
    _emit(_report(ds, res, args.precision), args.output)
    if args.profile:
        Path(args.profile).write_text(
            format_table(np.column_stack([res.grid, res.loglik]), ["alpha", "loglik"], None, args.precision)
        )
    if args.plot:
        if ds.D != 3:
            raise DomainError("--plot needs three-part data")
        Path(args.plot).write_text(render_ternary(three_means_spec(ds, res)), encoding="utf-8")
    return EXIT_OK


def cmd_fixture(args) -> int:
    if args.name not in FIXTURES:
        print(
            f"error: unknown fixture {args.name!r}; available: {', '.join(sorted(FIXTURES))}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    _emit(fixture_csv(args.name), args.output)
    return EXIT_OK


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="alphacoda", description="Compositional data analysis with the alpha-transformation.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, output=True):
        sp.add_argument("input", help="CSV file of compositions ('-' for stdin)")
        sp.add_argument("--precision", type=int, default=7, help="significant digits (default 7)")
        if output:
            sp.add_argument("-o", "--output", help="output file (default stdout)")

    t = sub.add_parser("transform", help="transform every row")
    common(t)
    t.add_argument("--kind", type=_transform_kind, required=True,
                   help="clr, ilr, alr, boxcox, alpha or alpha-isometric")
    t.add_argument("--alpha", type=float, default=1.0, help="alpha, or lambda for boxcox")
    t.add_argument("--divisor", type=int, default=None, help="1-based divisor component for alr/boxcox")
    t.set_defaults(func=cmd_transform)

    m = sub.add_parser("mean", help="Frechet means")
    common(m)
    m.add_argument("--alpha", type=float, nargs="+", help="one or more alpha values (0 = closed geometric mean)")
    m.add_argument("--all", action="store_true", help="print mu_0, mu_alpha for each --alpha, and mu_1")
    m.set_defaults(func=cmd_mean)

    d = sub.add_parser("dist", help="distances between rows")
    common(d)
    d.add_argument("--kind", choices=["rda", "lra", "alpha"], required=True)
    d.add_argument("--alpha", type=float, default=1.0)
    g = d.add_mutually_exclusive_group(required=True)
    g.add_argument("--pair", nargs=2, metavar=("I", "J"), help="row ids or 1-based row numbers")
    g.add_argument("--matrix", action="store_true", help="full n x n matrix")
    d.set_defaults(func=cmd_dist)

    s = sub.add_parser("select-alpha", help="choose alpha by profile likelihood")
    common(s)
    s.add_argument("--lo", type=float, default=None)
    s.add_argument("--hi", type=float, default=None)
    s.add_argument("--grid", type=int, default=41, help="coarse grid points (default 41)")
    s.add_argument("--seed", type=int, default=0, help="seed for the simplex-escape Monte Carlo")
    s.add_argument("--draws", type=int, default=10_000, help="Monte Carlo draws (default 10000)")
    s.add_argument("--no-jacobian", action="store_true", help="drop the Jacobian term from the likelihood")
    s.add_argument("--plot", metavar="SVG", help="write a ternary diagram with the three means")
    s.add_argument("--profile", metavar="CSV", help="write the grid of profile log-likelihood values")
    s.set_defaults(func=cmd_select_alpha)

    f = sub.add_parser("fixture", help="export a built-in dataset as CSV")
    f.add_argument("--name", default="table1", help=f"one of: {', '.join(sorted(FIXTURES))}")
    f.add_argument("-o", "--output", help="output file (default stdout)")
    f.set_defaults(func=cmd_fixture)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SingularCovariance as exc:
        print(
            f"error: {exc}. The sample is too small (or too degenerate) relative to the "
            "number of components to fit a covariance matrix.",
            file=sys.stderr,
        )
        return EXIT_NUMERIC
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
