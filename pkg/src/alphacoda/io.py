"""CSV ingestion and table output.

Input files are comma separated. A first row containing any non-numeric
cell is a header. The first column holds row ids when it is non-numeric in
the data rows or when its header cell is ``id``. Everything else must be a
nonnegative decimal number.
"""

from __future__ import annotations

import csv
import io
import os
import warnings
from collections.abc import Sequence
from typing import IO, Union

import numpy as np

from .errors import CodaError, DomainError, NegativePart
from .simplex import CLOSURE_TOL, Composition, CompositionDataset

#: Rows whose sum is further than this from one are rejected rather than re-closed.
MAX_SUM_DEVIATION = 0.10

#: A header cell in the first column with one of these names marks a row-id column.
ID_HEADERS = ("", "id", "row_id", "sample")

PathOrFile = Union[str, os.PathLike, IO[str]]


class ParseError(CodaError, ValueError):
    """The file is not a rectangular numeric table."""


class ReclosedRowsWarning(UserWarning):
    pass


def _is_number(s: str) -> bool:
    try:
        float(s)
    except ValueError:
        return False
    return True


def _read_rows(source: PathOrFile) -> list[list[str]]:
    if isinstance(source, (str, os.PathLike)):
        with open(source, newline="") as fh:
            rows = list(csv.reader(fh))
    else:
        rows = list(csv.reader(source))
    return [[c.strip() for c in r] for r in rows if any(c.strip() for c in r)]


def read_dataset(source: PathOrFile) -> CompositionDataset:
    """Parse a CSV table into a :class:`CompositionDataset`.

    Rows whose sum is off by more than ``1e-6`` are re-closed with a
    :class:`ReclosedRowsWarning` naming the worst one; rows off by more than
    10% raise :class:`DomainError` (likely percentages or raw counts).
    """
    rows = _read_rows(source)
    if not rows:
        raise ParseError("empty input")
    width = len(rows[0])
    for i, r in enumerate(rows):
        if len(r) != width:
            raise ParseError(f"line {i + 1} has {len(r)} fields, expected {width}")

    header = None
    if not all(_is_number(c) for c in rows[0]):
        header, rows = rows[0], rows[1:]
    if not rows:
        raise ParseError("no data rows")

    has_ids = not all(_is_number(r[0]) for r in rows) or (
        header is not None and header[0].lower() in ID_HEADERS
    )
    ids = [r[0] for r in rows] if has_ids else None
    body = [r[1:] for r in rows] if has_ids else rows
    names = (header[1:] if has_ids else header) if header else None

    try:
        X = np.array([[float(c) for c in r] for r in body], dtype=float)
    except ValueError as exc:
        raise ParseError(f"non-numeric value: {exc}") from None
    if X.shape[1] < 2:
        raise ParseError("need at least two numeric columns")
    if not np.all(np.isfinite(X)):
        raise ParseError("values must be finite")
    labels = ids or [str(i + 1) for i in range(X.shape[0])]
    if np.any(X < 0):
        i, j = np.argwhere(X < 0)[0]
        raise NegativePart(f"row {labels[i]!r} column {j + 1} is negative")

    dev = np.abs(X.sum(axis=1) - 1.0)
    worst = int(np.argmax(dev))
    if dev[worst] > MAX_SUM_DEVIATION:
        raise DomainError(
            f"row {labels[worst]!r} sums to {X[worst].sum():.6g}; rows must be proportions "
            f"summing to 1 (within {MAX_SUM_DEVIATION:.0%})"
        )
    if dev[worst] > CLOSURE_TOL:
        n_bad = int(np.sum(dev > CLOSURE_TOL))
        warnings.warn(
            f"re-closed {n_bad} row(s) whose sum differs from 1 by more than {CLOSURE_TOL:g}; "
            f"worst is {labels[worst]!r} (sum {X[worst].sum():.10g})",
            ReclosedRowsWarning,
            stacklevel=2,
        )
    return CompositionDataset([Composition(r) for r in X], names, ids)


def format_value(v: float, precision: int = 7) -> str:
    """Format with ``precision`` significant digits, keeping trailing zeros."""
    return f"{v:#.{precision}g}"


def format_table(
    values,
    columns: Sequence[str] | None = None,
    row_ids: Sequence[str] | None = None,
    precision: int = 7,
    id_header: str = "id",
) -> str:
    """Render a 2-d array as CSV text that :func:`read_dataset`-style parsers can read back."""
    values = np.atleast_2d(np.asarray(values, dtype=float))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if columns is not None:
        writer.writerow(([id_header] if row_ids is not None else []) + list(columns))
    for i, row in enumerate(values):
        cells = [format_value(v, precision) for v in row]
        writer.writerow(([row_ids[i]] if row_ids is not None else []) + cells)
    return buf.getvalue()


def dataset_to_csv(ds: CompositionDataset, precision: int = 17) -> str:
    """Write a dataset with enough digits to round-trip exactly."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["id", *ds.component_names])
    for rid, row in zip(ds.row_ids, ds.values):
        writer.writerow([rid, *(repr(float(v)) if precision >= 17 else format_value(v, precision) for v in row)])
    return buf.getvalue()
