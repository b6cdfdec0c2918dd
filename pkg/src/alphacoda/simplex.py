"""Compositions, datasets and the basic operations of the simplex.

A composition is a vector of ``D >= 2`` nonnegative parts summing to one.
Two notions of addition live on the simplex: perturbation (component-wise
product, then closure) and simplicial addition (component-wise sum, then
closure). The Helmert sub-matrix gives an orthonormal basis of the
hyperplane orthogonal to the vector of ones.
"""

from __future__ import annotations

from collections.abc import Sequence
from typing import Union

import numpy as np

from .errors import (
    DegenerateInput,
    DimensionMismatch,
    DimensionTooSmall,
    NegativePart,
    SpecError,
    ZeroPartNotAllowed,
)

#: Rows whose sum is further than this from one are re-closed on construction.
CLOSURE_TOL = 1e-6


def _validate_parts(values) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise DimensionMismatch(f"expected a 1-d vector, got shape {arr.shape}")
    if arr.size < 2:
        raise DimensionTooSmall(f"a composition needs at least 2 parts, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise DegenerateInput("composition parts must be finite")
    if np.any(arr < 0):
        raise NegativePart(f"negative part at index {int(np.argmax(arr < 0))}")
    if not arr.sum() > 0:
        raise DegenerateInput("cannot close an all-zero vector")
    return arr


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=float)
    arr.flags.writeable = False
    return arr


class Composition:
    """A single point of the simplex.

    Parts whose sum is within ``CLOSURE_TOL`` of one are stored verbatim so
    that printed tables round-trip exactly; anything else is re-closed.
    Use :func:`closure` to force exact normalization.
    """

    __slots__ = ("_parts",)

    def __init__(self, parts):
        if isinstance(parts, Composition):
            self._parts = parts._parts
            return
        arr = _validate_parts(parts)
        if abs(arr.sum() - 1.0) > CLOSURE_TOL:
            arr = arr / arr.sum()
        self._parts = _readonly(arr)

    @classmethod
    def _trusted(cls, arr: np.ndarray) -> "Composition":
        obj = cls.__new__(cls)
        obj._parts = _readonly(arr)
        return obj

    @property
    def parts(self) -> np.ndarray:
        return self._parts

    @property
    def D(self) -> int:
        return self._parts.size

    def is_positive(self) -> bool:
        return bool(np.all(self._parts > 0))

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._parts
        return self._parts.astype(dtype)

    def __len__(self) -> int:
        return self._parts.size

    def __iter__(self):
        return iter(self._parts.tolist())

    def __getitem__(self, idx):
        return self._parts[idx]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Composition):
            return NotImplemented
        return bool(np.array_equal(self._parts, other._parts))

    def __hash__(self) -> int:
        return hash(self._parts.tobytes())

    def __repr__(self) -> str:
        inner = ", ".join(f"{v:.7g}" for v in self._parts)
        return f"Composition([{inner}])"


CompositionLike = Union[Composition, Sequence[float], np.ndarray]


def as_composition(x: CompositionLike) -> Composition:
    return x if isinstance(x, Composition) else Composition(x)


def require_positive(x: Composition, what: str = "operation") -> None:
    if not x.is_positive():
        idx = int(np.argmin(x.parts))
        raise ZeroPartNotAllowed(f"{what} requires strictly positive parts; part {idx} is zero")


def require_same_dim(x: Composition, w: Composition) -> None:
    if x.D != w.D:
        raise DimensionMismatch(f"component counts differ: {x.D} vs {w.D}")


def closure(v) -> Composition:
    """Divide a nonnegative vector by its sum.

    Parameters
    ----------
    v : array_like of shape (D,)
        Nonnegative entries, not all zero.

    Returns
    -------
    Composition
        Parts proportional to ``v`` summing to one.

    Raises
    ------
    NegativePart
        If any entry is negative.
    DegenerateInput
        If all entries are zero.
    """
    arr = _validate_parts(np.asarray(v, dtype=float))
    return Composition._trusted(arr / arr.sum())


def perturb(x: CompositionLike, w: CompositionLike) -> Composition:
    """Perturbation: closure of the component-wise product."""
    x, w = as_composition(x), as_composition(w)
    require_same_dim(x, w)
    require_positive(x, "perturbation")
    require_positive(w, "perturbation")
    return closure(x.parts * w.parts)


def simplicial_add(x: CompositionLike, w: CompositionLike) -> Composition:
    """Simplicial addition: closure of the component-wise sum."""
    x, w = as_composition(x), as_composition(w)
    require_same_dim(x, w)
    return closure(x.parts + w.parts)


def uniform(D: int) -> Composition:
    if D < 2:
        raise DimensionTooSmall(f"D must be at least 2, got {D}")
    return Composition._trusted(np.full(D, 1.0 / D))


class HelmertBasis:
    """Orthonormal ``d x D`` basis of the sum-zero hyperplane.

    Row ``i`` (1-based) holds ``1/sqrt(i(i+1))`` in its first ``i`` columns,
    ``-i/sqrt(i(i+1))`` in column ``i+1`` and zeros afterwards. The sign and
    ordering are a convention; any orthonormal basis of the hyperplane gives
    the same distances.
    """

    __slots__ = ("_matrix",)

    def __init__(self, matrix):
        m = np.asarray(matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] - 1:
            raise DimensionMismatch(f"expected a (D-1) x D matrix, got shape {m.shape}")
        self._matrix = _readonly(m)

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def D(self) -> int:
        return self._matrix.shape[1]

    @property
    def d(self) -> int:
        return self._matrix.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self._matrix if dtype is None else self._matrix.astype(dtype)

    def __repr__(self) -> str:
        return f"HelmertBasis(D={self.D})"


def helmert_basis(D: int) -> HelmertBasis:
    """Helmert sub-matrix for ``D`` components (first Helmert row removed)."""
    if D < 2:
        raise DimensionTooSmall(f"D must be at least 2, got {D}")
    H = np.zeros((D - 1, D))
    for i in range(1, D):
        norm = np.sqrt(i * (i + 1.0))
        H[i - 1, :i] = 1.0 / norm
        H[i - 1, i] = -i / norm
    return HelmertBasis(H)


def resolve_basis(H: HelmertBasis | None, D: int) -> HelmertBasis:
    if H is None:
        return helmert_basis(D)
    if H.D != D:
        raise DimensionMismatch(f"basis is for D={H.D}, data has D={D}")
    return H


class CompositionDataset:
    """``n`` labelled compositions sharing ``D`` components.

    Parameters
    ----------
    rows : array_like of shape (n, D) or sequence of Composition
    component_names : sequence of str, optional
        Defaults to ``x1 .. xD``.
    row_ids : sequence of str, optional
        Defaults to ``1 .. n``.
    """

    __slots__ = ("_values", "_names", "_ids")

    def __init__(self, rows, component_names=None, row_ids=None):
        comps = [as_composition(r) for r in rows]
        if not comps:
            raise DegenerateInput("a dataset needs at least one row")
        D = comps[0].D
        for i, c in enumerate(comps):
            if c.D != D:
                raise DimensionMismatch(f"row {i} has {c.D} parts, expected {D}")
        names = tuple(component_names) if component_names is not None else tuple(
            f"x{i + 1}" for i in range(D)
        )
        ids = tuple(row_ids) if row_ids is not None else tuple(
            str(i + 1) for i in range(len(comps))
        )
        if len(names) != D:
            raise DimensionMismatch(f"{len(names)} component names for {D} components")
        if len(ids) != len(comps):
            raise DimensionMismatch(f"{len(ids)} row ids for {len(comps)} rows")
        if len(set(names)) != len(names):
            raise SpecError("component names must be unique")
        if len(set(ids)) != len(ids):
            raise SpecError("row ids must be unique")
        self._values = _readonly(np.vstack([c.parts for c in comps]))
        self._names = tuple(str(s) for s in names)
        self._ids = tuple(str(s) for s in ids)

    @property
    def values(self) -> np.ndarray:
        """Read-only ``(n, D)`` array of parts."""
        return self._values

    @property
    def rows(self) -> tuple[Composition, ...]:
        return tuple(Composition._trusted(r) for r in self._values)

    @property
    def component_names(self) -> tuple[str, ...]:
        return self._names

    @property
    def row_ids(self) -> tuple[str, ...]:
        return self._ids

    @property
    def n(self) -> int:
        return self._values.shape[0]

    @property
    def D(self) -> int:
        return self._values.shape[1]

    def is_positive(self) -> bool:
        return bool(np.all(self._values > 0))

    def require_positive(self, what: str = "operation") -> None:
        if not self.is_positive():
            i, j = np.argwhere(self._values <= 0)[0]
            raise ZeroPartNotAllowed(
                f"{what} requires strictly positive data; row {self._ids[i]!r} "
                f"component {self._names[j]!r} is zero"
            )

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> Composition:
        return Composition._trusted(self._values[i])

    def __iter__(self):
        return iter(self.rows)

    def permuted(self, order) -> "CompositionDataset":
        order = list(order)
        return CompositionDataset(
            self._values[order], self._names, [self._ids[i] for i in order]
        )

    def __repr__(self) -> str:
        return f"CompositionDataset(n={self.n}, D={self.D})"
