"""Distances and Frechet means on the simplex.

Three distances are provided: Euclidean on the raw parts (``rda``),
Euclidean on clr coordinates (``lra``, Aitchison's distance) and the
alpha-distance, which equals ``D`` times the raw distance at ``alpha = 1``
and tends to the Aitchison distance as ``alpha -> 0``.

Each distance has a closed-form Frechet mean. :func:`frechet_oracle`
finds the same point by direct numerical minimization and exists for
testing the closed forms.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .errors import DomainError, OracleNonConvergence, SpecError
from .simplex import (
    Composition,
    CompositionDataset,
    CompositionLike,
    HelmertBasis,
    as_composition,
    closure,
    require_positive,
    require_same_dim,
    resolve_basis,
)
from .transforms import (
    alpha_isometric_rows,
    alpha_power_rows,
    check_alpha,
    clr_rows,
    inverse_alpha_isometric_rows,
    inverse_alpha_power_rows,
)


class DistanceKind(str, enum.Enum):
    RDA = "rda"
    LRA = "lra"
    ALPHA = "alpha"


@dataclass(frozen=True)
class DistanceSpec:
    kind: DistanceKind
    alpha: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", DistanceKind(self.kind))
        if self.kind is DistanceKind.ALPHA:
            check_alpha(self.alpha)
            if self.alpha == 0:
                raise SpecError("alpha-distance needs alpha != 0; use kind='lra' for the limit")


@dataclass(frozen=True)
class FrechetMeanResult:
    mean: Composition
    alpha: float
    objective: float


# -- distances ----------------------------------------------------------------


def dist_rda(x: CompositionLike, w: CompositionLike) -> float:
    """Euclidean distance between the raw parts."""
    x, w = as_composition(x), as_composition(w)
    require_same_dim(x, w)
    return float(np.sqrt(np.sum((x.parts - w.parts) ** 2)))


def dist_lra(x: CompositionLike, w: CompositionLike) -> float:
    """Aitchison distance: Euclidean distance between clr coordinates."""
    x, w = as_composition(x), as_composition(w)
    require_same_dim(x, w)
    require_positive(x, "dist_lra")
    require_positive(w, "dist_lra")
    return float(np.sqrt(np.sum((clr_rows(x.parts) - clr_rows(w.parts)) ** 2)))


def dist_alpha(x: CompositionLike, w: CompositionLike, alpha: float) -> float:
    """``(D/alpha) * ||u(x) - u(w)||`` with ``u`` the closed power transform."""
    x, w = as_composition(x), as_composition(w)
    require_same_dim(x, w)
    check_alpha(alpha)
    if alpha == 0:
        raise SpecError("alpha-distance needs alpha != 0; use dist_lra for the limit")
    if alpha < 0:
        require_positive(x, "dist_alpha with alpha < 0")
        require_positive(w, "dist_alpha with alpha < 0")
    ux = alpha_power_rows(x.parts, alpha)
    uw = alpha_power_rows(w.parts, alpha)
    return float(x.D / abs(alpha) * np.sqrt(np.sum((ux - uw) ** 2)))


def distance(x: CompositionLike, w: CompositionLike, spec: DistanceSpec) -> float:
    if spec.kind is DistanceKind.RDA:
        return dist_rda(x, w)
    if spec.kind is DistanceKind.LRA:
        return dist_lra(x, w)
    return dist_alpha(x, w, spec.alpha)


def embed(X: np.ndarray, spec: DistanceSpec) -> np.ndarray:
    """Rows mapped to the Euclidean space in which ``spec`` is plain Euclidean distance."""
    if spec.kind is DistanceKind.RDA:
        return np.asarray(X, dtype=float)
    if spec.kind is DistanceKind.LRA:
        return clr_rows(X)
    return X.shape[-1] / abs(spec.alpha) * alpha_power_rows(X, spec.alpha)


def distance_matrix(ds: CompositionDataset, spec: DistanceSpec) -> np.ndarray:
    """Symmetric ``(n, n)`` matrix of pairwise distances with a zero diagonal."""
    if spec.kind is DistanceKind.LRA or (spec.kind is DistanceKind.ALPHA and spec.alpha < 0):
        ds.require_positive(f"{spec.kind.value} distance")
    E = embed(ds.values, spec)
    diff = E[:, None, :] - E[None, :, :]
    M = np.sqrt(np.sum(diff**2, axis=-1))
    M = 0.5 * (M + M.T)
    np.fill_diagonal(M, 0.0)
    return M


# -- Frechet means --------------------------------------------------------------


def mean_arithmetic(ds: CompositionDataset) -> Composition:
    """Component-wise average of the rows, re-closed."""
    return closure(ds.values.mean(axis=0))


def mean_geometric_closed(ds: CompositionDataset) -> Composition:
    """Closure of the component-wise geometric means."""
    ds.require_positive("the closed geometric mean")
    return closure(np.exp(np.log(ds.values).mean(axis=0)))


def frechet_objective(ds: CompositionDataset, h: CompositionLike, alpha: float) -> float:
    """Sum of squared distances from every row to ``h``; ``alpha = 0`` uses dist_lra."""
    if alpha == 0:
        return float(sum(dist_lra(x, h) ** 2 for x in ds))
    return float(sum(dist_alpha(x, h, alpha) ** 2 for x in ds))


def mean_frechet_alpha(ds: CompositionDataset, alpha: float) -> FrechetMeanResult:
    """Closed-form Frechet mean for the alpha-distance.

    The mean of the power-transformed rows is mapped back through the
    inverse power. ``alpha = 1`` reproduces :func:`mean_arithmetic` and
    ``alpha = 0`` dispatches to :func:`mean_geometric_closed`.
    """
    check_alpha(alpha)
    if alpha == 0:
        mean = mean_geometric_closed(ds)
    else:
        if alpha < 0:
            ds.require_positive("the alpha Frechet mean with alpha < 0")
        ubar = alpha_power_rows(ds.values, alpha).mean(axis=0)
        if np.any(ubar <= 0):
            raise DomainError("averaged power-transformed rows have a zero part")
        mean = closure(inverse_alpha_power_rows(ubar, alpha))
    return FrechetMeanResult(mean, alpha, frechet_objective(ds, mean, alpha))


def frechet_oracle(
    ds: CompositionDataset,
    alpha: float,
    H: HelmertBasis | None = None,
    *,
    tol: float = 1e-12,
    max_iter: int = 20000,
) -> Composition:
    """Minimize the Frechet objective numerically with Nelder-Mead.

    The search runs over isometric alpha coordinates, starting from the
    barycentre, so every trial point maps to a valid composition and no
    boundary handling is needed. Slow; meant for tests on small data.
    """
    check_alpha(alpha)
    H = resolve_basis(H, ds.D)
    if alpha <= 0:
        ds.require_positive("the Frechet oracle with alpha <= 0")

    def to_comp(z):
        return Composition._trusted(inverse_alpha_isometric_rows(z, alpha, H)[0])

    def f(z):
        try:
            h = to_comp(z)
        except DomainError:
            return np.inf
        if alpha != 0 and np.any(h.parts <= 0):
            return np.inf
        return frechet_objective(ds, h, alpha)

    res = optimize.minimize(
        f,
        np.zeros(H.d),
        method="Nelder-Mead",
        options={"xatol": tol, "fatol": tol, "maxiter": max_iter, "maxfev": 4 * max_iter},
    )
    if not res.success:
        raise OracleNonConvergence(f"Nelder-Mead stopped after {res.nit} iterations: {res.message}")
    return to_comp(res.x)


def frechet_mean_z(ds: CompositionDataset, alpha: float, H: HelmertBasis | None = None) -> np.ndarray:
    """Average of the isometric alpha coordinates (the mean in the chart)."""
    return alpha_isometric_rows(ds.values, alpha, resolve_basis(H, ds.D)).mean(axis=0)


# -- metric axioms --------------------------------------------------------------


def check_subcompositional_dominance(
    x: CompositionLike, w: CompositionLike, subset, spec: DistanceSpec, *, tol: float = 1e-12
) -> bool:
    """True when the distance between the closed sub-compositions does not exceed the full distance.

    ``subset`` holds 0-based component indices, at least two of them.
    """
    x, w = as_composition(x), as_composition(w)
    require_same_dim(x, w)
    idx = sorted(set(int(i) for i in subset))
    if len(idx) < 2:
        raise SpecError("a sub-composition needs at least two components")
    if idx[0] < 0 or idx[-1] >= x.D:
        raise SpecError(f"subset indices must lie in 0..{x.D - 1}")
    full = distance(x, w, spec)
    sub = distance(closure(x.parts[idx]), closure(w.parts[idx]), spec)
    return sub <= full + tol
