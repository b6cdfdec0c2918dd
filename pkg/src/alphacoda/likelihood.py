"""Profile-likelihood selection of alpha.

The transformed rows are modelled as multivariate normal. For each alpha
the mean and covariance are replaced by their maximum-likelihood values,
leaving a function of alpha alone. As with Box-Cox, the log-Jacobian of
the map from the data to the transformed coordinates is added so that
values at different alpha are comparable. The data are parameterized by
their first ``d = D - 1`` parts.

Two parameterizations are available:

* ``z``: isometric alpha coordinates (ilr at ``alpha = 0``), which is what
  :func:`select_alpha` maximizes;
* ``u``: the closed power transform. Its covariance is singular, so the
  normal is fitted to ``H @ u`` (the pseudo-determinant of the ``D x D``
  covariance) while the Jacobian is taken in the chart ``(u_1, ..., u_d)``.
  Under this convention the two log-likelihoods differ by exactly
  ``(n/2) log D`` for every alpha.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import SingularCovariance, SpecError, ZeroPartNotAllowed
from .geometry import mean_arithmetic, mean_frechet_alpha, mean_geometric_closed
from .simplex import Composition, CompositionDataset, HelmertBasis, resolve_basis
from .transforms import (
    ALPHA_MAX,
    ALPHA_MIN,
    alpha_isometric_rows,
    alpha_power_rows,
    check_alpha,
    ilr_rows,
    inverse_alpha_isometric_rows,
)

LOG_2PI = float(np.log(2 * np.pi))
_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0
# reciprocal condition number below which a fitted covariance counts as singular
_RCOND_MIN = 1e-13


# -- building blocks --------------------------------------------------------------


def mle_covariance(Y: np.ndarray) -> np.ndarray:
    """Maximum-likelihood covariance (divisor ``n``) of the rows of ``Y``."""
    C = Y - Y.mean(axis=0)
    return C.T @ C / Y.shape[0]


def gaussian_profile_loglik(Y: np.ndarray) -> float:
    """Normal log-likelihood of the rows of ``Y`` at the MLE mean and covariance.

    Equals ``-(n/2) log det S - (n p / 2)(log 2 pi + 1)``.
    """
    n, p = Y.shape
    if n < p + 2:
        raise SingularCovariance(
            f"{n} observations in {p} dimensions: need at least {p + 2} for a "
            "usable covariance estimate"
        )
    S = mle_covariance(Y)
    sign, logdet = np.linalg.slogdet(S)
    if sign <= 0 or not np.isfinite(logdet) or 1.0 / np.linalg.cond(S) < _RCOND_MIN:
        raise SingularCovariance("the fitted covariance matrix is singular")
    return float(-0.5 * n * logdet - 0.5 * n * p * (LOG_2PI + 1.0))


def _chart_matrix(D: int) -> np.ndarray:
    """``dx/dtheta`` for ``x = (theta, 1 - sum(theta))``."""
    return np.vstack([np.eye(D - 1), -np.ones((1, D - 1))])


def _power_derivative(X: np.ndarray, alpha: float) -> tuple[np.ndarray, np.ndarray]:
    """Return ``u`` and ``(I - u 1^T) diag(u / x)``; the latter is ``du/dx`` divided by alpha."""
    n, D = X.shape
    U = np.full_like(X, 1.0 / D) if alpha == 0 else alpha_power_rows(X, alpha)
    G = np.eye(D)[None, :, :] - U[:, :, None]
    return U, G * (U / X)[:, None, :]


def jacobian_z(X: np.ndarray, alpha: float, H: HelmertBasis) -> np.ndarray:
    """Analytic ``dz/dtheta`` for every row, shape ``(n, d, d)``.

    Works for every alpha in range including 0, where it is the ilr Jacobian.
    """
    X = np.atleast_2d(X)
    D = X.shape[1]
    _, G = _power_derivative(X, alpha)
    # the 1/alpha of the isometric map cancels the alpha of du/dx
    return D * H.matrix @ G @ _chart_matrix(D)


def jacobian_u(X: np.ndarray, alpha: float) -> np.ndarray:
    """Analytic ``d(u_1..u_d)/dtheta`` for every row, shape ``(n, d, d)``."""
    X = np.atleast_2d(X)
    D = X.shape[1]
    _, G = _power_derivative(X, alpha)
    return alpha * (G @ _chart_matrix(D))[:, : D - 1, :]


def log_jacobian_z(X: np.ndarray, alpha: float, H: HelmertBasis) -> np.ndarray:
    """Per-row ``log |det dz/dtheta|``."""
    return np.linalg.slogdet(jacobian_z(X, alpha, H))[1]


def log_jacobian_u(X: np.ndarray, alpha: float) -> np.ndarray:
    return np.linalg.slogdet(jacobian_u(X, alpha))[1]


# -- profile log-likelihoods ------------------------------------------------------


def _check_inputs(ds: CompositionDataset, alpha: float, include_jacobian: bool) -> None:
    check_alpha(alpha)
    if alpha <= 0:
        ds.require_positive("the profile likelihood at alpha <= 0")
    elif include_jacobian:
        # d(x**alpha)/dx is unbounded at a zero part, so the Jacobian term is undefined
        ds.require_positive("the profile likelihood with its Jacobian term")


def profile_loglik_z(
    ds: CompositionDataset,
    alpha: float,
    H: HelmertBasis | None = None,
    *,
    include_jacobian: bool = True,
) -> float:
    """Profile log-likelihood of alpha with a normal model on the isometric coordinates."""
    _check_inputs(ds, alpha, include_jacobian)
    H = resolve_basis(H, ds.D)
    X = ds.values
    ll = gaussian_profile_loglik(alpha_isometric_rows(X, alpha, H))
    if include_jacobian:
        ll += float(log_jacobian_z(X, alpha, H).sum())
    return ll


def profile_loglik_u(
    ds: CompositionDataset,
    alpha: float,
    H: HelmertBasis | None = None,
    *,
    include_jacobian: bool = True,
) -> float:
    """Profile log-likelihood of alpha with a singular normal model on ``u``.

    At ``alpha = 0`` every row maps to the barycentre, so the value there is
    the ``alpha -> 0`` limit, obtained from ``ilr / D`` (the leading term of
    ``H u`` after dividing by alpha) with the matching Jacobian correction.
    """
    _check_inputs(ds, alpha, include_jacobian)
    H = resolve_basis(H, ds.D)
    X = ds.values
    n, D = X.shape
    d = D - 1
    if alpha == 0:
        ll = gaussian_profile_loglik(ilr_rows(X, H) / D)
        if include_jacobian:
            jac = log_jacobian_z(X, 0.0, H).sum() - n * d * np.log(D) - 0.5 * n * np.log(D)
            ll += float(jac)
        return ll
    ll = gaussian_profile_loglik(alpha_power_rows(X, alpha) @ H.matrix.T)
    if include_jacobian:
        ll += float(log_jacobian_u(X, alpha).sum())
    return ll


# -- alpha selection --------------------------------------------------------------


@dataclass(frozen=True)
class CriterionSpec:
    """How to search for alpha.

    ``search_interval = None`` picks ``[-1, 1]`` for strictly positive data
    and ``[0.01, 1]`` when zeros are present. ``include_jacobian = None``
    includes the Jacobian term unless the data contain zeros, where it is
    undefined.
    """

    kind: str = "profile_loglik"
    search_interval: tuple[float, float] | None = None
    grid_points: int = 41
    tol: float = 1e-4
    include_jacobian: bool | None = None

    def __post_init__(self):
        if self.kind != "profile_loglik":
            raise SpecError(f"unknown criterion {self.kind!r}; only 'profile_loglik' is available")
        if self.grid_points < 11:
            raise SpecError("grid_points must be at least 11")
        if self.search_interval is not None:
            lo, hi = self.search_interval
            if not (ALPHA_MIN <= lo < hi <= ALPHA_MAX):
                raise SpecError(f"search interval must satisfy -1 <= lo < hi <= 1, got {self.search_interval}")
        if not self.tol > 0:
            raise SpecError("tol must be positive")

    def interval_for(self, ds: CompositionDataset) -> tuple[float, float]:
        positive = ds.is_positive()
        if self.search_interval is None:
            return (ALPHA_MIN, ALPHA_MAX) if positive else (0.01, ALPHA_MAX)
        lo, hi = self.search_interval
        if not positive and lo <= 0:
            raise ZeroPartNotAllowed("data contain zeros, so the search interval must have lo > 0")
        return float(lo), float(hi)

    def jacobian_for(self, ds: CompositionDataset) -> bool:
        if self.include_jacobian is None:
            return ds.is_positive()
        return self.include_jacobian


@dataclass(frozen=True)
class ProfileLikelihoodResult:
    grid: np.ndarray
    loglik: np.ndarray
    alpha_hat: float
    loglik_hat: float
    mean_lra: Composition | None
    mean_alpha: Composition
    mean_rda: Composition
    boundary_maximum: bool
    escape_fraction: float
    include_jacobian: bool = True
    interval: tuple[float, float] = field(default=(ALPHA_MIN, ALPHA_MAX))

    @property
    def means(self) -> tuple[Composition | None, Composition, Composition]:
        """``(mu_0, mu_alpha_hat, mu_1)``."""
        return self.mean_lra, self.mean_alpha, self.mean_rda


def golden_section_max(
    f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-4, max_iter: int = 200
) -> tuple[float, float]:
    """Maximize a unimodal ``f`` on ``[lo, hi]`` until the bracket is narrower than ``tol``."""
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    e = a + _GOLDEN * (b - a)
    fc, fe = f(c), f(e)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc >= fe:
            b, e, fe = e, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, e, fe
            e = a + _GOLDEN * (b - a)
            fe = f(e)
    x = 0.5 * (a + b)
    return x, f(x)


def simplex_escape_fraction(
    ds: CompositionDataset,
    alpha: float,
    H: HelmertBasis | None = None,
    *,
    n_draws: int = 10_000,
    seed: int = 0,
) -> float:
    """Share of the fitted normal's mass (in z coordinates) lying outside the simplex image.

    Estimated by Monte Carlo. Zero at ``alpha = 0``, since ilr maps onto all of R^d.
    """
    H = resolve_basis(H, ds.D)
    if alpha == 0:
        return 0.0
    Z = alpha_isometric_rows(ds.values, alpha, H)
    rng = np.random.default_rng(seed)
    draws = rng.multivariate_normal(Z.mean(axis=0), mle_covariance(Z), size=n_draws, method="cholesky")
    U = (alpha * draws @ H.matrix + 1.0) / H.D
    return float(np.mean(np.any(U <= 0, axis=1)))


def select_alpha(
    ds: CompositionDataset,
    spec: CriterionSpec | None = None,
    H: HelmertBasis | None = None,
    *,
    seed: int = 0,
    n_draws: int = 10_000,
) -> ProfileLikelihoodResult:
    """Choose alpha by maximizing the profile log-likelihood.

    A coarse grid locates the best cell, then golden-section search refines
    inside the neighbouring grid cells. If the maximum sits on an end of the
    search interval the end point is returned with ``boundary_maximum`` set.
    """
    spec = spec or CriterionSpec()
    H = resolve_basis(H, ds.D)
    lo, hi = spec.interval_for(ds)
    with_jacobian = spec.jacobian_for(ds)

    def ll(a: float) -> float:
        return profile_loglik_z(ds, a, H, include_jacobian=with_jacobian)

    grid = np.linspace(lo, hi, spec.grid_points)
    values = np.array([ll(a) for a in grid])
    i = int(np.argmax(values))
    best_a, best_ll = float(grid[i]), float(values[i])

    left = grid[max(i - 1, 0)]
    right = grid[min(i + 1, len(grid) - 1)]
    a_ref, ll_ref = golden_section_max(ll, float(left), float(right), spec.tol)
    if ll_ref > best_ll:
        best_a, best_ll = a_ref, ll_ref

    at_end = (i == 0 and best_a - lo <= spec.tol) or (i == len(grid) - 1 and hi - best_a <= spec.tol)
    if at_end:
        best_a = lo if i == 0 else hi
        best_ll = float(values[i])

    mean_lra = mean_geometric_closed(ds) if ds.is_positive() else None
    return ProfileLikelihoodResult(
        grid=grid,
        loglik=values,
        alpha_hat=best_a,
        loglik_hat=best_ll,
        mean_lra=mean_lra,
        mean_alpha=mean_frechet_alpha(ds, best_a).mean,
        mean_rda=mean_arithmetic(ds),
        boundary_maximum=bool(at_end),
        escape_fraction=simplex_escape_fraction(ds, best_a, H, n_draws=n_draws, seed=seed),
        include_jacobian=with_jacobian,
        interval=(lo, hi),
    )


def sample_normal_in_z(
    n: int,
    alpha: float,
    mean_composition,
    cov: np.ndarray,
    *,
    seed: int = 0,
    H: HelmertBasis | None = None,
) -> np.ndarray:
    """Draw ``n`` compositions whose isometric alpha coordinates are normal.

    The normal is centred on the coordinates of ``mean_composition``.
    Draws that land outside the image of the simplex are rejected and
    redrawn from the same stream.
    """
    m = np.asarray(mean_composition, dtype=float)
    H = resolve_basis(H, m.size)
    centre = alpha_isometric_rows(m[None, :], alpha, H)[0]
    rng = np.random.default_rng(seed)
    out: list[np.ndarray] = []
    while len(out) < n:
        Z = rng.multivariate_normal(centre, cov, size=n, method="cholesky")
        if alpha != 0:
            U = (alpha * Z @ H.matrix + 1.0) / H.D
            Z = Z[np.all(U > 0, axis=1)]
        out.extend(inverse_alpha_isometric_rows(Z, alpha, H))
    return np.array(out[:n])
