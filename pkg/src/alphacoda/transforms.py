"""Log-ratio, Box-Cox ratio and alpha-power transformations.

Single-composition functions return plain numpy vectors (or a
:class:`Composition` where the result lives on the simplex). The
``*_rows`` helpers apply the same maps to an ``(n, D)`` array at once and
are what the dataset-level code uses.

Component indices for ``alr`` and ``boxcox_ratio`` are 1-based, so the
default divisor ``D`` is the last component.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SpecError, ZeroPartNotAllowed
from .simplex import (
    Composition,
    CompositionDataset,
    CompositionLike,
    HelmertBasis,
    as_composition,
    require_positive,
    resolve_basis,
)

ALPHA_MIN, ALPHA_MAX = -1.0, 1.0


class TransformKind(str, enum.Enum):
    CLR = "clr"
    ILR = "ilr"
    ALR = "alr"
    BOXCOX_RATIO = "boxcox_ratio"
    ALPHA_POWER = "alpha_power"
    ALPHA_ISOMETRIC = "alpha_isometric"


@dataclass(frozen=True)
class TransformSpec:
    """Which transformation to apply and with what parameter.

    ``alpha`` doubles as the Box-Cox ``lambda`` for ``boxcox_ratio``.
    ``divisor`` is a 1-based component number; ``None`` means the last one.
    """

    kind: TransformKind
    alpha: float = 1.0
    divisor: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", TransformKind(self.kind))
        if not np.isfinite(self.alpha):
            raise SpecError("alpha must be finite")
        if self.kind in (TransformKind.ALPHA_POWER, TransformKind.ALPHA_ISOMETRIC):
            check_alpha(self.alpha)
        if self.divisor is not None and self.divisor < 1:
            raise SpecError(f"divisor is 1-based, got {self.divisor}")

    def output_dim(self, D: int) -> int:
        if self.kind in (TransformKind.CLR, TransformKind.ALPHA_POWER):
            return D
        return D - 1


@dataclass(frozen=True)
class TransformedData:
    values: np.ndarray
    spec: TransformSpec


def check_alpha(alpha: float) -> None:
    if not (ALPHA_MIN <= alpha <= ALPHA_MAX):
        raise SpecError(f"alpha must lie in [{ALPHA_MIN}, {ALPHA_MAX}], got {alpha}")


def _divisor_index(divisor: int | None, D: int) -> int:
    if divisor is None:
        return D - 1
    if not 1 <= divisor <= D:
        raise SpecError(f"divisor must be in 1..{D}, got {divisor}")
    return divisor - 1


def _require_positive_rows(X: np.ndarray, what: str) -> None:
    if np.any(X <= 0):
        i, j = np.argwhere(X <= 0)[0]
        raise ZeroPartNotAllowed(f"{what} requires strictly positive parts; row {i} part {j} is zero")


# -- log-ratio family ---------------------------------------------------------


def clr_rows(X: np.ndarray) -> np.ndarray:
    _require_positive_rows(X, "clr")
    L = np.log(X)
    return L - L.mean(axis=-1, keepdims=True)


def clr(x: CompositionLike) -> np.ndarray:
    """Centred log-ratio: log of each part over the geometric mean of all parts."""
    x = as_composition(x)
    require_positive(x, "clr")
    return clr_rows(x.parts)


def ilr_rows(X: np.ndarray, H: HelmertBasis | None = None) -> np.ndarray:
    H = resolve_basis(H, X.shape[-1])
    return clr_rows(X) @ H.matrix.T


def ilr(x: CompositionLike, H: HelmertBasis | None = None) -> np.ndarray:
    """Isometric log-ratio coordinates ``H @ clr(x)``."""
    x = as_composition(x)
    require_positive(x, "ilr")
    return ilr_rows(x.parts, H)


def alr_rows(X: np.ndarray, divisor: int | None = None) -> np.ndarray:
    _require_positive_rows(X, "alr")
    k = _divisor_index(divisor, X.shape[-1])
    L = np.log(X)
    return np.delete(L - L[..., k : k + 1], k, axis=-1)


def alr(x: CompositionLike, divisor: int | None = None) -> np.ndarray:
    """Additive log-ratio: ``log(x_i / x_divisor)`` for the other parts, in order."""
    x = as_composition(x)
    require_positive(x, "alr")
    return alr_rows(x.parts, divisor)


def boxcox_ratio_rows(X: np.ndarray, lam: float, divisor: int | None = None) -> np.ndarray:
    if lam == 0:
        return alr_rows(X, divisor)
    _require_positive_rows(X, "boxcox_ratio")
    k = _divisor_index(divisor, X.shape[-1])
    R = np.delete(X / X[..., k : k + 1], k, axis=-1)
    # expm1/log keeps precision for small lambda, where (r**lam - 1) cancels
    return np.expm1(lam * np.log(R)) / lam


def boxcox_ratio(x: CompositionLike, lam: float, divisor: int | None = None) -> np.ndarray:
    """Box-Cox transform of the ratios to a divisor part; ``lam == 0`` gives alr."""
    x = as_composition(x)
    require_positive(x, "boxcox_ratio")
    return boxcox_ratio_rows(x.parts, lam, divisor)


# -- alpha family -------------------------------------------------------------


def alpha_power_rows(X: np.ndarray, alpha: float) -> np.ndarray:
    check_alpha(alpha)
    if alpha == 0:
        raise SpecError(
            "alpha_power is degenerate at alpha = 0 (every input maps to the "
            "uniform composition); use ilr / alpha_isometric instead"
        )
    if alpha == 1:
        return X
    if alpha < 0:
        _require_positive_rows(X, "alpha_power with alpha < 0")
    P = X**alpha
    return P / P.sum(axis=-1, keepdims=True)


def alpha_power(x: CompositionLike, alpha: float) -> Composition:
    """Closed power transform ``x**alpha / sum(x**alpha)``.

    Zeros are allowed for ``alpha > 0``. ``alpha = 1`` returns ``x``
    unchanged and ``alpha = 0`` is rejected.
    """
    x = as_composition(x)
    if alpha < 0:
        require_positive(x, "alpha_power with alpha < 0")
    if alpha == 1:
        check_alpha(alpha)
        return x
    return Composition._trusted(alpha_power_rows(x.parts, alpha))


def alpha_isometric_rows(X: np.ndarray, alpha: float, H: HelmertBasis | None = None) -> np.ndarray:
    check_alpha(alpha)
    H = resolve_basis(H, X.shape[-1])
    if alpha == 0:
        return ilr_rows(X, H)
    D = X.shape[-1]
    U = alpha_power_rows(X, alpha)
    return (D * U - 1.0) @ H.matrix.T / alpha


def alpha_isometric(x: CompositionLike, alpha: float, H: HelmertBasis | None = None) -> np.ndarray:
    """Isometric alpha coordinates ``(1/alpha) H (D u - 1)``; ilr at ``alpha = 0``."""
    x = as_composition(x)
    if alpha <= 0:
        require_positive(x, "alpha_isometric with alpha <= 0")
    return alpha_isometric_rows(x.parts, alpha, H)


def inverse_alpha_power_rows(U: np.ndarray, alpha: float) -> np.ndarray:
    if alpha == 0:
        raise SpecError("alpha_power cannot be inverted at alpha = 0")
    if alpha == 1:
        return U
    _require_positive_rows(U, "inverse_alpha_power")
    # log domain: u ** (1/alpha) under- or overflows when alpha is small
    L = np.log(U) / alpha
    P = np.exp(L - L.max(axis=-1, keepdims=True))
    return P / P.sum(axis=-1, keepdims=True)


def inverse_alpha_power(u: CompositionLike, alpha: float) -> Composition:
    """Undo :func:`alpha_power`: ``closure(u ** (1/alpha))``."""
    u = as_composition(u)
    require_positive(u, "inverse_alpha_power")
    return Composition._trusted(inverse_alpha_power_rows(u.parts, alpha))


def inverse_alpha_isometric_rows(Z: np.ndarray, alpha: float, H: HelmertBasis) -> np.ndarray:
    """Map isometric alpha coordinates back to compositions.

    Raises :class:`DomainError` when a point falls outside the image of the
    simplex (only possible for ``alpha != 0``).
    """
    Z = np.atleast_2d(np.asarray(Z, dtype=float))
    D = H.D
    if alpha == 0:
        P = np.exp(Z @ H.matrix)
        return P / P.sum(axis=-1, keepdims=True)
    U = (alpha * Z @ H.matrix + 1.0) / D
    if np.any(U <= 0):
        raise DomainError("coordinates fall outside the image of the open simplex")
    return inverse_alpha_power_rows(U, alpha)


# -- dataset level --------------------------------------------------------------


def transform(ds: CompositionDataset, spec: TransformSpec, H: HelmertBasis | None = None) -> TransformedData:
    """Apply ``spec`` to every row of ``ds``."""
    X = ds.values
    kind = spec.kind
    if kind in (TransformKind.CLR, TransformKind.ILR, TransformKind.ALR, TransformKind.BOXCOX_RATIO) or (
        kind in (TransformKind.ALPHA_POWER, TransformKind.ALPHA_ISOMETRIC) and spec.alpha <= 0
    ):
        ds.require_positive(kind.value)
    if kind is TransformKind.CLR:
        out = clr_rows(X)
    elif kind is TransformKind.ILR:
        out = ilr_rows(X, H)
    elif kind is TransformKind.ALR:
        out = alr_rows(X, spec.divisor)
    elif kind is TransformKind.BOXCOX_RATIO:
        out = boxcox_ratio_rows(X, spec.alpha, spec.divisor)
    elif kind is TransformKind.ALPHA_POWER:
        out = alpha_power_rows(X, spec.alpha)
    else:
        out = alpha_isometric_rows(X, spec.alpha, H)
    out = np.array(out, dtype=float)
    out.flags.writeable = False
    return TransformedData(out, spec)
