import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from alphacoda import (
    SpecError,
    TransformSpec,
    ZeroPartNotAllowed,
    alpha_isometric,
    alpha_power,
    alr,
    boxcox_ratio,
    closure,
    clr,
    dist_lra,
    helmert_basis,
    ilr,
    inverse_alpha_power,
    perturb,
    transform,
)
from alphacoda.simplex import uniform
from alphacoda.transforms import inverse_alpha_isometric_rows

from conftest import random_positive

X0 = [0.5, 0.3, 0.2]


def test_clr_uniform_is_zero():
    for D in (2, 3, 7):
        np.testing.assert_allclose(clr(uniform(D)), 0, atol=1e-15)


def test_clr_scalar_oracle():
    g = (0.5 * 0.3 * 0.2) ** (1 / 3)
    expected = [math.log(0.5 / g), math.log(0.3 / g), math.log(0.2 / g)]
    np.testing.assert_allclose(clr(X0), expected, rtol=1e-14)


def test_clr_linear_under_perturbation(rng):
    for _ in range(100):
        D = int(rng.integers(2, 8))
        x, w = random_positive(rng, D), random_positive(rng, D)
        np.testing.assert_allclose(clr(perturb(x, w)), clr(x) + clr(w), atol=1e-10)


@given(st.integers(2, 10).flatmap(lambda D: arrays(float, D, elements=st.floats(1e-6, 1.0))))
def test_clr_sums_to_zero(v):
    assert abs(clr(closure(v)).sum()) < 1e-10


def test_zero_parts_rejected():
    z = [0.5, 0.5, 0.0]
    for f in (clr, ilr, alr):
        with pytest.raises(ZeroPartNotAllowed):
            f(z)
    with pytest.raises(ZeroPartNotAllowed):
        boxcox_ratio(z, 0.5)
    with pytest.raises(ZeroPartNotAllowed):
        alpha_power(z, -0.5)
    with pytest.raises(ZeroPartNotAllowed):
        alpha_isometric(z, 0.0)
    # positive alpha copes with zeros
    assert alpha_power(z, 0.5).parts[2] == 0.0
    assert np.all(np.isfinite(alpha_isometric(z, 0.5)))


def test_ilr_properties(rng):
    H = helmert_basis(3)
    np.testing.assert_allclose(ilr(uniform(3), H), [0, 0], atol=1e-15)
    for _ in range(50):
        x = random_positive(rng, 5)
        assert abs(np.linalg.norm(ilr(x)) - np.linalg.norm(clr(x))) < 1e-12


def test_ilr_matches_hand_product():
    y = clr(X0)
    r2, r6 = math.sqrt(2), math.sqrt(6)
    expected = [(y[0] - y[1]) / r2, (y[0] + y[1] - 2 * y[2]) / r6]
    np.testing.assert_allclose(ilr(X0), expected, rtol=1e-13)


def test_alr_examples():
    np.testing.assert_allclose(alr(uniform(4)), 0, atol=1e-15)
    np.testing.assert_allclose(alr([0.2, 0.3, 0.5], 3), [math.log(0.4), math.log(0.6)], rtol=1e-14)
    np.testing.assert_allclose(alr([0.2, 0.3, 0.5], 1), [math.log(1.5), math.log(2.5)], rtol=1e-14)
    with pytest.raises(SpecError):
        alr([0.2, 0.3, 0.5], 4)


def test_boxcox_ratio_examples():
    np.testing.assert_allclose(boxcox_ratio([0.2, 0.3, 0.5], 1.0), [-0.6, -0.4], atol=1e-15)
    for lam in (-1.0, 0.3, 2.0):
        np.testing.assert_allclose(boxcox_ratio([0.25, 0.25, 0.5], lam, 2), [0.0, (2.0**lam - 1) / lam], atol=1e-15)
    np.testing.assert_array_equal(boxcox_ratio(X0, 0.0), alr(X0))


def test_boxcox_ratio_tends_to_alr(rng):
    x = random_positive(rng, 4)
    target = alr(x)
    errs = [np.max(np.abs(boxcox_ratio(x, lam) - target)) for lam in (1e-4, 1e-6, 1e-8)]
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 1e-6


def test_alpha_power_examples():
    x = closure(X0)
    assert alpha_power(x, 1.0) == x
    for a in (-1.0, -0.3, 0.5, 1.0):
        np.testing.assert_allclose(alpha_power(uniform(4), a).parts, 0.25, atol=1e-15)
    s = [math.sqrt(v) for v in X0]
    np.testing.assert_allclose(alpha_power(X0, 0.5).parts, [v / sum(s) for v in s], rtol=1e-14)
    with pytest.raises(SpecError):
        alpha_power(X0, 0.0)
    with pytest.raises(SpecError):
        alpha_power(X0, 1.5)


def test_alpha_isometric_uniform_and_limit(rng):
    H = helmert_basis(4)
    for a in (-1.0, -0.2, 0.0, 0.4, 1.0):
        np.testing.assert_allclose(alpha_isometric(uniform(4), a, H), 0, atol=1e-13)
    for _ in range(50):
        x = random_positive(rng, 4, concentration=2.0)
        np.testing.assert_allclose(alpha_isometric(x, 1e-6, H), ilr(x, H), atol=1e-4)
        np.testing.assert_array_equal(alpha_isometric(x, 0.0, H), ilr(x, H))


def test_alpha_isometric_alpha_one_hand_check():
    H = helmert_basis(3).matrix
    v = 3 * np.array(X0) - 1
    expected = [(v[0] - v[1]) / math.sqrt(2), (v[0] + v[1] - 2 * v[2]) / math.sqrt(6)]
    np.testing.assert_allclose(alpha_isometric(X0, 1.0), expected, rtol=1e-14)
    np.testing.assert_allclose(alpha_isometric(X0, 1.0), H @ v, rtol=1e-14)


def test_alpha_isometric_affine_at_one(rng):
    H = helmert_basis(5)
    for _ in range(50):
        x, w = random_positive(rng, 5), random_positive(rng, 5)
        lhs = alpha_isometric(x, 1.0, H) - alpha_isometric(w, 1.0, H)
        np.testing.assert_allclose(lhs, H.matrix @ (5 * (x - w)), atol=1e-14)


@pytest.mark.parametrize("alpha", [-0.5, 0.25, 0.75])
def test_inverse_alpha_power_round_trip(rng, alpha):
    for _ in range(100):
        u = random_positive(rng, int(rng.integers(2, 8)), concentration=2.0)
        back = alpha_power(inverse_alpha_power(u, alpha), alpha).parts
        np.testing.assert_allclose(back, u, rtol=0, atol=1e-10)


def test_inverse_alpha_power_simple():
    assert inverse_alpha_power(closure(X0), 1.0) == closure(X0)
    np.testing.assert_allclose(inverse_alpha_power(uniform(3), 0.3).parts, 1 / 3, atol=1e-15)


@pytest.mark.parametrize("alpha", [-0.7, 0.0, 0.3, 1.0])
def test_inverse_alpha_isometric(rng, alpha):
    H = helmert_basis(4)
    X = random_positive(rng, 4, size=20, concentration=3.0)
    Z = np.array([alpha_isometric(x, alpha, H) for x in X])
    np.testing.assert_allclose(inverse_alpha_isometric_rows(Z, alpha, H), X, atol=1e-10)


def test_log_ratio_scale_invariance(rng):
    for _ in range(50):
        v = rng.uniform(0.1, 5.0, size=4)
        c = rng.uniform(0.01, 100)
        for f in (clr, ilr, alr):
            np.testing.assert_allclose(f(closure(c * v)), f(closure(v)), atol=1e-12)


def test_ilr_is_isometry_for_lra(rng):
    H = helmert_basis(6)
    for _ in range(100):
        x, w = random_positive(rng, 6), random_positive(rng, 6)
        assert abs(np.linalg.norm(ilr(x, H) - ilr(w, H)) - dist_lra(x, w)) < 1e-12


def test_transform_spec_validation():
    with pytest.raises(SpecError):
        TransformSpec("alpha_power", 2.0)
    with pytest.raises(SpecError):
        TransformSpec("alr", divisor=0)
    with pytest.raises(ValueError):
        TransformSpec("nope")
    assert TransformSpec("ilr").output_dim(5) == 4
    assert TransformSpec("clr").output_dim(5) == 5


def test_transform_dataset(table1):
    td = transform(table1, TransformSpec("clr"))
    assert td.values.shape == (30, 3)
    np.testing.assert_allclose(td.values.sum(axis=1), 0, atol=1e-10)
    assert transform(table1, TransformSpec("ilr")).values.shape == (30, 2)
    assert transform(table1, TransformSpec("alpha_isometric", 0.4)).values.shape == (30, 2)
    ap = transform(table1, TransformSpec("alpha_power", 0.4)).values
    np.testing.assert_allclose(ap.sum(axis=1), 1, atol=1e-12)
    np.testing.assert_array_equal(transform(table1, TransformSpec("alpha_power", 1.0)).values, table1.values)
