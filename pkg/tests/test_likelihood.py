import math

import numpy as np
import pytest
from scipy import stats

from alphacoda import (
    CompositionDataset,
    CriterionSpec,
    SingularCovariance,
    SpecError,
    ZeroPartNotAllowed,
    helmert_basis,
    load_fixture_recovery,
    profile_loglik_u,
    profile_loglik_z,
    select_alpha,
)
from alphacoda.fixtures import RECOVERY_ALPHA, make_recovery_dataset
from alphacoda.likelihood import (
    gaussian_profile_loglik,
    golden_section_max,
    jacobian_z,
    log_jacobian_z,
    mle_covariance,
    simplex_escape_fraction,
)
from alphacoda.transforms import alpha_isometric_rows, alpha_power_rows

from conftest import random_positive
from oracles import fd_jacobian_z


def test_mle_covariance_matches_numpy(rng):
    Y = rng.normal(size=(40, 3))
    np.testing.assert_allclose(mle_covariance(Y), np.cov(Y, rowvar=False, bias=True), rtol=1e-12)


def test_gaussian_profile_matches_scipy(rng):
    Y = rng.normal(size=(25, 2)) @ np.array([[1.0, 0.3], [0.0, 0.5]])
    S = np.cov(Y, rowvar=False, bias=True)
    expected = stats.multivariate_normal(Y.mean(axis=0), S).logpdf(Y).sum()
    assert gaussian_profile_loglik(Y) == pytest.approx(expected, rel=1e-12)


def test_gaussian_profile_rejects_small_samples(rng):
    with pytest.raises(SingularCovariance):
        gaussian_profile_loglik(rng.normal(size=(3, 2)))
    with pytest.raises(SingularCovariance):
        gaussian_profile_loglik(np.ones((10, 2)))


@pytest.mark.parametrize("alpha", [-0.8, 0.0, 0.3, 1.0])
def test_jacobian_matches_finite_differences(rng, alpha):
    H = helmert_basis(4)
    for _ in range(10):
        x = random_positive(rng, 4, concentration=3.0)
        np.testing.assert_allclose(jacobian_z(x, alpha, H)[0], fd_jacobian_z(x, alpha, H), rtol=1e-6, atol=1e-7)


def test_loglik_z_independent_assembly(rng):
    H = helmert_basis(3)
    X = random_positive(rng, 3, size=40, concentration=4.0)
    ds = CompositionDataset(X)
    alpha = 0.5
    Z = np.array([alpha_isometric_rows(x[None, :], alpha, H)[0] for x in X])
    normal = stats.multivariate_normal(Z.mean(axis=0), np.cov(Z, rowvar=False, bias=True))
    jac = sum(math.log(abs(np.linalg.det(fd_jacobian_z(x, alpha, H)))) for x in X)
    expected = normal.logpdf(Z).sum() + jac
    assert profile_loglik_z(ds, alpha, H) == pytest.approx(expected, rel=1e-7)


def test_loglik_u_two_parts_scalar_oracle(rng):
    # D = 2: u = (u1, 1 - u1); the singular normal on u has pseudo-determinant 2 var(u1)
    X = random_positive(rng, 2, size=30, concentration=5.0)
    ds = CompositionDataset(X)
    for alpha in (-0.6, 0.35, 1.0):
        x1, x2 = X[:, 0], X[:, 1]
        u1 = x1**alpha / (x1**alpha + x2**alpha)
        n = len(u1)
        var = np.mean((u1 - u1.mean()) ** 2)
        gauss = -0.5 * n * math.log(2 * var) - 0.5 * n * (math.log(2 * math.pi) + 1)
        jac = np.sum(np.log(np.abs(alpha * u1 * (1 - u1) * (1 / x1 + 1 / x2))))
        assert profile_loglik_u(ds, alpha) == pytest.approx(gauss + jac, rel=1e-10)


def test_offset_identity_table1(table1):
    n, D = table1.n, table1.D
    for a in np.linspace(-1, 1, 21):
        diff = profile_loglik_z(table1, a) - profile_loglik_u(table1, a)
        assert diff == pytest.approx(0.5 * n * math.log(D), abs=1e-8)


def test_offset_identity_other_dimensions(rng):
    for D in (2, 4, 6):
        ds = CompositionDataset(random_positive(rng, D, size=50, concentration=3.0))
        for a in (-0.4, 0.0, 0.2, 0.9):
            diff = profile_loglik_z(ds, a) - profile_loglik_u(ds, a)
            assert diff == pytest.approx(0.5 * ds.n * math.log(D), abs=1e-8)


def test_loglik_row_permutation_invariant(table1, rng):
    perm = rng.permutation(table1.n)
    shuffled = table1.permuted(perm)
    for a in (-0.5, 0.0, 0.4):
        assert profile_loglik_z(shuffled, a) == pytest.approx(profile_loglik_z(table1, a), abs=1e-9)
        assert profile_loglik_u(shuffled, a) == pytest.approx(profile_loglik_u(table1, a), abs=1e-9)


def test_loglik_without_jacobian(table1):
    a = 0.4
    gap = profile_loglik_z(table1, a) - profile_loglik_z(table1, a, include_jacobian=False)
    assert gap == pytest.approx(log_jacobian_z(table1.values, a, helmert_basis(3)).sum(), rel=1e-12)


def test_loglik_errors():
    ds = CompositionDataset([[0.2, 0.3, 0.5], [0.3, 0.3, 0.4], [0.1, 0.6, 0.3]])  # n = d + 1
    with pytest.raises(SingularCovariance):
        profile_loglik_z(ds, 0.5)
    with pytest.raises(SingularCovariance):
        select_alpha(ds)
    zeros = CompositionDataset([[0.2, 0.8, 0.0], [0.3, 0.3, 0.4], [0.1, 0.6, 0.3], [0.5, 0.2, 0.3]])
    with pytest.raises(ZeroPartNotAllowed):
        profile_loglik_z(zeros, 0.5)
    with pytest.raises(ZeroPartNotAllowed):
        profile_loglik_z(zeros, -0.5, include_jacobian=False)


def test_golden_section_max():
    x, fx = golden_section_max(lambda t: -(t - 0.3217) ** 2, -1.0, 1.0, tol=1e-6)
    assert abs(x - 0.3217) < 1e-6 and fx <= 0


def test_criterion_spec_validation(table1):
    with pytest.raises(SpecError):
        CriterionSpec(grid_points=5)
    with pytest.raises(SpecError):
        CriterionSpec(search_interval=(0.5, 0.2))
    with pytest.raises(SpecError):
        CriterionSpec(kind="pseudo_r2")
    assert CriterionSpec().interval_for(table1) == (-1.0, 1.0)
    zeros = CompositionDataset([[0.2, 0.8, 0.0], [0.3, 0.3, 0.4]])
    assert CriterionSpec().interval_for(zeros) == (0.01, 1.0)
    with pytest.raises(ZeroPartNotAllowed):
        CriterionSpec(search_interval=(-0.5, 1.0)).interval_for(zeros)


def test_shipped_recovery_dataset_matches_generator():
    shipped = load_fixture_recovery()
    regenerated = make_recovery_dataset()
    np.testing.assert_allclose(shipped.values, regenerated.values, rtol=0, atol=1e-12)
    assert shipped.n == 500 and shipped.D == 3


def test_select_alpha_recovery_and_consistency():
    ds = load_fixture_recovery()
    res = select_alpha(ds)
    assert 0.4 <= res.alpha_hat <= 0.6
    assert abs(res.alpha_hat - RECOVERY_ALPHA) < 0.1
    assert not res.boundary_maximum
    assert res.loglik_hat >= res.loglik.max()
    assert np.all(np.isfinite(res.loglik))
    assert len(res.grid) == 41
    assert res.loglik_hat == pytest.approx(profile_loglik_z(ds, res.alpha_hat), abs=1e-9)
    mu0, mua, mu1 = res.means
    assert mu0 is not None and mua.D == 3 and mu1.D == 3
    again = select_alpha(ds)
    assert again.alpha_hat == res.alpha_hat
    assert again.escape_fraction == res.escape_fraction


def test_select_alpha_refinement_is_local_maximum():
    ds = load_fixture_recovery()
    res = select_alpha(ds)
    for da in (-2e-4, 2e-4):
        assert profile_loglik_z(ds, res.alpha_hat + da) <= res.loglik_hat + 1e-9


def test_select_alpha_boundary_flag():
    ds = load_fixture_recovery()
    res = select_alpha(ds, CriterionSpec(search_interval=(0.9, 1.0)))
    assert res.boundary_maximum
    assert res.alpha_hat == 0.9


def test_select_alpha_with_zeros_uses_positive_interval(rng):
    X = random_positive(rng, 3, size=60, concentration=3.0)
    X[0] = [0.5, 0.5, 0.0]
    ds = CompositionDataset(X)
    res = select_alpha(ds, n_draws=500)
    assert res.interval == (0.01, 1.0)
    assert 0.01 <= res.alpha_hat <= 1.0
    assert res.mean_lra is None
    assert res.include_jacobian is False


def test_escape_fraction(table1):
    f1 = simplex_escape_fraction(table1, 0.9, n_draws=2000, seed=3)
    assert 0.0 <= f1 <= 1.0
    assert f1 == simplex_escape_fraction(table1, 0.9, n_draws=2000, seed=3)
    assert simplex_escape_fraction(table1, 0.0) == 0.0


def test_select_alpha_grid_order_irrelevant():
    ds = load_fixture_recovery()
    grid = np.linspace(-1, 1, 41)
    forward = [profile_loglik_z(ds, a) for a in grid]
    backward = [profile_loglik_z(ds, a) for a in grid[::-1]][::-1]
    assert forward == backward
