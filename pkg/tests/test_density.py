import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gmm_pielm import density
from gmm_pielm.exceptions import DegenerateDensityError


def test_constant_weight_gives_unit_density():
    x = np.linspace(0, 1, 101)
    f = density.build(x, np.full(101, np.e - 1))
    np.testing.assert_allclose(f.weights, 1.0, rtol=1e-15)
    assert f.z == pytest.approx(1.0, rel=1e-14)
    np.testing.assert_allclose(f.density(), 1.0, rtol=1e-14)


def test_two_point_trapezoid():
    f = density.build([0.0, 1.0], [0.0, np.e - 1])
    assert f.z == pytest.approx(0.5, rel=1e-15)
    assert f.density_at(1) == pytest.approx(2.0)


def test_sign_of_residual_ignored():
    x = np.linspace(0, 1, 5)
    r = np.array([1.0, -2.0, 3.0, -4.0, 0.5])
    np.testing.assert_array_equal(density.build(x, r).weights, density.build(x, np.abs(r)).weights)


def test_tiny_residuals_are_accurate():
    f = density.build([0.0, 1.0], [1e-20, 1e-20])
    assert f.weights[0] == 1e-20


def test_doubling_a_weight_doubles_its_density_ratio():
    x = np.linspace(0, 1, 11)
    r = np.full(11, 1.0)
    r2 = r.copy()
    r2[4] = np.expm1(2 * np.log1p(1.0))
    a, b = density.build(x, r), density.build(x, r2)
    assert b.density_at(4) / b.density_at(7) == pytest.approx(2 * a.density_at(4) / a.density_at(7))


def test_degenerate_field():
    f = density.build(np.linspace(0, 1, 4), np.zeros(4))
    assert f.degenerate
    with pytest.raises(DegenerateDensityError):
        f.density()


@pytest.mark.parametrize("grid,res", [([0.0], [1.0]), ([0.0, 1.0], [1.0]),
                                      ([1.0, 0.0], [1.0, 1.0]), ([0.0, 1.0], [np.inf, 1.0])])
def test_invalid_input(grid, res):
    with pytest.raises(ValueError):
        density.build(grid, res)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 400), st.integers(0, 2**31 - 1))
def test_density_integrates_to_one(n, seed):
    rng = np.random.default_rng(seed)
    x = np.sort(rng.uniform(0, 1, n))
    if np.any(np.diff(x) <= 0):
        return
    r = rng.lognormal(0, 4, n) * rng.choice([-1, 1], n)
    f = density.build(x, r)
    assert np.trapezoid(f.density(), x) == pytest.approx(1.0, abs=1e-12)
    assert np.all(f.density() >= 0)
