import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gmm_pielm.rbf import RbfBasis, knn_widths, uniform_init


def test_unit_values():
    b = RbfBasis([0.0], [1.0])
    assert b.evaluate(0.0, 0) == 1.0
    assert b.evaluate(1.0, 0) == pytest.approx(np.exp(-0.5))
    assert b.derivative(0.0, 0) == 0.0
    assert b.second_derivative(0.0, 0) == -1.0


def test_shapes():
    b = RbfBasis(np.linspace(0, 1, 4), np.full(4, 0.3))
    assert b.evaluate(np.linspace(0, 1, 7)).shape == (7, 4)
    assert b.evaluate(0.2).shape == (4,)
    phi, d1, d2 = b.all_derivatives(np.linspace(0, 1, 5))
    assert phi.shape == d1.shape == d2.shape == (5, 4)
    np.testing.assert_array_equal(phi[:, 2], b.evaluate(np.linspace(0, 1, 5), 2))


@pytest.mark.parametrize("c,s", [([], []), ([0.0, 1.0], [1.0]), ([0.0], [0.0]),
                                 ([0.0], [-1.0]), ([np.nan], [1.0])])
def test_invalid_basis(c, s):
    with pytest.raises(ValueError):
        RbfBasis(c, s)


def test_index_out_of_range():
    b = RbfBasis([0.0, 1.0], [1.0, 1.0])
    with pytest.raises(IndexError):
        b.evaluate(0.0, 2)


def test_derivatives_against_finite_differences():
    rng = np.random.default_rng(7)
    for _ in range(200):
        c, s = rng.uniform(-1, 1), 10 ** rng.uniform(-3, 0)
        x = c + s * rng.uniform(-3, 3)
        b = RbfBasis([c], [s])
        h = 1e-4 * s
        fd1 = (b.evaluate(x + h, 0) - b.evaluate(x - h, 0)) / (2 * h)
        fd2 = (b.evaluate(x + h, 0) - 2 * b.evaluate(x, 0) + b.evaluate(x - h, 0)) / h**2
        # compare relative to the natural derivative scales 1/s and 1/s^2
        assert abs(fd1 - b.derivative(x, 0)) * s < 1e-6
        assert abs(fd2 - b.second_derivative(x, 0)) * s**2 < 1e-4


def test_uniform_init_widths():
    b = uniform_init(300, (0, 1), 2.5, np.random.default_rng(0))
    np.testing.assert_allclose(b.widths, 2.5 / 300)
    assert len(b) == 300 and 0 <= b.centers.min() and b.centers.max() <= 1
    assert uniform_init(1, (0, 1), 1.0, np.random.default_rng(0)).widths[0] == 1.0
    with pytest.raises(ValueError):
        uniform_init(0, (0, 1), 1.0, np.random.default_rng(0))


def test_knn_hand_examples():
    np.testing.assert_allclose(knn_widths([0, 0.5, 1.0], k=2, beta=1, eps=0), [1.0, 0.5, 1.0])
    np.testing.assert_allclose(knn_widths([0, 0.5, 1.0], k=1, beta=2, eps=0.1), [1.1, 1.1, 1.1])


def test_knn_coincident_centers_fall_back_to_eps():
    w = knn_widths([0.3, 0.3, 0.3, 0.9], k=2, beta=1.5, eps=1e-4)
    np.testing.assert_allclose(w[:3], 1e-4)


def test_knn_clustered_positive():
    rng = np.random.default_rng(3)
    c = np.concatenate([rng.normal(0.999, 1e-4, 450), rng.uniform(0, 1, 50)])
    assert np.all(knn_widths(c, k=2, beta=1.5, eps=1e-4) > 1e-4 - 1e-18)


def test_knn_too_few_centers():
    with pytest.raises(ValueError):
        knn_widths([0.0, 1.0], k=2)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(0, 1), min_size=4, max_size=40), st.randoms())
def test_knn_permutation_equivariant(cs, r):
    c = np.asarray(cs)
    perm = np.arange(c.size)
    r.shuffle(perm)
    np.testing.assert_allclose(knn_widths(c[perm], 2, 1.1, 1e-4), knn_widths(c, 2, 1.1, 1e-4)[perm])


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=1, max_size=10), st.floats(1e-2, 2), st.floats(-5, 5))
def test_basis_bounded(cs, s, x):
    b = RbfBasis(cs, np.full(len(cs), s))
    v = b.evaluate(x)
    assert np.all((v >= 0) & (v <= 1))
