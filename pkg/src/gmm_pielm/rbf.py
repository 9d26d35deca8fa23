"""Gaussian RBF hidden layer: evaluation, analytic derivatives, width rules."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree


@dataclass(frozen=True, eq=False)
class RbfBasis:
    """N Gaussian units ``phi_j(x) = exp(-(x - c_j)^2 / (2 s_j^2))``.

    Evaluation methods take a scalar or 1D array ``x``. With ``j=None`` they
    return every unit (shape ``(len(x), N)``, or ``(N,)`` for scalar ``x``);
    with an index ``j`` they return that unit only.
    """

    centers: np.ndarray
    widths: np.ndarray

    def __post_init__(self):
        c = np.array(self.centers, dtype=float).ravel()
        s = np.array(self.widths, dtype=float).ravel()
        if c.size == 0:
            raise ValueError("basis needs at least one unit")
        if c.shape != s.shape:
            raise ValueError(f"{c.size} centers but {s.size} widths")
        if not np.all(np.isfinite(c)) or not np.all(np.isfinite(s)):
            raise ValueError("centers and widths must be finite")
        if np.any(s <= 0):
            raise ValueError("widths must be strictly positive")
        c.flags.writeable = False
        s.flags.writeable = False
        object.__setattr__(self, "centers", c)
        object.__setattr__(self, "widths", s)

    def __len__(self):
        return self.centers.size

    def _parts(self, x, j):
        if j is None:
            c, s = self.centers, self.widths
        else:
            n = len(self)
            if not -n <= j < n or isinstance(j, bool):
                raise IndexError(f"unit index {j} out of range for {n} units")
            c, s = self.centers[j], self.widths[j]
        x = np.asarray(x, dtype=float)
        d = x[..., None] - c if j is None else x - c
        return d, s, np.exp(-0.5 * (d / s) ** 2)

    @staticmethod
    def _out(v):
        return float(v) if np.ndim(v) == 0 else v

    def evaluate(self, x, j=None):
        _, _, phi = self._parts(x, j)
        return self._out(phi)

    def derivative(self, x, j=None):
        d, s, phi = self._parts(x, j)
        return self._out(-d / s**2 * phi)

    def second_derivative(self, x, j=None):
        d, s, phi = self._parts(x, j)
        return self._out((d**2 / s**4 - 1.0 / s**2) * phi)

    def all_derivatives(self, x):
        """``(phi, phi', phi'')`` matrices at the points ``x`` in one pass."""
        d, s, phi = self._parts(np.atleast_1d(x), None)
        inv2 = 1.0 / s**2
        return phi, -d * inv2 * phi, (d**2 * inv2**2 - inv2) * phi


def uniform_init(n, domain, overlap, rng) -> RbfBasis:
    """Uniformly drawn centers with the constant width ``|domain| / n * overlap``."""
    if n < 1:
        raise ValueError(f"need at least one unit, got n={n}")
    if not overlap > 0:
        raise ValueError(f"overlap must be positive, got {overlap}")
    lo, hi = domain
    centers = rng.uniform(lo, hi, size=n)
    return RbfBasis(centers, np.full(n, (hi - lo) / n * overlap))


def knn_widths(centers, k=2, beta=1.0, eps=0.0):
    """Widths ``beta * dist_k + eps`` from the k-th nearest *other* center.

    Coincident centers count as neighbours at distance zero.
    """
    c = np.asarray(centers, dtype=float).ravel()
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if c.size <= k:
        raise ValueError(f"need more than k={k} centers, got {c.size}")
    if not beta > 0 or eps < 0:
        raise ValueError("beta must be positive and eps non-negative")
    # the query point itself comes back at distance 0 among the k+1 results
    dist, _ = cKDTree(c[:, None]).query(c[:, None], k=k + 1)
    return beta * dist[:, k] + eps
