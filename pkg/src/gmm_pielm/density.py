"""Residual energy density: ``p(x) = log(1 + |R(x)|) / Z`` on a fixed grid."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateDensityError


@dataclass(frozen=True, eq=False)
class ResidualField:
    grid: np.ndarray
    weights: np.ndarray
    z: float

    @property
    def degenerate(self) -> bool:
        """True when every weight is zero, i.e. the residual vanished."""
        return not self.z > 0

    def density(self):
        if self.degenerate:
            raise DegenerateDensityError("residual field has zero total weight")
        return self.weights / self.z

    def density_at(self, i):
        if self.degenerate:
            raise DegenerateDensityError("residual field has zero total weight")
        return float(self.weights[i] / self.z)


def build(grid, residuals) -> ResidualField:
    """Log-compress residual magnitudes and integrate them by the trapezoid rule.

    An all-zero residual yields a field with ``z == 0`` and ``degenerate``
    set; it is not an error here.
    """
    x = np.asarray(grid, dtype=float).ravel()
    r = np.asarray(residuals, dtype=float).ravel()
    if x.shape != r.shape:
        raise ValueError(f"grid has {x.size} points but {r.size} residuals")
    if x.size < 2:
        raise ValueError("need at least two grid points")
    if np.any(np.diff(x) <= 0):
        raise ValueError("grid must be strictly increasing")
    if not np.all(np.isfinite(r)):
        raise ValueError("residuals must be finite")
    w = np.log1p(np.abs(r))
    z = float(np.trapezoid(w, x))
    return ResidualField(x, w, z)
