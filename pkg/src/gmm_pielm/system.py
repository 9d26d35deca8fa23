"""
Collocation system ``H beta = T`` for a Gaussian RBF expansion.

Interior rows hold ``L[phi_j](x_i)``; two penalty-weighted Dirichlet rows
(one per endpoint) follow. The system is solved by a truncated SVD rather
than the normal equations, which would square the condition number.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import NumericalError, RankDeficientError
from .problems import ProblemSpec, apply_operator
from .rbf import RbfBasis


@dataclass(frozen=True, eq=False)
class LinearSystem:
    h: np.ndarray
    t: np.ndarray
    n_interior: int
    n_boundary: int
    basis: RbfBasis | None = None

    @property
    def shape(self):
        return self.h.shape


@dataclass(frozen=True, eq=False)
class Solution:
    beta: np.ndarray
    basis: RbfBasis | None
    lstsq_residual_norm: float
    condition_number: float
    rank: int
    singular_values: np.ndarray


def assemble(spec: ProblemSpec, basis: RbfBasis, interior_pts) -> LinearSystem:
    x = np.asarray(interior_pts, dtype=float).ravel()
    if x.size == 0:
        raise ValueError("no interior collocation points")
    if np.any(x <= spec.domain_lo) or np.any(x >= spec.domain_hi):
        raise ValueError("interior collocation points must lie strictly inside the domain")
    if x.size + 2 < len(basis):
        raise ValueError(
            f"{x.size + 2} rows cannot determine {len(basis)} output weights"
        )

    phi, d1, d2 = basis.all_derivatives(x)
    interior = apply_operator(spec, phi, d1, d2)
    lam = spec.bc_penalty
    boundary = lam * basis.all_derivatives(np.array(spec.domain))[0]

    h = np.vstack([interior, boundary])
    t = np.concatenate([np.asarray(spec.source(x), dtype=float) * np.ones_like(x),
                        lam * np.asarray(spec.bc_values, dtype=float)])
    if not (np.all(np.isfinite(h)) and np.all(np.isfinite(t))):
        raise NumericalError("collocation system has non-finite entries")
    return LinearSystem(h, t, x.size, 2, basis)


def solve_least_squares(system: LinearSystem, rcond=None) -> Solution:
    """Minimum-norm least-squares weights via truncated SVD.

    Singular values below ``rcond * sigma_max`` are discarded; the default
    ``rcond`` is machine epsilon times the larger matrix dimension. The
    reported condition number is ``sigma_max / sigma_min`` over the
    retained values.
    """
    h, t = np.asarray(system.h, dtype=float), np.asarray(system.t, dtype=float)
    if not (np.all(np.isfinite(h)) and np.all(np.isfinite(t))):
        raise NumericalError("collocation system has non-finite entries")
    if rcond is None:
        rcond = np.finfo(float).eps * max(h.shape)

    try:
        u, sv, vt = np.linalg.svd(h, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD failed: {exc}") from exc
    if sv.size == 0 or sv[0] == 0.0:
        raise RankDeficientError("collocation matrix is identically zero")

    keep = sv > rcond * sv[0]
    rank = int(keep.sum())
    coeff = (u[:, keep].T @ t) / sv[keep]
    beta = vt[keep].T @ coeff
    if not np.all(np.isfinite(beta)):
        raise NumericalError("least-squares weights are not finite")

    return Solution(
        beta=beta,
        basis=system.basis,
        lstsq_residual_norm=float(np.linalg.norm(h @ beta - t)),
        condition_number=float(sv[0] / sv[keep][-1]),
        rank=rank,
        singular_values=sv,
    )


def predict(solution: Solution, xs):
    """Network output ``sum_j beta_j phi_j(x)``."""
    phi = solution.basis.all_derivatives(xs)[0]
    out = phi @ solution.beta
    return float(out[0]) if np.ndim(xs) == 0 else out


def residual_field(solution: Solution, spec: ProblemSpec, grid):
    """PDE residual ``L[u_hat] - f`` at ``grid`` using analytic derivatives."""
    x = np.atleast_1d(np.asarray(grid, dtype=float))
    phi, d1, d2 = solution.basis.all_derivatives(x)
    b = solution.beta
    r = apply_operator(spec, phi @ b, d1 @ b, d2 @ b) - spec.source(x)
    return float(r[0]) if np.ndim(grid) == 0 else r
