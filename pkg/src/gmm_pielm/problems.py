"""
Benchmark boundary-value problems on a 1D interval.

Two stiff model problems are provided:

* ``SINGLE``: convection-diffusion ``-nu u'' + u' = 0`` with ``u(lo) = 0``,
  ``u(hi) = 1``. The solution has an outflow layer of width O(nu) at ``hi``.
* ``DOUBLE``: reaction-diffusion ``-nu u'' + u = 0`` with ``u(lo) = u(hi) = 1``.
  The solution has layers of width O(sqrt(nu)) at both ends.

The operator is always written as ``L[u] = a2 u'' + a1 u' + a0 u`` and the
boundary operator is Dirichlet.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable

import numpy as np


class ProblemKind(str, enum.Enum):
    SINGLE = "single"
    DOUBLE = "double"


_DEFAULT_BC = {
    ProblemKind.SINGLE: (0.0, 1.0),
    ProblemKind.DOUBLE: (1.0, 1.0),
}


def zero_source(x):
    return np.zeros_like(np.asarray(x, dtype=float))


@dataclass(frozen=True)
class ProblemSpec:
    """A stationary 1D Dirichlet problem ``L[u] = f`` on ``(domain_lo, domain_hi)``.

    Use :func:`single_layer` / :func:`double_layer` rather than building one
    by hand; they fill in the boundary data that goes with each kind.
    """

    kind: ProblemKind
    nu: float
    domain_lo: float = 0.0
    domain_hi: float = 1.0
    bc_values: tuple[float, float] | None = None
    bc_penalty: float = 1.0
    source: Callable = field(default=zero_source, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "kind", ProblemKind(self.kind))
        if not self.domain_lo < self.domain_hi:
            raise ValueError(f"empty domain ({self.domain_lo}, {self.domain_hi})")
        if not self.nu > 0:
            raise ValueError(f"nu must be positive, got {self.nu}")
        if not self.bc_penalty > 0:
            raise ValueError(f"bc_penalty must be positive, got {self.bc_penalty}")
        expected = _DEFAULT_BC[self.kind]
        if self.bc_values is None:
            object.__setattr__(self, "bc_values", expected)
        else:
            bc = tuple(float(v) for v in self.bc_values)
            if bc != expected:
                raise ValueError(
                    f"{self.kind.value} problem requires bc_values={expected}, got {bc}"
                )
            object.__setattr__(self, "bc_values", bc)

    @property
    def length(self) -> float:
        return self.domain_hi - self.domain_lo

    @property
    def domain(self) -> tuple[float, float]:
        return (self.domain_lo, self.domain_hi)


def single_layer(nu, domain=(0.0, 1.0), bc_penalty=1.0) -> ProblemSpec:
    return ProblemSpec(ProblemKind.SINGLE, nu, domain[0], domain[1], bc_penalty=bc_penalty)


def double_layer(nu, domain=(0.0, 1.0), bc_penalty=1.0) -> ProblemSpec:
    return ProblemSpec(ProblemKind.DOUBLE, nu, domain[0], domain[1], bc_penalty=bc_penalty)


def operator_coefficients(spec: ProblemSpec) -> tuple[float, float, float]:
    """Return ``(a2, a1, a0)`` such that ``L[u] = a2 u'' + a1 u' + a0 u``."""
    if spec.kind is ProblemKind.SINGLE:
        return (-spec.nu, 1.0, 0.0)
    return (-spec.nu, 0.0, 1.0)


def apply_operator(spec: ProblemSpec, u, du, d2u):
    a2, a1, a0 = operator_coefficients(spec)
    return a2 * d2u + a1 * du + a0 * u


def exact_solution(spec: ProblemSpec, x):
    """Closed-form solution, evaluated without forming ``exp(L/nu)``.

    Accepts a scalar or an array; returns the same shape. Raises
    ``ValueError`` if any point lies outside the closed domain.
    """
    xa = np.asarray(x, dtype=float)
    if np.any(xa < spec.domain_lo) or np.any(xa > spec.domain_hi) or np.any(np.isnan(xa)):
        raise ValueError("exact_solution evaluated outside the closed domain")
    g_lo, g_hi = spec.bc_values
    L = spec.length
    t = xa - spec.domain_lo  # distance from the left end
    r = spec.domain_hi - xa  # distance from the right end

    if spec.kind is ProblemKind.SINGLE:
        # (e^{t/nu} - 1) / (e^{L/nu} - 1) = e^{-r/nu} (1 - e^{-t/nu}) / (1 - e^{-L/nu})
        nu = spec.nu
        ramp = np.exp(-r / nu) * (-np.expm1(-t / nu)) / (-np.expm1(-L / nu))
        u = g_lo + (g_hi - g_lo) * ramp
    else:
        # g_lo sinh(r/s)/sinh(L/s) + g_hi sinh(t/s)/sinh(L/s), s = sqrt(nu)
        s = np.sqrt(spec.nu)
        denom = -np.expm1(-2.0 * L / s)
        left = (np.exp(-t / s) - np.exp(-(t + 2.0 * r) / s)) / denom
        right = (np.exp(-r / s) - np.exp(-(r + 2.0 * t) / s)) / denom
        u = g_lo * left + g_hi * right
    if np.ndim(x) == 0:
        return float(u)
    return u
