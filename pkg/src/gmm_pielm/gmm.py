"""
Weighted expectation-maximization for a 1D Gaussian mixture.

Each data point ``x_i`` carries a non-negative weight ``w_i``; EM maximizes
``sum_i w_i log p(x_i)``. With all weights equal this is ordinary EM.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .exceptions import NumericalError

logger = logging.getLogger(__name__)

LOG_2PI = np.log(2.0 * np.pi)


@dataclass(frozen=True, eq=False)
class GmmParams:
    mixing: np.ndarray
    means: np.ndarray
    variances: np.ndarray

    def __post_init__(self):
        pi = np.array(self.mixing, dtype=float).ravel()
        mu = np.array(self.means, dtype=float).ravel()
        var = np.array(self.variances, dtype=float).ravel()
        if not (pi.size == mu.size == var.size) or pi.size == 0:
            raise ValueError("mixing, means and variances must have the same nonzero length")
        if np.any(pi < 0) or abs(pi.sum() - 1.0) > 1e-12:
            raise ValueError("mixing weights must be non-negative and sum to 1")
        if np.any(var <= 0) or not np.all(np.isfinite(mu)):
            raise ValueError("variances must be positive and means finite")
        for a in (pi, mu, var):
            a.flags.writeable = False
        object.__setattr__(self, "mixing", pi)
        object.__setattr__(self, "means", mu)
        object.__setattr__(self, "variances", var)

    @property
    def k(self) -> int:
        return self.mixing.size

    def to_dict(self):
        return {"mixing": self.mixing.tolist(), "means": self.means.tolist(),
                "variances": self.variances.tolist()}


@dataclass(frozen=True, eq=False)
class WeightedDataset:
    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.points, dtype=float).ravel()
        w = np.asarray(self.weights, dtype=float).ravel()
        if x.shape != w.shape:
            raise ValueError("points and weights must have the same length")
        if np.any(w < 0) or not np.all(np.isfinite(w)):
            raise ValueError("weights must be finite and non-negative")
        if not w.sum() > 0:
            raise ValueError("total weight must be positive")
        object.__setattr__(self, "points", x)
        object.__setattr__(self, "weights", w)

    @property
    def total_weight(self) -> float:
        return float(self.weights.sum())


@dataclass
class GmmFit:
    params: GmmParams
    trace: list = field(default_factory=list)  # L / sum(w) per E-step
    n_iter: int = 0
    converged: bool = False


def _log_joint(x, params):
    """``log pi_k + log N(x_i | mu_k, var_k)``, shape (n, K)."""
    with np.errstate(divide="ignore"):
        log_pi = np.log(params.mixing)
    d2 = (x[:, None] - params.means) ** 2
    return log_pi - 0.5 * (LOG_2PI + np.log(params.variances) + d2 / params.variances)


def _responsibilities(data, params):
    lj = _log_joint(data.points, params)
    top = lj.max(axis=1, keepdims=True)
    if not np.all(np.isfinite(top)):
        raise NumericalError("every mixture component has zero density at some point")
    log_norm = top[:, 0] + np.log(np.exp(lj - top).sum(axis=1))
    return np.exp(lj - log_norm[:, None]), log_norm


def e_step(data: WeightedDataset, params: GmmParams):
    """Posterior component probabilities, shape ``(n_points, K)``; rows sum to 1."""
    return _responsibilities(data, params)[0]


def weighted_log_likelihood(data: WeightedDataset, params: GmmParams) -> float:
    return float(data.weights @ _responsibilities(data, params)[1])


def m_step(data: WeightedDataset, responsibilities, var_floor=1e-12, domain=None) -> GmmParams:
    """Weighted moment updates.

    ``N_k = sum w q``, ``mu_k = sum w q x / N_k``,
    ``var_k = sum w q (x - mu_k)^2 / N_k`` (floored), ``pi_k = N_k / sum w``.
    A component that receives no weight at all is re-seeded at the
    heaviest point with variance ``(|domain| / K)^2``.
    """
    x, w = data.points, data.weights
    q = np.asarray(responsibilities, dtype=float)
    if q.shape[0] != x.size:
        raise ValueError("responsibilities do not match the dataset")
    k = q.shape[1]
    wq = w[:, None] * q
    nk = wq.sum(axis=0)
    total = w.sum()

    empty = nk <= 0.0
    safe = np.where(empty, 1.0, nk)
    mu = (wq * x[:, None]).sum(axis=0) / safe
    var = (wq * (x[:, None] - mu) ** 2).sum(axis=0) / safe
    var = np.maximum(var, var_floor)
    pi = nk / total

    if np.any(empty):
        lo, hi = domain if domain is not None else (x.min(), x.max())
        reset_var = max(((hi - lo) / k) ** 2, var_floor)
        mu[empty] = x[np.argmax(w)]
        var[empty] = reset_var
        pi[empty] = 1.0 / k
        logger.debug("re-seeded %d empty mixture component(s)", int(empty.sum()))
    pi = pi / pi.sum()
    return GmmParams(pi, mu, var)


def initial_params(data: WeightedDataset, k, domain=None) -> GmmParams:
    """Means at evenly spaced quantiles of the cumulative weight, equal mixing,
    variances ``(|domain| / k)^2``."""
    order = np.argsort(data.points, kind="stable")
    x, w = data.points[order], data.weights[order]
    cdf = np.cumsum(w) / w.sum()
    levels = (np.arange(k) + 0.5) / k
    idx = np.minimum(np.searchsorted(cdf, levels, side="left"), x.size - 1)
    lo, hi = domain if domain is not None else (x[0], x[-1])
    span = (hi - lo) if hi > lo else 1.0
    return GmmParams(np.full(k, 1.0 / k), x[idx], np.full(k, (span / k) ** 2))


def fit(data: WeightedDataset, k, max_iters=200, tol=1e-6, rng=None, *,
        var_floor=1e-12, domain=None, init: GmmParams | None = None) -> GmmFit:
    """Run weighted EM until ``L / sum(w)`` improves by less than ``tol``.

    ``rng`` is accepted for interface symmetry; the default initialization
    is deterministic. Pass ``init`` to start from given parameters and
    ``tol=-inf`` to run exactly ``max_iters`` M-steps.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    n_support = int(np.count_nonzero(data.weights))
    if k > n_support:
        raise ValueError(f"k={k} exceeds the {n_support} points with positive weight")

    params = init if init is not None else initial_params(data, k, domain)
    total = data.total_weight
    result = GmmFit(params)
    prev = -np.inf
    for it in range(max_iters + 1):
        q, log_norm = _responsibilities(data, params)
        ll = float(data.weights @ log_norm) / total
        result.trace.append(ll)
        if ll - prev < tol:
            result.converged = True
            break
        if it == max_iters:
            break
        prev = ll
        params = m_step(data, q, var_floor=var_floor, domain=domain)
        result.n_iter = it + 1
    result.params = params
    return result


def sample(params: GmmParams, n, domain, rng, max_retries=100):
    """Draw ``n`` points from the mixture restricted to the closed ``domain``.

    Out-of-domain draws are redrawn from the same component up to
    ``max_retries`` times; anything still outside is clamped.
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    lo, hi = domain
    if n == 0:
        return np.empty(0)
    comp = rng.choice(params.k, size=n, p=params.mixing)
    sd = np.sqrt(params.variances)
    z = rng.normal(params.means[comp], sd[comp])
    for _ in range(max_retries):
        bad = np.flatnonzero((z < lo) | (z > hi))
        if bad.size == 0:
            break
        z[bad] = rng.normal(params.means[comp[bad]], sd[comp[bad]])
    return np.clip(z, lo, hi)
