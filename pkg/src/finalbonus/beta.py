"""Beta prior machinery shared by every solver.

The audience's belief about Alice's per-round win probability is
``Be(alpha, beta)``.  After ``i`` rounds with ``j`` Alice wins the posterior is
``Be(alpha + j, beta + i - j)``, so everything downstream is a function of the
state ``(i, j)``.

Gamma ratios are kept in log space and only exponentiated at the end: the
near-certain prior uses ``alpha + beta`` of order ``1e6`` where ``Gamma``
itself overflows immediately.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "PriorParams",
    "GammaTables",
    "build_gamma_tables",
    "posterior_mean",
    "state_prob",
    "q_weight",
    "harmonic_shifted",
    "beta_density",
    "log_beta_fn",
]

_LOG2 = math.log(2.0)


@dataclass(frozen=True)
class PriorParams:
    """Shape parameters of the Beta prior over Alice's round-win probability."""

    alpha: float
    beta: float

    def __post_init__(self):
        for name in ("alpha", "beta"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v!r}")
            if v < 1.0:
                raise DomainError(f"{name} must be >= 1, got {v!r}")
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))

    @classmethod
    def certain(cls, p: float, lam: float = 1e6) -> "PriorParams":
        """Near-certain prior ``Be(lam * p, lam * (1 - p))``."""
        if not 0.0 < p < 1.0:
            raise DomainError(f"p must lie in (0, 1), got {p!r}")
        return cls(lam * p, lam * (1.0 - p))

    @property
    def total(self) -> float:
        return self.alpha + self.beta

    @property
    def symmetric(self) -> bool:
        return self.alpha == self.beta

    def swapped(self) -> "PriorParams":
        return PriorParams(self.beta, self.alpha)


@dataclass(frozen=True, eq=False)
class GammaTables:
    """Log-Gamma ratio tables for ``y = 0..n_max``.

    ``log_factorial[y] = log Gamma(1 + y)``,
    ``log_rising_alpha[y] = log Gamma(alpha + y) - log Gamma(alpha)``,
    ``log_rising_beta[y] = log Gamma(beta + y) - log Gamma(beta)`` and
    ``log_falling_ab[y] = log Gamma(alpha + beta) - log Gamma(alpha + beta + y)``.
    Arrays are read-only.
    """

    prior: PriorParams
    n_max: int
    log_factorial: np.ndarray
    log_rising_alpha: np.ndarray
    log_rising_beta: np.ndarray
    log_falling_ab: np.ndarray


def _log_rising(start: float, n_max: int) -> np.ndarray:
    # Gamma(z + 1) = z Gamma(z), accumulated in log form
    out = np.empty(n_max + 1)
    out[0] = 0.0
    np.cumsum(np.log(start + np.arange(n_max, dtype=float)), out=out[1:])
    return out


def build_gamma_tables(prior: PriorParams, n_max: int) -> GammaTables:
    """Precompute the four log-Gamma ratio arrays in O(n_max)."""
    if n_max < 0:
        raise DomainError(f"n_max must be non-negative, got {n_max}")
    lf = _log_rising(1.0, n_max)
    ra = _log_rising(prior.alpha, n_max)
    rb = ra if prior.symmetric else _log_rising(prior.beta, n_max)
    fab = -_log_rising(prior.total, n_max)
    for arr in (lf, ra, rb, fab):
        arr.setflags(write=False)
    return GammaTables(prior, n_max, lf, ra, rb, fab)


def _check_state(i: int, j: int, limit: int | None = None) -> None:
    if i < 0 or j < 0 or j > i:
        raise DomainError(f"state (i={i}, j={j}) requires 0 <= j <= i")
    if limit is not None and i > limit:
        raise DomainError(f"round count {i} exceeds table size {limit}")


def posterior_mean(prior: PriorParams, i: int, j: int) -> float:
    """Posterior mean of Alice's win probability after ``j`` wins in ``i`` rounds."""
    _check_state(i, j)
    return (j + prior.alpha) / (i + prior.total)


def _log_binom(t: GammaTables, i: int, j: int) -> float:
    return t.log_factorial[i] - (t.log_factorial[j] + t.log_factorial[i - j])


def log_state_prob(tables: GammaTables, i: int, j: int) -> float:
    _check_state(i, j, tables.n_max)
    return (
        _log_binom(tables, i, j)
        + (tables.log_rising_alpha[j] + tables.log_rising_beta[i - j])
        + tables.log_falling_ab[i]
    )


def state_prob(prior: PriorParams, tables: GammaTables, i: int, j: int) -> float:
    """Beta-binomial probability that Alice has won ``j`` of the first ``i`` rounds."""
    if tables.prior != prior:
        raise DomainError("tables were built for a different prior")
    return math.exp(log_state_prob(tables, i, j))


def log_q_weight(tables: GammaTables, i: int, j: int) -> float:
    _check_state(i, j, tables.n_max - 1)
    return (
        _LOG2
        - math.log(tables.prior.total + i)
        + _log_binom(tables, i, j)
        + (tables.log_rising_alpha[j + 1] + tables.log_rising_beta[i - j + 1])
        + tables.log_falling_ab[i + 1]
    )


def q_weight(prior: PriorParams, tables: GammaTables, i: int, j: int) -> float:
    """``Pr[S_i = j] * 2 q (1 - q)`` with ``q`` the posterior mean at ``(i, j)``.

    Requires ``i + 1 <= tables.n_max``.
    """
    if tables.prior != prior:
        raise DomainError("tables were built for a different prior")
    return math.exp(log_q_weight(tables, i, j))


def harmonic_shifted(prior: PriorParams, n: int) -> float:
    """``sum_{i=1}^{n-1} 1 / (i + alpha + beta - 1)``."""
    if n < 2:
        raise DomainError(f"harmonic sum needs n >= 2, got {n}")
    return _harmonic(prior.total, n)


@functools.lru_cache(maxsize=512)
def _harmonic(total: float, n: int) -> float:
    # O(n); cached because the asymptotic code asks for the same sum repeatedly
    k = np.arange(1, n, dtype=float)
    return float(np.sum(1.0 / (k + (total - 1.0))))


def log_beta_fn(a: float, b: float) -> float:
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


def beta_density(prior: PriorParams, theta: float) -> float:
    """Density of ``Be(alpha, beta)`` at ``theta``."""
    a, b = prior.alpha, prior.beta
    if not 0.0 <= theta <= 1.0:
        raise DomainError(f"theta must lie in [0, 1], got {theta!r}")
    if (theta == 0.0 and a < 1.0) or (theta == 1.0 and b < 1.0):
        raise DomainError("density is unbounded at this endpoint")
    log_d = -log_beta_fn(a, b)
    for expo, base in ((a - 1.0, theta), (b - 1.0, 1.0 - theta)):
        if expo == 0.0:
            continue
        if base == 0.0:
            return 0.0
        log_d += expo * math.log(base)
    return math.exp(log_d)
