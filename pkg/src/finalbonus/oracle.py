"""Exact ground truth by backward induction.

Nothing here uses the closed forms from :mod:`finalbonus.solvers`; beliefs come
from the martingale recursion on posterior means, state probabilities from the
forward recursion, and per-round surprise straight from its definition
``E|B_r - B_{r-1}|``.  Cost is O(n^2) per bonus, O(n^3) for a full search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .beta import PriorParams, posterior_mean
from .errors import DegenerateInputError, DomainError
from .solution import BonusSolution, MatchConfig, Method, admissible_bonuses

__all__ = [
    "BeliefTable",
    "SurpriseBreakdown",
    "SurpriseCurve",
    "build_belief_table",
    "expected_surprise_exact",
    "surprise_curve",
    "brute_force_optimal",
    "per_round_ratio",
]


@dataclass(frozen=True, eq=False)
class BeliefTable:
    """``b[i, j] = Pr[Alice wins | j wins after i rounds]`` for ``0 <= j <= i < n``."""

    n: int
    x: int
    b: np.ndarray

    def at(self, i: int, j: int) -> float:
        if not 0 <= j <= i < self.n:
            raise DomainError(f"state (i={i}, j={j}) outside the table")
        return float(self.b[i, j])

    def row(self, i: int) -> np.ndarray:
        return self.b[i, : i + 1]

    def final_belief(self, j: int, won_last: bool) -> float:
        """``B_n`` after ``j`` wins in the first ``n - 1`` rounds."""
        alice = j + (self.x if won_last else 0)
        bob = (self.n - 1 - j) + (0 if won_last else self.x)
        return 1.0 if alice > bob else 0.0


@dataclass(frozen=True, eq=False)
class SurpriseBreakdown:
    """Expected surprise per round (entry ``r - 1`` is round ``r``) and in total."""

    per_round: np.ndarray
    total: float


@dataclass(frozen=True, eq=False)
class SurpriseCurve:
    """Exact expected overall surprise for every admissible bonus."""

    n: int
    xs: np.ndarray
    totals: np.ndarray
    per_round: np.ndarray

    @property
    def argmax(self) -> int:
        # np.argmax returns the first maximum, i.e. the smaller bonus on ties
        return int(self.xs[int(np.argmax(self.totals))])


def build_belief_table(prior: PriorParams, cfg: MatchConfig) -> BeliefTable:
    b = kernels.belief_table(prior.alpha, prior.beta, cfg.n, cfg.x)
    b.setflags(write=False)
    return BeliefTable(cfg.n, cfg.x, b)


def _breakdown(per_round: np.ndarray) -> SurpriseBreakdown:
    return SurpriseBreakdown(per_round, math.fsum(per_round))


def expected_surprise_exact(prior: PriorParams, cfg: MatchConfig) -> SurpriseBreakdown:
    P = kernels.state_prob_table(prior.alpha, prior.beta, cfg.n)
    return _breakdown(kernels.round_surprise(prior.alpha, prior.beta, cfg.n, cfg.x, P))


def surprise_curve(prior: PriorParams, n: int) -> SurpriseCurve:
    """Evaluate every ``x`` in the admissible set, sharing one state table."""
    xs = np.array(admissible_bonuses(n))
    P = kernels.state_prob_table(prior.alpha, prior.beta, n)
    rows = np.array([kernels.round_surprise(prior.alpha, prior.beta, n, int(x), P) for x in xs])
    totals = np.array([math.fsum(r) for r in rows])
    return SurpriseCurve(n, xs, totals, rows)


def brute_force_optimal(prior: PriorParams, n: int) -> BonusSolution:
    curve = surprise_curve(prior, n)
    k = int(np.argmax(curve.totals))
    return BonusSolution(int(curve.xs[k]), Method.BRUTE_FORCE, objective=float(curve.totals[k]))


def per_round_ratio(prior: PriorParams, cfg: MatchConfig, i: int) -> float:
    """``E[surprise of round i] / E[surprise of round i + 1]`` for ``1 <= i < n - 1``."""
    if not (1 <= i and i + 1 < cfg.n):
        raise DomainError(f"ratio needs 1 <= i and i + 1 < n, got i={i}, n={cfg.n}")
    per_round = expected_surprise_exact(prior, cfg).per_round
    num, den = per_round[i - 1], per_round[i]
    if den == 0.0:
        raise DegenerateInputError(f"round {i + 1} generates no expected surprise")
    return float(num / den)


def path_beliefs(table: BeliefTable, wins) -> np.ndarray:
    """Belief curve ``B_0..B_n`` along a sequence of round outcomes (1 = Alice won)."""
    wins = np.asarray(wins, dtype=int)
    if wins.shape != (table.n,):
        raise DomainError(f"need {table.n} outcomes, got shape {wins.shape}")
    states = np.concatenate(([0], np.cumsum(wins[:-1])))
    out = np.empty(table.n + 1)
    out[: table.n] = table.b[np.arange(table.n), states]
    out[table.n] = table.final_belief(int(states[-1]), bool(wins[-1]))
    return out


def martingale_residual(prior: PriorParams, table: BeliefTable) -> float:
    """Largest violation of ``b[i,j] = q b[i+1,j+1] + (1-q) b[i+1,j]``."""
    worst = 0.0
    for i in range(table.n - 1):
        for j in range(i + 1):
            q = posterior_mean(prior, i, j)
            r = q * table.b[i + 1, j + 1] + (1 - q) * table.b[i + 1, j] - table.b[i, j]
            worst = max(worst, abs(r))
    return worst
