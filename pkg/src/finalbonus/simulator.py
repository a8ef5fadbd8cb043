"""Monte Carlo cross-check of the exact expected surprise.

Each trial draws ``p ~ Be(alpha, beta)``, plays ``n`` independent rounds and
reads the audience's beliefs along the path from the oracle's belief table.

Randomness is counter-based: the ``k``-th uniform of trial ``t`` is a hash of
``(seed, t, k)``, so a trial's path does not depend on how many other trials
run, in what order, or in which chunk.  ``p`` is drawn by inverting the Beta
CDF at the trial's first uniform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import betaincinv

from .beta import PriorParams
from .errors import DomainError
from .oracle import BeliefTable, build_belief_table
from .solution import MatchConfig

__all__ = ["SimulationReport", "counter_uniforms", "sample_matches", "simulate", "belief_trace"]

CHUNK = 1 << 15

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)


def _mix64(z: np.ndarray) -> np.ndarray:
    # splitmix64 finalizer; uint64 arithmetic wraps
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def counter_uniforms(seed: int, trials: np.ndarray, count: int) -> np.ndarray:
    """Uniforms in ``(0, 1)``, shape ``(len(trials), count)``, keyed by ``(seed, trial, k)``."""
    with np.errstate(over="ignore"):
        key = _mix64(np.array([seed & 0xFFFFFFFFFFFFFFFF], dtype=np.uint64) + _GOLDEN)
        t = _mix64(key + np.asarray(trials, dtype=np.uint64)[:, None] * _GOLDEN)
        k = np.arange(count, dtype=np.uint64)[None, :]
        bits = _mix64(t ^ (k * _M2 + _GOLDEN))
    return ((bits >> np.uint64(11)).astype(np.float64) + 0.5) * (1.0 / (1 << 53))


def sample_matches(prior: PriorParams, n: int, seed: int, start: int, count: int):
    """Draw ``p`` and round outcomes for trials ``start..start+count-1``.

    Returns ``(p, wins)`` with ``wins`` a boolean ``(count, n)`` array.
    """
    u = counter_uniforms(seed, np.arange(start, start + count), n + 1)
    p = betaincinv(prior.alpha, prior.beta, u[:, 0])
    wins = u[:, 1:] < p[:, None]
    return p, wins


def _beliefs(table: BeliefTable, wins: np.ndarray) -> np.ndarray:
    """Belief curves ``B_0..B_n`` for a batch of outcome rows."""
    n, x = table.n, table.x
    S = np.zeros((wins.shape[0], n), dtype=np.int64)
    np.cumsum(wins[:, :-1], axis=1, out=S[:, 1:])
    B = np.empty((wins.shape[0], n + 1))
    B[:, :n] = table.b[np.arange(n)[None, :], S]
    last = wins[:, -1]
    alice = S[:, -1] + np.where(last, x, 0)
    bob = (n - 1 - S[:, -1]) + np.where(last, 0, x)
    B[:, n] = (alice > bob).astype(float)
    return B


@dataclass(frozen=True, eq=False)
class SimulationReport:
    trials: int
    mean_surprise: float
    std_error: float
    mean_per_round: np.ndarray
    seed: int

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "mean_surprise": self.mean_surprise,
            "std_error": None if math.isnan(self.std_error) else self.std_error,
            "mean_per_round": [float(v) for v in self.mean_per_round],
            "seed": self.seed,
        }


def simulate(prior: PriorParams, cfg: MatchConfig, trials: int, seed: int) -> SimulationReport:
    """Plain Monte Carlo estimate of the expected overall surprise."""
    if trials < 1:
        raise DomainError(f"need at least one trial, got {trials}")
    table = build_belief_table(prior, cfg)
    round_sums, totals = [], []
    for start in range(0, trials, CHUNK):
        count = min(CHUNK, trials - start)
        _, wins = sample_matches(prior, cfg.n, seed, start, count)
        inc = np.abs(np.diff(_beliefs(table, wins), axis=1))
        round_sums.append(inc.sum(axis=0))
        totals.append(inc.sum(axis=1))
    per_round = np.array([math.fsum(col) for col in np.array(round_sums).T]) / trials
    totals = np.concatenate(totals)
    std_err = float(np.std(totals, ddof=1) / math.sqrt(trials)) if trials > 1 else math.nan
    return SimulationReport(trials, math.fsum(per_round), std_err, per_round, seed)


def belief_trace(prior: PriorParams, cfg: MatchConfig, seed: int, trial: int = 0):
    """Rows ``(round, winner, belief, surprise_increment)`` for one simulated match.

    Row 0 is the prior belief with no winner.  ``winner`` is ``"A"`` or ``"B"``.
    """
    table = build_belief_table(prior, cfg)
    _, wins = sample_matches(prior, cfg.n, seed, trial, 1)
    B = _beliefs(table, wins)[0]
    rows = [(0, "", float(B[0]), 0.0)]
    for r in range(1, cfg.n + 1):
        rows.append((r, "A" if wins[0, r - 1] else "B", float(B[r]), float(abs(B[r] - B[r - 1]))))
    return rows
