"""Fast finite-n solvers for the optimal final-round bonus.

Everything reduces to the trade-off between the last two rounds: the total
expected surprise is ``E[r_{n-1}] * (n + a + b - 2) * H + E[r_n]`` for every
bonus, so stepping ``x -> x + 2`` changes it by an O(1) expression in a handful
of ``Q`` weights.  Scanning ``x`` upward while accumulating those steps gives
the O(n) general solver; the symmetric and certain priors collapse further to
a closed form and a one-dimensional root, respectively.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .beta import (
    GammaTables,
    PriorParams,
    build_gamma_tables,
    harmonic_shifted,
    log_q_weight,
)
from .errors import BracketError, DomainError
from .solution import BonusSolution, Method, admissible_bonuses, rd

__all__ = [
    "CertainParams",
    "rd",
    "symmetric_optimal",
    "certain_F",
    "certain_threshold",
    "certain_optimal",
    "expected_lead_window",
    "surprise_difference",
    "surprise_at_base",
    "linear_scan_optimal",
]

BISECT_TOL = 1e-10
BISECT_MAX_ITER = 200
BRACKET_PAD = 1e-9


@dataclass(frozen=True)
class CertainParams:
    """Known per-round win probability ``p >= 1/2`` over ``n`` rounds."""

    p: float
    n: int

    def __post_init__(self):
        if not 0.5 <= self.p < 1.0:
            raise DomainError(f"p must lie in [0.5, 1), got {self.p!r}")
        if self.n < 2:
            raise DomainError(f"n must be >= 2, got {self.n}")

    @property
    def expected_lead(self) -> float:
        return 2 * self.n * self.p - self.n


def _smallest_bonus_above_one(n: int) -> int:
    # limit of rd(x) as x -> 1 from above
    return 1 if n % 2 else 2


def symmetric_optimal(alpha: float, n: int) -> BonusSolution:
    """Closed-form optimum for the prior ``Be(alpha, alpha)``."""
    if not alpha >= 1.0:
        raise DomainError(f"alpha must be >= 1, got {alpha!r}")
    if n < 2:
        raise DomainError(f"closed form needs n >= 2, got {n}")
    H = harmonic_shifted(PriorParams(alpha, alpha), n)
    x_tilde = (n - 1) / (2 * alpha * H - (n - 1) / (n + 2 * alpha - 1))
    return BonusSolution(rd(x_tilde, n), Method.SYMMETRIC_CLOSED_FORM, x_tilde=x_tilde)


def certain_F(params: CertainParams, x: float) -> float:
    """Sign of ``E[x + 1] - E[x - 1]`` in the certain limit, as a function of real ``x``."""
    n, p = params.n, params.p
    if not 1.0 <= x < n + 1:
        raise DomainError(f"x must lie in [1, {n + 1}), got {x!r}")
    lead = 2 * n * p - n
    t = x - 1.0
    return (lead - t) * p**t + (-lead - t) * (1.0 - p) ** t


def certain_threshold(p: float) -> float:
    """Round count above which ``F`` has a root besides ``x = 1`` (``inf`` at ``p = 1/2``)."""
    if p == 0.5:
        return math.inf
    return 1.0 / ((0.5 - p) * math.log((1.0 - p) / p))


def expected_lead_window(p: float, n: int) -> bool:
    """Whether ``p`` is skewed enough that the optimum sits within 2 of ``rd(2np - n)``."""
    a = 2 * n * p - n - 2
    if a <= 0:
        return False
    return p > 1.0 / (1.0 + (a + 1.0) ** (-1.0 / a))


def _bisect(f, lo: float, hi: float, tol: float, max_iter: int) -> float:
    flo, fhi = f(lo), f(hi)
    if not (flo > 0.0 >= fhi):
        raise BracketError(f"no sign change on [{lo}, {hi}]: f={flo}, {fhi}")
    for _ in range(max_iter):
        if hi - lo < tol:
            break
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm > 0.0:
            lo = mid
        elif fm < 0.0:
            hi = mid
        else:
            return mid
    return 0.5 * (lo + hi)


def _certain_F_scaled(n: int, p: float, x: float) -> float:
    # F(x) / p^(x-1): same sign, no underflow of the leading term for large n
    lead = 2 * n * p - n
    t = x - 1.0
    return (lead - t) - (lead + t) * ((1.0 - p) / p) ** t


def _snap_to_rounding_boundary(params: CertainParams, x_tilde: float) -> float:
    """Return the rounding boundary itself when the root sits on it to working precision.

    Boundaries are the integers of parity ``n + 1``; a root exactly there is a
    tie between two bonuses and ``rd`` must see it as such.
    """
    n, p = params.n, params.p
    b = round(x_tilde)
    if (b - n) % 2 == 0:
        b += 1 if x_tilde > b else -1
    if abs(x_tilde - b) > 1e3 * BISECT_TOL or not 1.0 < b < n + 1:
        return x_tilde
    lead, t = params.expected_lead, b - 1.0
    size = abs(lead - t) + abs(lead + t) * ((1.0 - p) / p) ** t
    if abs(_certain_F_scaled(n, p, b)) <= 1e-12 * size:
        return float(b)
    return x_tilde


def certain_optimal(params: CertainParams) -> BonusSolution:
    """Optimal bonus when Alice's per-round win probability is known to be ``p``.

    Without a non-trivial root of ``F`` the optimum is the smallest admissible
    bonus of at least 1: ``x = 1`` itself for odd ``n``, and ``x = 2`` for even
    ``n``, which is where ``rd`` sends roots just above 1.
    """
    n, p = params.n, params.p
    if p > 0.5 and n > certain_threshold(p):
        x_tilde = _bisect(
            lambda x: _certain_F_scaled(n, p, x),
            1.0 + BRACKET_PAD,
            params.expected_lead + 1.0,
            BISECT_TOL,
            BISECT_MAX_ITER,
        )
        x_tilde = _snap_to_rounding_boundary(params, x_tilde)
        return BonusSolution(rd(x_tilde, n), Method.CERTAIN_ROOT, x_tilde=x_tilde)
    return BonusSolution(_smallest_bonus_above_one(n), Method.CERTAIN_ROOT, x_tilde=1.0)


class _Weights:
    """O(1) access to ``Q`` on rows ``n - 2`` and ``n - 1``; out-of-range states weigh 0."""

    def __init__(self, tables: GammaTables, n: int):
        self.tables = tables
        self.n = n

    def __call__(self, i: int, j: int) -> float:
        if j < 0 or j > i:
            return 0.0
        return math.exp(log_q_weight(self.tables, i, j))


def _scale(prior: PriorParams, n: int, H: float) -> float:
    # (n + a + b - 2) H / (n + a + b - 1)
    s = prior.total
    return (n + s - 2) * H / (n + s - 1)


def _difference(prior: PriorParams, Q: _Weights, n: int, x: int, scale: float) -> float:
    a, b = prior.alpha, prior.beta
    m = n - 2
    lo_out, lo_in = (n - x - 3) // 2, (n - x - 1) // 2
    hi_out, hi_in = (n + x - 1) // 2, (n + x - 3) // 2
    half = (n - x - 1) / 2
    penult = (Q(m, lo_out) - Q(m, lo_in)) * (half + a) + (Q(m, hi_out) - Q(m, hi_in)) * (half + b)
    return penult * scale + Q(n - 1, hi_out) + Q(n - 1, lo_in)


def surprise_difference(prior: PriorParams, tables: GammaTables, n: int, x: int) -> float:
    """``E[surprise | bonus x + 1] - E[surprise | bonus x - 1]`` in O(1).

    ``x`` must have the opposite parity to ``n`` with ``1 <= x <= n - 1``;
    ``tables`` must cover ``n_max >= n``.
    """
    if n < 2 or not 1 <= x <= n - 1 or (n - x) % 2 == 0:
        raise DomainError(f"x={x} +- 1 are not both admissible bonuses for n={n}")
    if tables.prior != prior or tables.n_max < n:
        raise DomainError("tables do not match this prior / round count")
    H = harmonic_shifted(prior, n)
    return _difference(prior, _Weights(tables, n), n, x, _scale(prior, n, H))


def surprise_at_base(prior: PriorParams, tables: GammaTables, n: int) -> float:
    """Exact ``E[surprise]`` at the smallest admissible bonus ``n % 2``."""
    Q = _Weights(tables, n)
    if n == 1:
        return Q(0, 0)
    K = (n + prior.total - 2) * harmonic_shifted(prior, n)
    if n % 2 == 0:
        # x = 0: only S_{n-2} = (n-2)/2 can still flip the result, by a full unit
        return Q(n - 2, (n - 2) // 2) * K
    # x = 1: the final round decides from S_{n-1} = (n-1)/2 only
    j = (n - 1) // 2
    N = n + prior.total - 1
    d_lo = (j + prior.alpha) / N
    d_hi = (n - 1 - j + prior.beta) / N
    return (Q(n - 2, j - 1) * d_lo + Q(n - 2, j) * d_hi) * K + Q(n - 1, j)


def linear_scan_optimal(prior: PriorParams, n: int, tables: GammaTables | None = None) -> BonusSolution:
    """Optimal bonus for any Beta prior in O(n) time and memory."""
    swapped = prior.beta > prior.alpha
    if swapped:
        prior = prior.swapped()
        tables = None
    if n < 1:
        raise DomainError(f"need at least one round, got n={n}")
    if tables is None or tables.prior != prior or tables.n_max < n:
        tables = build_gamma_tables(prior, n)
    base = surprise_at_base(prior, tables, n)
    best_x, best, running = n % 2, 0.0, 0.0
    if n >= 2:
        Q = _Weights(tables, n)
        scale = _scale(prior, n, harmonic_shifted(prior, n))
        for x in range(n % 2 + 1, n, 2):
            running += _difference(prior, Q, n, x, scale)
            if running > best:
                best, best_x = running, x + 1
    return BonusSolution(best_x, Method.LINEAR_SCAN, objective=base + best, swapped=swapped)


def scan_prefix(prior: PriorParams, n: int) -> list[tuple[int, float]]:
    """Accumulated surprise relative to the base bonus, for every admissible ``x``."""
    tables = build_gamma_tables(prior, n)
    out = [(n % 2, 0.0)]
    if n >= 2:
        Q = _Weights(tables, n)
        scale = _scale(prior, n, harmonic_shifted(prior, n))
        running = 0.0
        for x in range(n % 2 + 1, n, 2):
            running += _difference(prior, Q, n, x, scale)
            out.append((x + 1, running))
    assert [x for x, _ in out] == list(admissible_bonuses(n))
    return out
