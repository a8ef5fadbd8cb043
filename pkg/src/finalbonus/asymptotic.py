"""Continuum approximation for many rounds.

With the bonus written as a fraction ``mu = x / n`` of the match length, the
expected overall surprise is approximated by ``Z(mu)``, whose derivative has
the sign of ``G(mu)``.  ``G(0) > 0 > G(1)`` once ``n`` is large enough and the
root ``mu*`` is unique.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .beta import PriorParams, beta_density, harmonic_shifted, log_beta_fn
from .errors import BracketError, DomainError

__all__ = [
    "AsymptoticSolution",
    "regularized_incomplete_beta",
    "z_value",
    "g_value",
    "g_scaled",
    "root_upper_bound",
    "near_certain_condition",
    "solve_g_root",
    "asymptotic_optimal",
]

ROOT_TOL = 1e-12
CF_EPS = 1e-15
_TINY = 1e-300


@dataclass(frozen=True)
class AsymptoticSolution:
    mu_star: float
    g_at_root: float
    bonus_ratio_closed_form: float | None = None

    def to_dict(self) -> dict:
        return {
            "mu_star": self.mu_star,
            "bonus_ratio_closed_form": self.bonus_ratio_closed_form,
            "g_at_root": self.g_at_root,
        }


def _betacf(a: float, b: float, x: float) -> float:
    # modified Lentz evaluation of the incomplete-beta continued fraction
    max_iter = 200 + int(20 * math.sqrt(max(a, b)))
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, max_iter + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        d = _TINY if abs(d) < _TINY else d
        c = 1.0 + aa / c
        c = _TINY if abs(c) < _TINY else c
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        d = _TINY if abs(d) < _TINY else d
        c = 1.0 + aa / c
        c = _TINY if abs(c) < _TINY else c
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < CF_EPS:
            return h
    raise ArithmeticError(f"continued fraction did not converge for a={a}, b={b}, x={x}")


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """``I_x(a, b)`` for ``a, b > 0`` and ``0 <= x <= 1``."""
    if a <= 0 or b <= 0:
        raise DomainError(f"shape parameters must be positive, got a={a}, b={b}")
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x must lie in [0, 1], got {x!r}")
    if x == 0.0 or x == 1.0:
        return x
    log_front = a * math.log(x) + b * math.log1p(-x) - log_beta_fn(a, b)
    if x < (a + 1.0) / (a + b + 2.0):
        return math.exp(log_front) * _betacf(a, b, x) / a
    return 1.0 - math.exp(log_front) * _betacf(b, a, 1.0 - x) / b


def _check_mu(mu: float, closed: bool) -> None:
    ok = 0.0 <= mu <= 1.0 if closed else 0.0 < mu < 1.0
    if not ok:
        raise DomainError(f"bonus ratio mu={mu!r} out of range")


def z_value(prior: PriorParams, n: int, mu: float) -> float:
    """Continuum approximation of the expected overall surprise at bonus ``mu * n``."""
    _check_mu(mu, closed=False)
    a, b = prior.alpha, prior.beta
    H = harmonic_shifted(prior, n)
    lo, hi = (1.0 - mu) / 2.0, (1.0 + mu) / 2.0
    # integral of 2 f(t) t (1 - t) over [lo, hi], via Be(a + 1, b + 1)
    mass = 2.0 * a * b / ((a + b) * (a + b + 1.0))
    window = regularized_incomplete_beta(a + 1.0, b + 1.0, hi) - regularized_incomplete_beta(
        a + 1.0, b + 1.0, lo
    )
    edges = beta_density(prior, hi) + beta_density(prior, lo)
    return mass * window * (H + 1.0) + edges * (1.0 - mu) ** 2 * (1.0 + mu) * H / 4.0


def _ratios(prior: PriorParams, H: float) -> tuple[float, float]:
    w = prior.alpha - prior.beta
    den = prior.total * H - 1.0
    if den <= 0.0:
        raise BracketError(f"(alpha + beta) H = {prior.total * H:g} <= 1; n too small")
    return (w * H + 1.0) / den, (-w * H + 1.0) / den


def root_upper_bound(prior: PriorParams, n: int) -> float:
    """``((a - b) H + 1) / ((a + b) H - 1)``; the root lies below it."""
    return _ratios(prior, harmonic_shifted(prior, n))[0]


def _g_signed_log(prior: PriorParams, H: float, mu: float) -> tuple[int, float]:
    w = prior.alpha - prior.beta
    up, down = _ratios(prior, H)
    terms = []
    for base, coef in ((1.0 + mu, up - mu), (1.0 - mu, down - mu)):
        if coef == 0.0:
            continue
        if base == 0.0:
            if w > 0:
                continue
            logpow = 0.0
        else:
            logpow = w * math.log(base)
        terms.append((1 if coef > 0 else -1, logpow + math.log(abs(coef))))
    if not terms:
        return 0, -math.inf
    top = max(t[1] for t in terms)
    acc = math.fsum(s * math.exp(lm - top) for s, lm in terms)
    if acc == 0.0:
        return 0, -math.inf
    return (1 if acc > 0 else -1), top + math.log(abs(acc))


def g_value(prior: PriorParams, n: int, mu: float) -> float:
    """``G(mu)``; overflows to ``+-inf`` for very skewed priors (see :func:`g_scaled`)."""
    _check_mu(mu, closed=True)
    sign, logmag = _g_signed_log(prior, harmonic_shifted(prior, n), mu)
    if sign == 0:
        return 0.0
    if logmag > 709.0:
        return sign * math.inf
    return sign * math.exp(logmag)


def g_scaled(prior: PriorParams, n: int, mu: float, H: float | None = None) -> float:
    """``G(mu) / (1 + mu)^(alpha - beta)``: same sign as ``G`` and always finite."""
    _check_mu(mu, closed=True)
    if H is None:
        H = harmonic_shifted(prior, n)
    w = prior.alpha - prior.beta
    up, down = _ratios(prior, H)
    if mu == 1.0:
        ratio = 1.0 if w == 0 else 0.0
    else:
        ratio = math.exp(w * (math.log1p(-mu) - math.log1p(mu)))
    return (up - mu) + ratio * (down - mu)


def near_certain_condition(prior: PriorParams, n: int, eps: float) -> bool:
    """Skew condition under which the root lies within ``eps`` below its upper bound."""
    H = harmonic_shifted(prior, n)
    ell = _ratios(prior, H)[0]
    if not 0.0 < eps < ell or ell - eps >= 1.0:
        return False
    w = prior.alpha - prior.beta
    num = math.log(2.0 * w * H / (prior.total * H - 1.0) - eps) - math.log(eps) if w > 0 else -math.inf
    den = math.log1p(ell - eps) - math.log1p(-(ell - eps))
    return w > num / den


def solve_g_root(prior: PriorParams, n: int) -> tuple[float, float]:
    """Bisect ``G`` on ``[0, 1]``; returns ``(mu_star, |G_scaled(mu_star)|)``."""
    if prior.beta > prior.alpha:
        prior = prior.swapped()
    H = harmonic_shifted(prior, n)
    g0, g1 = g_scaled(prior, n, 0.0, H), g_scaled(prior, n, 1.0, H)
    if not (g0 > 0.0 > g1):
        raise BracketError(f"G(0)={g0:g}, G(1)={g1:g} do not straddle zero; n={n} too small")
    lo, hi = 0.0, 1.0
    while hi - lo >= ROOT_TOL:
        mid = 0.5 * (lo + hi)
        gm = g_scaled(prior, n, mid, H)
        if gm > 0.0:
            lo = mid
        elif gm < 0.0:
            hi = mid
        else:
            lo = hi = mid
    mu = 0.5 * (lo + hi)
    return mu, abs(g_scaled(prior, n, mu, H))


def asymptotic_optimal(
    prior: PriorParams, n: int, closed_form: bool = True, eps: float = 0.01
) -> AsymptoticSolution:
    """Optimal bonus ratio ``mu*`` for large ``n``.

    Symmetric priors short-circuit to ``1 / (2 alpha H - 1)`` unless
    ``closed_form`` is False.  For skewed priors meeting
    :func:`near_certain_condition` at ``eps`` the root's upper bound is reported
    as the closed-form shortcut.
    """
    if prior.beta > prior.alpha:
        prior = prior.swapped()
    H = harmonic_shifted(prior, n)
    g0, g1 = g_scaled(prior, n, 0.0, H), g_scaled(prior, n, 1.0, H)
    if not (g0 > 0.0 > g1):
        raise BracketError(f"G(0)={g0:g}, G(1)={g1:g} do not straddle zero; n={n} too small")
    if prior.symmetric:
        shortcut = 1.0 / (2.0 * prior.alpha * H - 1.0)
        if closed_form:
            return AsymptoticSolution(shortcut, abs(g_scaled(prior, n, shortcut, H)), shortcut)
    else:
        shortcut = root_upper_bound(prior, n) if near_certain_condition(prior, n, eps) else None
    mu, resid = solve_g_root(prior, n)
    return AsymptoticSolution(mu, resid, shortcut)
