"""Independent exact reference: enumerate every outcome sequence with rational arithmetic.

Only usable for integer shape parameters and small ``n`` (cost ``4^n``).
Beliefs are computed from their definition, ``Pr[Alice wins | prefix]``, by
summing the exact Beta-Bernoulli path probability over all completions.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial


def _rising(a: int, k: int) -> int:
    out = 1
    for t in range(k):
        out *= a + t
    return out


def path_prob(alpha: int, beta: int, wins: tuple) -> Fraction:
    # E[p^s (1-p)^f] under Be(alpha, beta)
    s = sum(wins)
    f = len(wins) - s
    return Fraction(_rising(alpha, s) * _rising(beta, f), _rising(alpha + beta, s + f))


def alice_wins(n: int, x: int, wins: tuple) -> bool:
    alice = sum(wins[:-1]) + (x if wins[-1] else 0)
    bob = (n - 1 - sum(wins[:-1])) + (0 if wins[-1] else x)
    return alice > bob


def exact_breakdown(alpha: int, beta: int, n: int, x: int) -> list:
    """Expected surprise of each round as exact fractions."""

    @lru_cache(maxsize=None)
    def belief(prefix: tuple) -> Fraction:
        if len(prefix) == n:
            return Fraction(int(alice_wins(n, x, prefix)))
        num = Fraction(0)
        rest = n - len(prefix)
        for tail in product((0, 1), repeat=rest):
            full = prefix + tail
            if alice_wins(n, x, full):
                num += path_prob(alpha, beta, full)
        return num / path_prob(alpha, beta, prefix)

    per_round = [Fraction(0)] * n
    for path in product((0, 1), repeat=n):
        w = path_prob(alpha, beta, path)
        for r in range(1, n + 1):
            per_round[r - 1] += w * abs(belief(path[:r]) - belief(path[: r - 1]))
    return per_round


def exact_state_prob(alpha: int, beta: int, i: int, j: int) -> Fraction:
    comb = factorial(i) // (factorial(j) * factorial(i - j))
    return comb * path_prob(alpha, beta, (1,) * j + (0,) * (i - j))
