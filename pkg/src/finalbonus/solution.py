"""Result types and bonus-space helpers shared by the oracle and the solvers."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import InvalidConfigError


class Method(str, enum.Enum):
    BRUTE_FORCE = "BruteForce"
    SYMMETRIC_CLOSED_FORM = "SymmetricClosedForm"
    CERTAIN_ROOT = "CertainRoot"
    LINEAR_SCAN = "LinearScan"
    ASYMPTOTIC_ROOT = "AsymptoticRoot"


def admissible_bonuses(n: int) -> range:
    """Bonuses in ``[0, n]`` with the parity of ``n``, ascending."""
    if n < 1:
        raise InvalidConfigError(f"need at least one round, got n={n}")
    return range(n % 2, n + 1, 2)


@dataclass(frozen=True)
class MatchConfig:
    """An ``n``-round match whose final round is worth ``x`` points."""

    n: int
    x: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidConfigError(f"need at least one round, got n={self.n}")
        if not 0 <= self.x <= self.n:
            raise InvalidConfigError(f"bonus x={self.x} outside [0, {self.n}]")
        if (self.n - self.x) % 2:
            raise InvalidConfigError(
                f"bonus x={self.x} must have the parity of n={self.n} (ties otherwise possible)"
            )

    @property
    def lower(self) -> int:
        """Smallest state after ``n - 1`` rounds where the final round decides."""
        return (self.n - self.x) // 2

    @property
    def upper(self) -> int:
        """Largest state after ``n - 1`` rounds where the final round decides."""
        return (self.n + self.x - 2) // 2


def rd(value: float, n: int) -> int:
    """Nearest integer to ``value`` with the parity of ``n``, clamped into ``[n % 2, n]``.

    An exact tie goes to the smaller candidate.
    """
    if n < 1:
        raise InvalidConfigError(f"need at least one round, got n={n}")
    lo = math.floor(value)
    if (lo - n) % 2:
        lo -= 1
    hi = lo + 2
    pick = lo if value - lo <= hi - value else hi
    return min(max(pick, n % 2), n)


@dataclass(frozen=True)
class BonusSolution:
    """Optimal bonus ``x_star`` and how it was obtained.

    ``x_tilde`` is the continuous optimum before rounding, when the method has
    one.  ``swapped`` is set when the prior was relabelled so that
    ``alpha >= beta``.
    """

    x_star: int
    method: Method
    x_tilde: float | None = None
    objective: float | None = None
    swapped: bool = False

    def to_dict(self) -> dict:
        return {
            "x_star": self.x_star,
            "x_tilde": self.x_tilde,
            "method": self.method.value,
            "objective": self.objective,
            "swapped": self.swapped,
        }
