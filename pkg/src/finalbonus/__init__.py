"""Optimal final-round bonus under a Beta prior."""

from ._backend import BACKEND
from .asymptotic import AsymptoticSolution, asymptotic_optimal, z_value
from .beta import PriorParams
from .errors import BracketError, DegenerateInputError, DomainError, InvalidConfigError
from .oracle import brute_force_optimal, expected_surprise_exact, surprise_curve
from .simulator import SimulationReport, belief_trace, simulate
from .solution import BonusSolution, MatchConfig, Method, admissible_bonuses, rd
from .solvers import CertainParams, certain_optimal, linear_scan_optimal, symmetric_optimal

__all__ = [
    "BACKEND",
    "AsymptoticSolution",
    "BonusSolution",
    "BracketError",
    "CertainParams",
    "DegenerateInputError",
    "DomainError",
    "InvalidConfigError",
    "MatchConfig",
    "Method",
    "PriorParams",
    "SimulationReport",
    "admissible_bonuses",
    "asymptotic_optimal",
    "belief_trace",
    "brute_force_optimal",
    "certain_optimal",
    "expected_surprise_exact",
    "linear_scan_optimal",
    "rd",
    "simulate",
    "surprise_curve",
    "symmetric_optimal",
    "z_value",
]

__version__ = "0.1.0"
