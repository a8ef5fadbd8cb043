import itertools
import math

import numpy as np
import pytest

from finalbonus import _kernels_py
from finalbonus._backend import BACKEND, get_kernels
from finalbonus.beta import PriorParams, harmonic_shifted, posterior_mean
from finalbonus.errors import DegenerateInputError, DomainError, InvalidConfigError
from finalbonus.oracle import (
    brute_force_optimal,
    build_belief_table,
    expected_surprise_exact,
    martingale_residual,
    path_beliefs,
    per_round_ratio,
    surprise_curve,
)
from finalbonus.solution import MatchConfig, admissible_bonuses
from reference import exact_breakdown

RATIO_SHAPES = [1, 1.5, 2, 5]


def test_belief_table_examples():
    p11 = PriorParams(1, 1)
    assert build_belief_table(p11, MatchConfig(1, 1)).at(0, 0) == 0.5
    t = build_belief_table(p11, MatchConfig(2, 0))
    assert (t.at(1, 0), t.at(1, 1)) == (0.0, 1.0)
    # every state is live, so the row is the posterior mean (j + 1) / (2 + 2)
    t = build_belief_table(p11, MatchConfig(3, 3))
    for j in range(3):
        assert t.at(2, j) == pytest.approx((j + 1) / 4, abs=1e-15)


def test_belief_table_rejects_bad_bonus():
    for n, x in [(4, 1), (3, 5), (3, -1)]:
        with pytest.raises(InvalidConfigError):
            MatchConfig(n, x)


@pytest.mark.parametrize("a,b", [(1, 1), (2, 1), (3, 2), (1.5, 4.25)])
@pytest.mark.parametrize("n", [1, 2, 5, 9, 14])
def test_belief_table_invariants(a, b, n):
    prior = PriorParams(a, b)
    for x in admissible_bonuses(n):
        cfg = MatchConfig(n, x)
        t = build_belief_table(prior, cfg)
        for i in range(n):
            row = t.row(i)
            assert np.all((row >= 0) & (row <= 1))
            assert np.all(np.diff(row) >= -1e-15)
        assert martingale_residual(prior, t) <= 1e-12
        # penultimate row: 0 below L, posterior mean on [L, U], 1 above U
        for j in range(n):
            if j < cfg.lower:
                want = 0.0
            elif j > cfg.upper:
                want = 1.0
            else:
                want = posterior_mean(prior, n - 1, j)
            assert t.at(n - 1, j) == pytest.approx(want, abs=1e-15)


def test_expected_surprise_examples():
    p11 = PriorParams(1, 1)
    assert expected_surprise_exact(p11, MatchConfig(1, 1)).total == pytest.approx(0.5, abs=1e-15)
    br = expected_surprise_exact(p11, MatchConfig(2, 0))
    np.testing.assert_allclose(br.per_round, [0.5, 0.0], atol=1e-15)
    br = expected_surprise_exact(PriorParams(5e5, 5e5), MatchConfig(2, 2))
    np.testing.assert_allclose(br.per_round, [0.0, 0.5], atol=1e-6)


@pytest.mark.parametrize("a,b", [(1, 1), (2, 1), (3, 2), (1, 4)])
@pytest.mark.parametrize("n", [1, 2, 3, 5, 7])
def test_expected_surprise_matches_exact_enumeration(a, b, n):
    prior = PriorParams(a, b)
    for x in admissible_bonuses(n):
        want = [float(v) for v in exact_breakdown(a, b, n, x)]
        br = expected_surprise_exact(prior, MatchConfig(n, x))
        np.testing.assert_allclose(br.per_round, want, rtol=1e-12, atol=1e-15)
        assert br.total == pytest.approx(math.fsum(br.per_round), abs=1e-12)
        assert np.all(br.per_round >= 0)


def test_brute_force_examples():
    assert brute_force_optimal(PriorParams(1, 1), 3).x_star == 1
    assert brute_force_optimal(PriorParams.certain(0.5), 5).x_star == 1
    assert brute_force_optimal(PriorParams(1, 1), 1).x_star == 1


def test_brute_force_reports_first_maximizer():
    for prior in (PriorParams(1, 1), PriorParams(3, 3)):
        for n in range(1, 20):
            curve = surprise_curve(prior, n)
            best = curve.totals.max()
            first = curve.xs[np.flatnonzero(curve.totals == best)[0]]
            assert brute_force_optimal(prior, n).x_star == first


@pytest.mark.parametrize(
    "prior,cfg,i,want,tol",
    [
        (PriorParams(1, 1), MatchConfig(5, 1), 2, 4 / 3, 1e-9),
        (PriorParams(2, 1), MatchConfig(5, 3), 1, 4 / 3, 1e-9),
        (PriorParams.certain(0.7), MatchConfig(6, 2), 3, 1.0, 1e-5),
    ],
)
def test_per_round_ratio_examples(prior, cfg, i, want, tol):
    assert per_round_ratio(prior, cfg, i) == pytest.approx(want, abs=tol)


def test_per_round_ratio_errors(monkeypatch):
    with pytest.raises(DomainError):
        per_round_ratio(PriorParams(1, 1), MatchConfig(5, 1), 4)
    with pytest.raises(DomainError):
        per_round_ratio(PriorParams(1, 1), MatchConfig(2, 0), 1)

    # a proper prior always moves the belief, so force a dead round
    import finalbonus.oracle as oracle

    def dead(prior, cfg):
        return oracle._breakdown(np.array([0.2, 0.0, 0.0, 0.5]))

    monkeypatch.setattr(oracle, "expected_surprise_exact", dead)
    with pytest.raises(DegenerateInputError):
        per_round_ratio(PriorParams(1, 1), MatchConfig(4, 2), 1)


def _grid():
    for a, b in itertools.product(RATIO_SHAPES, repeat=2):
        for n in range(3, 13):
            yield a, b, n


@pytest.mark.parametrize("a,b,n", list(_grid()))
def test_ratio_law_and_linear_combination(a, b, n):
    prior = PriorParams(a, b)
    H = harmonic_shifted(prior, n)
    for x in admissible_bonuses(n):
        pr = expected_surprise_exact(prior, MatchConfig(n, x)).per_round
        for i in range(1, n - 1):
            assert pr[i - 1] / pr[i] == pytest.approx((i + a + b) / (i + a + b - 1), abs=1e-9)
        combo = pr[n - 2] * (n + a + b - 2) * H + pr[n - 1]
        assert math.fsum(pr) == pytest.approx(combo, abs=1e-9)


@pytest.mark.parametrize("a,b", list(itertools.product(RATIO_SHAPES, repeat=2)))
def test_single_peak(a, b):
    prior = PriorParams(a, b)
    for n in range(3, 13):
        d = np.diff(surprise_curve(prior, n).totals)
        signs = np.sign(d[np.abs(d) > 1e-14])
        assert np.count_nonzero(np.diff(signs) != 0) <= 1
        assert not np.any((signs[:-1] < 0) & (signs[1:] > 0))


def test_path_beliefs_end_in_outcome():
    prior = PriorParams(2, 3)
    cfg = MatchConfig(6, 2)
    t = build_belief_table(prior, cfg)
    for wins in itertools.product((0, 1), repeat=6):
        B = path_beliefs(t, wins)
        alice = sum(wins[:-1]) + (2 if wins[-1] else 0)
        bob = 5 - sum(wins[:-1]) + (0 if wins[-1] else 2)
        assert B[-1] == float(alice > bob)
        assert B[0] == t.at(0, 0)


def test_surprise_curve_rows():
    curve = surprise_curve(PriorParams(1, 1), 3)
    assert list(curve.xs) == [1, 3]
    assert curve.argmax == 1
    assert curve.totals[0] == pytest.approx(13 / 18, abs=1e-15)
    assert list(surprise_curve(PriorParams(1, 1), 1).xs) == [1]


def test_backends_agree():
    py = get_kernels("python")
    assert _kernels_py.state_prob_table is py.state_prob_table
    if BACKEND != "cython":
        pytest.skip("compiled kernels not built")
    cy = get_kernels("cython")
    for a, b, n in [(1, 1, 7), (2.5, 1.25, 40), (5e5, 5e5, 30), (8, 3, 200)]:
        P1, P2 = py.state_prob_table(a, b, n), cy.state_prob_table(a, b, n)
        np.testing.assert_allclose(P1, P2, rtol=1e-13, atol=1e-300)
        for x in list(admissible_bonuses(n))[:: max(1, n // 10)]:
            np.testing.assert_allclose(py.belief_table(a, b, n, x), cy.belief_table(a, b, n, x),
                                       rtol=1e-13, atol=1e-15)
            np.testing.assert_allclose(py.round_surprise(a, b, n, x, P1),
                                       cy.round_surprise(a, b, n, x, P2), rtol=1e-12, atol=1e-17)


def test_pure_python_switch():
    import os
    import subprocess
    import sys

    code = "import finalbonus as f; print(f.BACKEND, f.brute_force_optimal(f.PriorParams(3, 1), 15).x_star)"
    env = dict(os.environ, FINALBONUS_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    backend, x = out.stdout.split()
    assert backend == "python"
    assert int(x) == brute_force_optimal(PriorParams(3, 1), 15).x_star
