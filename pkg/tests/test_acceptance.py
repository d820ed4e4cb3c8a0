"""Exit criteria. Each test records one PASS/FAIL line, printed in the terminal summary."""

import math
import time

import numpy as np
import pytest
from scipy.optimize import brentq

from eprgames.families import Case, FamilyParams, generate
from eprgames.game import MixedStrategyPair, mixed_payoff, pure_payoffs, reduce_symmetric
from eprgames.montecarlo import simulate
from eprgames.nash import brute_force_nash, check_half_half_degeneracy, is_nash, nash_brackets_one_half
from eprgames.probability import EprDistribution, chsh_delta_mu, complete_mu_array, correlations, sample_valid_mu
from eprgames.quantum import (
    SINGLET,
    TSIRELSON,
    LocalModel,
    MeasurementConfig,
    born_distribution,
    local_deterministic_mixture,
    max_chsh_config,
)
from eprgames.sweep import SweepSpec, sweep_row

GAME_A_MATRIX = [1, 1, -3, 1, 1, -3, 1, 1, -3, 1, 1, 1, 5, 1, 1, 1]
GAME_B_MATRIX = [1, -3, 9, 1, 1, 9, -3, 1, 13, 5, 5, 1, -7, 1, 1, 5]
UNIT = dict(free_a=(1,) * 7, b_top=1, b_bottom=1, b_rest=(1,) * 8)
ONE_HALF = MixedStrategyPair(1, 0.5)


def game(case):
    return generate(FamilyParams(**UNIT, case=case))


def test_family_reconstruction(criterion):
    start = time.perf_counter()
    a, b = game(Case.NonNegativeDelta), game(Case.NegativeDelta)
    elapsed = time.perf_counter() - start
    ok = (
        a.a.tolist() == GAME_A_MATRIX
        and b.a.tolist() == GAME_B_MATRIX
        and a.b.tolist() == [1] * 16
        and b.b.tolist() == [1] * 16
        and elapsed < 1.0
    )
    assert criterion("1 family reconstruction (exact, < 1 s)", ok, f"{elapsed * 1e3:.2f} ms")


def test_bracket_identities(criterion):
    start = time.perf_counter()
    mus = sample_valid_mu(np.random.default_rng(2), 1000)
    worst = 0.0
    for mu in mus:
        dist = EprDistribution(complete_mu_array(mu))
        assert np.all((dist.eps >= 0) & (dist.eps <= 1))
        delta = chsh_delta_mu(dist)
        ba = nash_brackets_one_half(game(Case.NonNegativeDelta), dist)
        bb = nash_brackets_one_half(game(Case.NegativeDelta), dist)
        worst = max(worst, abs(ba.bracket_A - (2 - delta)), abs(ba.bracket_B), abs(bb.bracket_A - (2 + delta)), abs(bb.bracket_B))
    elapsed = time.perf_counter() - start
    ok = len(mus) == 1000 and worst < 1e-12 and elapsed < 5.0
    assert criterion("2 bracket identities (1000 mu, < 1e-12, < 5 s)", ok, f"max residual {worst:.2e}, {elapsed:.2f} s")


def _equivalence_rows(game_matrix):
    # A1 = 0, A2 = 2t, B1 = t, B2 = -t: Delta(t) = cos 3t - 3 cos t, from -2sqrt2 (t = pi/4) to 2sqrt2 (t = 3pi/4)
    spec = SweepSpec(
        baseline=MeasurementConfig(SINGLET, (0, 0, 0, 0)),
        terms=(("A2", 2.0), ("B1", 1.0), ("B2", -1.0)),
        lo=math.pi / 4,
        hi=3 * math.pi / 4,
        steps=401,
        game=game_matrix,
        pair=ONE_HALF,
    )
    values = list(spec.values())

    def delta_at(t):
        return chsh_delta_mu(born_distribution(spec.baseline.with_angles(spec.angles_at(t))))

    # boundary points Delta = +-2
    values += [brentq(lambda t: delta_at(t) - 2, math.pi / 2, 3 * math.pi / 4, xtol=1e-15)]
    values += [brentq(lambda t: delta_at(t) + 2, math.pi / 4, math.pi / 2, xtol=1e-15)]
    return [sweep_row(spec, v) for v in values]


def test_nash_bell_equivalence(criterion):
    tol = 1e-9
    failures = 0
    n_rows = 0
    deltas = []
    boundary_rows = 0
    for case in Case:
        sign = case.delta_sign
        for row in _equivalence_rows(game(case)):
            delta, is_ne, strict, binding = row[5], row[9], row[10], row[11]
            deltas.append(delta)
            n_rows += 1
            # case A: NE iff Delta >= 2 - tol; case B: NE iff Delta <= -2 + tol
            failures += is_ne != (sign * delta >= 2 - tol)
            if abs(sign * delta - 2) <= tol:
                boundary_rows += 1
                failures += not (strict and "A:p=0" in binding)
    span = (min(deltas), max(deltas))
    ok = (
        failures == 0
        and n_rows >= 400
        and boundary_rows >= 2
        and abs(span[0] + TSIRELSON) < 1e-9
        and abs(span[1] - TSIRELSON) < 1e-9
    )
    assert criterion(
        "3 Nash-Bell equivalence (both games, >= 200 sweep points each)",
        ok,
        f"{n_rows} rows, {boundary_rows} boundary, Delta in [{span[0]:.10f}, {span[1]:.10f}], {failures} mismatches",
    )


def test_tsirelson_bound(criterion):
    rng = np.random.default_rng(4)
    worst = 0.0
    for i in range(1000):
        state = SINGLET if i % 2 == 0 else float(rng.uniform(0, math.pi / 2))
        config = MeasurementConfig(state, tuple(rng.uniform(-math.pi, math.pi, 4)))
        worst = max(worst, abs(correlations(born_distribution(config)).delta))
    best = correlations(born_distribution(max_chsh_config(+1))).delta
    ok = worst <= TSIRELSON + 1e-9 and abs(best - 2.8284271) <= 1e-6
    assert criterion("4 Tsirelson bound (1000 configs) and max_chsh_config(+1)", ok, f"max |Delta| {worst:.10f}, optimum {best:.10f}")


def test_local_bound(criterion):
    rng = np.random.default_rng(5)
    worst = 0.0
    for i in range(1000):
        alpha = np.full(16, 0.05 if i % 2 else 1.0)  # sparse and spread mixtures
        model = LocalModel(rng.dirichlet(alpha))
        worst = max(worst, abs(correlations(local_deterministic_mixture(model)).delta))
    ok = worst <= 2 + 1e-12
    assert criterion("5 local bound (1000 deterministic mixtures)", ok, f"max |Delta| {worst:.15f}")


def test_classical_reduction(criterion):
    start = time.perf_counter()
    pd = reduce_symmetric(3, 0, 5, 1)
    rng = np.random.default_rng(6)
    dists = [EprDistribution(complete_mu_array(mu)) for mu in sample_valid_mu(rng, 100)]
    expected_a = np.array([[3, 0], [5, 1]])
    expected_b = np.array([[3, 5], [0, 1]])
    table_dev = max(
        max(np.abs(pure_payoffs(pd, d).alice - expected_a).max(), np.abs(pure_payoffs(pd, d).bob - expected_b).max())
        for d in dists
    )
    unique = all(brute_force_nash(pd, d, 101) == [MixedStrategyPair(0, 0)] for d in dists)
    elapsed = time.perf_counter() - start
    ok = table_dev < 1e-12 and unique and elapsed < 10
    assert criterion("6 classical reduction (PD bimatrix, unique NE (0,0))", ok, f"table deviation {table_dev:.1e}, {elapsed:.2f} s")


def test_delta_formula_equivalence(criterion):
    rng = np.random.default_rng(7)
    worst = 0.0
    mus = sample_valid_mu(rng, 10_000)
    for mu in mus:
        dist = EprDistribution(complete_mu_array(mu))
        worst = max(worst, abs(correlations(dist).delta - chsh_delta_mu(dist)))
    ok = len(mus) == 10_000 and worst < 1e-12
    assert criterion("7 Delta from correlations == Delta from mu (10 000 dists)", ok, f"max diff {worst:.2e}")


def test_monte_carlo_consistency(criterion):
    start = time.perf_counter()
    dist = born_distribution(max_chsh_config(+1))
    g = game(Case.NonNegativeDelta)
    summary = simulate(g, dist, ONE_HALF, n=10**6, seed=2024)
    analytic = mixed_payoff(g, dist, ONE_HALF)
    payoff_ok = all(abs(m - a) <= 3 * s for m, a, s in zip(summary.payoff_mean, analytic, summary.payoff_stderr))
    half = simulate(g, dist, MixedStrategyPair(0.5, 0.5), n=10**6, seed=2025)
    delta_err = abs(half.empirical_delta() - chsh_delta_mu(dist))
    elapsed = time.perf_counter() - start
    ok = payoff_ok and delta_err < 0.02 and elapsed < 30
    z = (summary.payoff_mean[0] - analytic[0]) / summary.payoff_stderr[0]
    assert criterion("8 Monte Carlo consistency (n = 1e6)", ok, f"Alice z = {z:+.2f}, |Delta error| {delta_err:.4f}, {elapsed:.2f} s")


def test_half_half_degeneracy(criterion):
    rng = np.random.default_rng(9)
    g = game(Case.NonNegativeDelta)
    pair = MixedStrategyPair(0.5, 0.5)
    holds = 0
    dists = [EprDistribution(complete_mu_array(mu)) for mu in sample_valid_mu(rng, 100)]
    for dist in dists:
        alice, bob = check_half_half_degeneracy(g, dist)
        both_vanish = abs(alice) <= 1e-9 and abs(bob) <= 1e-9
        holds += is_nash(g, dist, pair).is_ne == both_vanish
    ok = holds == len(dists) == 100
    assert criterion("9 (1/2,1/2) is NE only when both brackets vanish (100 dists)", ok, f"{holds}/100 samples")
