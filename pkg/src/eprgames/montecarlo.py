"""Repeated EPR runs with mixed direction choices.

Random numbers come from numpy's PCG64 generator seeded with ``seed``.
Draw order is fixed: n uniforms for Alice's directions, then n for Bob's,
then n for the outcomes (inverse CDF over the chosen block).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .game import GameMatrix, MixedStrategyPair
from .probability import EXTERNAL_TOL, CHSH_SIGNS, EprDistribution, validate

RNG_ALGORITHM = "numpy.random.PCG64"
_OUTCOME_PAIRS = np.array([[1, 1], [1, -1], [-1, 1], [-1, -1]])


@dataclass(frozen=True, eq=False)
class RunRecords:
    """Per-run columns. Directions are 0 for S1 / S1' and 1 for S2 / S2'."""

    alice_dir: np.ndarray
    bob_dir: np.ndarray
    x: np.ndarray
    y: np.ndarray
    payoff_a: np.ndarray
    payoff_b: np.ndarray

    def __len__(self):
        return len(self.x)


@dataclass(frozen=True, eq=False)
class SimulationSummary:
    n_runs: int
    seed: int
    counts: np.ndarray  # (16,) outcome counts in eps layout
    payoff_mean: tuple[float, float]
    payoff_stderr: tuple[float, float]
    rng: str = RNG_ALGORITHM

    @property
    def block_visits(self) -> np.ndarray:
        return self.counts.reshape(4, 4).sum(axis=1)

    @property
    def empirical_eps(self) -> np.ndarray:
        """Per-block frequencies; unvisited blocks are NaN."""
        visits = self.block_visits
        blocks = self.counts.reshape(4, 4).astype(float)
        out = np.full((4, 4), np.nan)
        seen = visits > 0
        out[seen] = blocks[seen] / visits[seen, None]
        return out.reshape(16)

    def empirical_correlations(self) -> list[Optional[float]]:
        eps = self.empirical_eps.reshape(4, 4)
        return [None if np.isnan(row[0]) else float(row[0] - row[1] - row[2] + row[3]) for row in eps]

    def empirical_delta(self) -> Optional[float]:
        """CHSH sum from empirical correlations; None unless all four blocks were visited."""
        corr = self.empirical_correlations()
        if any(c is None for c in corr):
            return None
        return float(np.dot(corr, CHSH_SIGNS))

    def __eq__(self, other):
        if not isinstance(other, SimulationSummary):
            return NotImplemented
        return (
            self.n_runs == other.n_runs
            and self.seed == other.seed
            and np.array_equal(self.counts, other.counts)
            and self.payoff_mean == other.payoff_mean
            and _same_floats(self.payoff_stderr, other.payoff_stderr)
            and self.rng == other.rng
        )

    def to_dict(self) -> dict:
        emp = self.empirical_eps.reshape(4, 4)
        return {
            "n_runs": self.n_runs,
            "seed": self.seed,
            "rng": self.rng,
            "counts": self.counts.tolist(),
            "empirical_eps": [None if np.isnan(row[0]) else row.tolist() for row in emp],
            "payoff_mean": list(self.payoff_mean),
            "payoff_stderr": [None if math.isnan(s) else s for s in self.payoff_stderr],
            "empirical_delta": self.empirical_delta(),
        }


def _same_floats(a, b) -> bool:
    return all(x == y or (math.isnan(x) and math.isnan(y)) for x, y in zip(a, b))


def simulate(
    game: GameMatrix,
    dist: EprDistribution,
    s: MixedStrategyPair,
    n: int,
    seed: int,
    record_runs: bool = False,
):
    """Simulate ``n`` i.i.d. runs.

    Returns a :class:`SimulationSummary`, or ``(summary, RunRecords)`` when
    ``record_runs`` is set.
    """
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    n = int(n)
    report = validate(dist, EXTERNAL_TOL)
    if not report.is_valid:
        raise ValueError(f"invalid distribution: {report.violations}")

    rng = np.random.Generator(np.random.PCG64(seed))
    alice_dir = (rng.random(n) >= s.p).astype(np.int64)
    bob_dir = (rng.random(n) >= s.q).astype(np.int64)
    u = rng.random(n)

    block = 2 * alice_dir + bob_dir
    cdf = np.cumsum(np.clip(dist.blocks, 0.0, None), axis=1)
    cdf /= cdf[:, -1:]
    outcome = (u[:, None] >= cdf[block]).sum(axis=1)
    outcome = np.minimum(outcome, 3)  # guards u against cdf rounding below 1
    cell = 4 * block + outcome

    pay_a = game.a[cell]
    pay_b = game.b[cell]
    counts = np.bincount(cell, minlength=16)
    if n > 1:
        stderr = (float(pay_a.std(ddof=1) / math.sqrt(n)), float(pay_b.std(ddof=1) / math.sqrt(n)))
    else:
        stderr = (math.nan, math.nan)
    summary = SimulationSummary(
        n_runs=n,
        seed=int(seed),
        counts=counts,
        payoff_mean=(float(pay_a.mean()), float(pay_b.mean())),
        payoff_stderr=stderr,
    )
    if not record_runs:
        return summary
    xy = _OUTCOME_PAIRS[outcome]
    return summary, RunRecords(alice_dir, bob_dir, xy[:, 0], xy[:, 1], pay_a, pay_b)
