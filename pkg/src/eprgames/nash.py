"""Nash equilibrium checks for mixed strategy pairs.

Mixed payoffs are bilinear in (p, q), so a unilateral deviation can gain
only if one of the two pure strategies gains. :func:`is_nash` therefore
checks p in {0, 1} and q in {0, 1}; :func:`brute_force_nash` is the
lattice oracle that does not rely on that argument.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .game import GameMatrix, MixedStrategyPair, bilinear, pure_payoffs
from .probability import EprDistribution

NE_TOL = 1e-9


@dataclass(frozen=True)
class NashReport:
    """Deviation gains are payoff(deviation) - payoff(pair); positive means profitable."""

    pair: MixedStrategyPair
    gain_A_at_p0: float
    gain_A_at_p1: float
    gain_B_at_q0: float
    gain_B_at_q1: float
    is_ne: bool
    is_strict_boundary: bool
    # genuine deviations whose gain is zero within tolerance, e.g. ("A:p=0",)
    binding: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "pair": {"p": self.pair.p, "q": self.pair.q},
            "gain_A_at_p0": self.gain_A_at_p0,
            "gain_A_at_p1": self.gain_A_at_p1,
            "gain_B_at_q0": self.gain_B_at_q0,
            "gain_B_at_q1": self.gain_B_at_q1,
            "is_ne": self.is_ne,
            "is_strict_boundary": self.is_strict_boundary,
            "binding": list(self.binding),
        }


@dataclass(frozen=True)
class BracketValues:
    """Square brackets of the Nash inequalities at the pair (1, 1/2).

    bracket_A = Pi_A(S2,S1') + Pi_A(S2,S2') - Pi_A(S1,S1') - Pi_A(S1,S2')
    bracket_B = Pi_B(S1,S1') - Pi_B(S1,S2')

    Alice's loss from deviating to p is (1/2)(1 - p) bracket_A, Bob's gain
    from deviating to q is (q - 1/2) bracket_B.
    """

    bracket_A: float
    bracket_B: float


def is_nash(game: GameMatrix, dist: EprDistribution, pair: MixedStrategyPair, tol: float = NE_TOL) -> NashReport:
    table = pure_payoffs(game, dist)
    p, q = pair.p, pair.q
    here_a = bilinear(table.alice, p, q)
    here_b = bilinear(table.bob, p, q)
    gains = {
        "A:p=0": (float(bilinear(table.alice, 0.0, q) - here_a), p != 0.0),
        "A:p=1": (float(bilinear(table.alice, 1.0, q) - here_a), p != 1.0),
        "B:q=0": (float(bilinear(table.bob, p, 0.0) - here_b), q != 0.0),
        "B:q=1": (float(bilinear(table.bob, p, 1.0) - here_b), q != 1.0),
    }
    is_ne = all(g <= tol for g, _ in gains.values())
    binding = tuple(name for name, (g, genuine) in gains.items() if genuine and abs(g) <= tol)
    return NashReport(
        pair=pair,
        gain_A_at_p0=gains["A:p=0"][0],
        gain_A_at_p1=gains["A:p=1"][0],
        gain_B_at_q0=gains["B:q=0"][0],
        gain_B_at_q1=gains["B:q=1"][0],
        is_ne=is_ne,
        is_strict_boundary=is_ne and bool(binding),
        binding=binding,
    )


def nash_brackets_one_half(game: GameMatrix, dist: EprDistribution) -> BracketValues:
    """Brackets for the pair (1, 1/2); it is an NE iff bracket_A <= 0 and bracket_B == 0."""
    t = pure_payoffs(game, dist)
    bracket_a = t.alice[1, 0] + t.alice[1, 1] - t.alice[0, 0] - t.alice[0, 1]
    bracket_b = t.bob[0, 0] - t.bob[0, 1]
    return BracketValues(float(bracket_a), float(bracket_b))


def check_half_half_degeneracy(game: GameMatrix, dist: EprDistribution) -> tuple[float, float]:
    """Brackets for the pair (1/2, 1/2).

    Deviation losses are (1/2)(1/2 - p) times the first and (1/2)(1/2 - q)
    times the second, which change sign across p = 1/2 and q = 1/2, so the
    pair is an NE only when both vanish.
    """
    t = pure_payoffs(game, dist)
    alice = t.alice[0, 0] + t.alice[0, 1] - t.alice[1, 0] - t.alice[1, 1]
    bob = t.bob[0, 0] - t.bob[0, 1] + t.bob[1, 0] - t.bob[1, 1]
    return float(alice), float(bob)


def brute_force_nash(
    game: GameMatrix, dist: EprDistribution, grid_n: int = 101, tol: float = NE_TOL
) -> list[MixedStrategyPair]:
    """Lattice points of [0,1]^2 from which no lattice deviation gains more than ``tol``.

    Returned pairs are sorted by (p, q).
    """
    if grid_n < 2:
        raise ValueError(f"grid_n must be >= 2, got {grid_n}")
    table = pure_payoffs(game, dist)
    ticks = np.arange(grid_n) / (grid_n - 1)
    pp, qq = np.meshgrid(ticks, ticks, indexing="ij")
    pay_a = bilinear(table.alice, pp, qq)  # [i, j] = payoff at (p_i, q_j)
    pay_b = bilinear(table.bob, pp, qq)
    gain_a = pay_a.max(axis=0, keepdims=True) - pay_a
    gain_b = pay_b.max(axis=1, keepdims=True) - pay_b
    ok = (gain_a <= tol) & (gain_b <= tol)
    return [MixedStrategyPair(float(ticks[i]), float(ticks[j])) for i, j in zip(*np.nonzero(ok))]
