"""Games whose payoffs are weighted by EPR probabilities.

Coefficients a_i, b_i share the 16-entry block layout of
:class:`~eprgames.probability.EprDistribution`; a pure direction pair
earns the eps-weighted sum of its block.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .probability import EprDistribution, _readonly


@dataclass(frozen=True, eq=False)
class GameMatrix:
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a", _readonly(self.a, 16, "a"))
        object.__setattr__(self, "b", _readonly(self.b, 16, "b"))

    def __eq__(self, other):
        if not isinstance(other, GameMatrix):
            return NotImplemented
        return bool(np.array_equal(self.a, other.a) and np.array_equal(self.b, other.b))

    def __hash__(self):
        return hash((self.a.tobytes(), self.b.tobytes()))

    def __repr__(self):
        return f"GameMatrix(a={self.a.tolist()!r}, b={self.b.tolist()!r})"


@dataclass(frozen=True)
class MixedStrategyPair:
    """p: probability Alice plays S1; q: probability Bob plays S1'."""

    p: float
    q: float

    def __post_init__(self):
        for name in ("p", "q"):
            v = float(getattr(self, name))
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v!r}")
            object.__setattr__(self, name, v)


@dataclass(frozen=True, eq=False)
class PayoffTable:
    """Row: Alice S1 | S2; column: Bob S1' | S2'."""

    alice: np.ndarray
    bob: np.ndarray

    def entry(self, i: int, j: int) -> tuple[float, float]:
        return float(self.alice[i, j]), float(self.bob[i, j])

    def to_dict(self) -> dict:
        return {"alice": self.alice.tolist(), "bob": self.bob.tolist()}

    def format(self) -> str:
        cells = [[f"({self.alice[i, j]:.6g}, {self.bob[i, j]:.6g})" for j in range(2)] for i in range(2)]
        width = max(len(c) for row in cells for c in row)
        lines = [" " * 4 + "S1'".center(width) + "  " + "S2'".center(width)]
        for label, row in zip(("S1", "S2"), cells):
            lines.append(f"{label:<4}" + "  ".join(c.rjust(width) for c in row))
        return "\n".join(lines)


def pure_payoffs(game: GameMatrix, dist: EprDistribution) -> PayoffTable:
    eps = dist.blocks
    alice = (game.a.reshape(4, 4) * eps).sum(axis=1).reshape(2, 2)
    bob = (game.b.reshape(4, 4) * eps).sum(axis=1).reshape(2, 2)
    return PayoffTable(alice, bob)


def bilinear(table: np.ndarray, p, q):
    """(p, 1-p) . table . (q, 1-q); broadcasts over arrays of p and q."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    return (
        p * q * table[0, 0]
        + p * (1 - q) * table[0, 1]
        + (1 - p) * q * table[1, 0]
        + (1 - p) * (1 - q) * table[1, 1]
    )


def mixed_payoff(game: GameMatrix, dist: EprDistribution, s: MixedStrategyPair) -> tuple[float, float]:
    table = pure_payoffs(game, dist)
    return float(bilinear(table.alice, s.p, s.q)), float(bilinear(table.bob, s.p, s.q))


def reduce_symmetric(alpha: float, beta: float, gamma: float, delta: float) -> GameMatrix:
    """Block-constant game that collapses to the bimatrix
    ((alpha, alpha), (beta, gamma); (gamma, beta), (delta, delta)) for every
    normalized distribution."""
    a = np.repeat([alpha, beta, gamma, delta], 4)
    b = np.repeat([alpha, gamma, beta, delta], 4)
    return GameMatrix(a, b)
