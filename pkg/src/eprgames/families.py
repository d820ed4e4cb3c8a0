"""Games in which the pair (1, 1/2) is an equilibrium exactly when CHSH is violated.

Bob's coefficients must satisfy b1 = b2 = b5 = b6 and b3 = b4 = b7 = b8,
which makes Bob indifferent at p = 1. Alice's seven free coefficients
(a1, a4, a5, a8, a12, a14, a15) fix the other nine so that Alice's bracket
at (1, 1/2) equals 2 - Delta (case A, Delta >= 0) or 2 + Delta (case B,
Delta < 0) for every no-signalling distribution.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .game import GameMatrix
from .nash import nash_brackets_one_half
from .probability import EprDistribution, chsh_delta_mu, complete_mu_array, sample_valid_mu

FAMILY_TOL = 1e-12
MEMBERSHIP_TOL = 1e-9


class Case(enum.Enum):
    NonNegativeDelta = "A"
    NegativeDelta = "B"

    @classmethod
    def parse(cls, value) -> "Case":
        if isinstance(value, cls):
            return value
        text = str(value).strip()
        for case in cls:
            if text in (case.value, case.name, case.value.lower()):
                return case
        raise ValueError(f"unknown case {value!r}; use 'A' (Delta >= 0) or 'B' (Delta < 0)")

    @property
    def delta_sign(self) -> int:
        """Alice's bracket is 2 - sign * Delta."""
        return 1 if self is Case.NonNegativeDelta else -1


# 1-based indices
FREE_A = (1, 4, 5, 8, 12, 14, 15)
DEPENDENT_A = (2, 3, 6, 7, 9, 10, 11, 13, 16)
B_TOP = (1, 2, 5, 6)
B_BOTTOM = (3, 4, 7, 8)
B_REST = tuple(range(9, 17))

# dependent a = _A_COEFF @ free_a + offset; rows follow DEPENDENT_A,
# columns follow FREE_A. The linear part is the same in both cases.
_A_COEFF = np.array(
    [
        # a1 a4 a5 a8 a12 a14 a15
        [0, 0, -1, 0, 1, 0, 1],  # a2
        [1, 1, 1, 0, -1, 0, -1],  # a3
        [0, 1, 1, 1, -1, 0, -1],  # a6
        [0, -1, 0, 0, 1, 0, 1],  # a7
        [1, 1, 1, 1, -1, -1, -1],  # a9
        [0, 1, 0, 1, 0, -1, 0],  # a10
        [1, 0, 1, 0, 0, 0, -1],  # a11
        [0, -1, 0, -1, 1, 1, 1],  # a13
        [0, 1, 0, 1, -1, 0, 0],  # a16
    ],
    dtype=float,
)
_A_OFFSET = {
    Case.NonNegativeDelta: np.array([0, -4, -4, 0, -4, 0, 0, 4, 0], dtype=float),
    Case.NegativeDelta: np.array([-4, 8, 8, -4, 12, 4, 4, -8, 4], dtype=float),
}


def _vector(values, size, name) -> tuple[float, ...]:
    out = tuple(float(v) for v in values)
    if len(out) != size:
        raise ValueError(f"{name} needs {size} values, got {len(out)}")
    if not all(np.isfinite(out)):
        raise ValueError(f"{name} must be finite")
    return out


@dataclass(frozen=True)
class FamilyParams:
    free_a: tuple[float, ...]  # a1, a4, a5, a8, a12, a14, a15
    b_top: float = 1.0
    b_bottom: float = 1.0
    b_rest: tuple[float, ...] = (1.0,) * 8  # b9..b16
    case: Case = Case.NonNegativeDelta

    def __post_init__(self):
        object.__setattr__(self, "free_a", _vector(self.free_a, 7, "free_a"))
        object.__setattr__(self, "b_rest", _vector(self.b_rest, 8, "b_rest"))
        b_top, b_bottom = _vector((self.b_top, self.b_bottom), 2, "b_top/b_bottom")
        object.__setattr__(self, "b_top", b_top)
        object.__setattr__(self, "b_bottom", b_bottom)
        object.__setattr__(self, "case", Case.parse(self.case))

    def to_dict(self) -> dict:
        return {
            "case": self.case.value,
            "free_a": list(self.free_a),
            "b_top": self.b_top,
            "b_bottom": self.b_bottom,
            "b_rest": list(self.b_rest),
        }


def generate(params: FamilyParams) -> GameMatrix:
    free = np.array(params.free_a)
    a = np.empty(16)
    a[np.array(FREE_A) - 1] = free
    a[np.array(DEPENDENT_A) - 1] = _A_COEFF @ free + _A_OFFSET[params.case]
    b = np.empty(16)
    b[np.array(B_TOP) - 1] = params.b_top
    b[np.array(B_BOTTOM) - 1] = params.b_bottom
    b[np.array(B_REST) - 1] = params.b_rest
    return GameMatrix(a, b)


def example_game(case) -> GameMatrix:
    """The family member with every free constant and every b equal to 1."""
    return generate(FamilyParams(free_a=(1.0,) * 7, case=Case.parse(case)))


@dataclass(frozen=True)
class FamilyVerification:
    case: Case
    samples: int
    seed: int
    max_residual_A: float
    max_residual_B: float
    tol: float
    # (mu, bracket_A, bracket_B, delta) of the worst sample, for diagnostics
    worst: Optional[dict] = field(default=None, compare=False)

    @property
    def passed(self) -> bool:
        return self.max_residual_A < self.tol and self.max_residual_B < self.tol

    def to_dict(self) -> dict:
        return {
            "case": self.case.value,
            "samples": self.samples,
            "seed": self.seed,
            "max_residual_A": self.max_residual_A,
            "max_residual_B": self.max_residual_B,
            "tol": self.tol,
            "passed": self.passed,
            "worst": self.worst,
        }


def verify_family(game: GameMatrix, case, samples: int = 1000, seed: int = 0, tol: float = FAMILY_TOL) -> FamilyVerification:
    """Check the bracket identities on ``samples`` rejection-sampled valid distributions.

    Failure is reported, not raised: it means the game is not in the family.
    """
    case = Case.parse(case)
    rng = np.random.default_rng(seed)
    mus = sample_valid_mu(rng, samples)
    worst_a = worst_b = worst_score = 0.0
    worst = None
    for mu in mus:
        dist = EprDistribution(complete_mu_array(mu))
        br = nash_brackets_one_half(game, dist)
        delta = chsh_delta_mu(dist)
        res_a = abs(br.bracket_A - (2.0 - case.delta_sign * delta))
        res_b = abs(br.bracket_B)
        if worst is None or max(res_a, res_b) > worst_score:
            worst_score = max(res_a, res_b)
            worst = {"mu": mu.tolist(), "bracket_A": br.bracket_A, "bracket_B": br.bracket_B, "delta": delta}
        worst_a = max(worst_a, res_a)
        worst_b = max(worst_b, res_b)
    return FamilyVerification(case, len(mus), seed, worst_a, worst_b, tol, worst)


def family_residuals(game: GameMatrix, case) -> tuple[np.ndarray, np.ndarray]:
    """Residuals of the nine dependent-a equations and the six b equalities."""
    case = Case.parse(case)
    free = game.a[np.array(FREE_A) - 1]
    dep = game.a[np.array(DEPENDENT_A) - 1]
    res_a = dep - (_A_COEFF @ free + _A_OFFSET[case])
    b = game.b
    top = b[np.array(B_TOP) - 1]
    bottom = b[np.array(B_BOTTOM) - 1]
    res_b = np.concatenate([top[1:] - top[0], bottom[1:] - bottom[0]])
    return res_a, res_b


def membership_test(game: GameMatrix, tol: float = MEMBERSHIP_TOL) -> Optional[tuple[Case, FamilyParams]]:
    """Recover (case, params) if ``game`` belongs to either family, else None."""
    for case in Case:
        res_a, res_b = family_residuals(game, case)
        if np.all(np.abs(res_a) < tol) and np.all(np.abs(res_b) < tol):
            params = FamilyParams(
                free_a=tuple(game.a[np.array(FREE_A) - 1]),
                b_top=float(game.b[B_TOP[0] - 1]),
                b_bottom=float(game.b[B_BOTTOM[0] - 1]),
                b_rest=tuple(game.b[np.array(B_REST) - 1]),
                case=case,
            )
            return case, params
    return None

