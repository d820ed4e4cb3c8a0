"""Physical sources of EPR probabilities.

Quantum: two qubits in the singlet or in cos(g/2)|00> + sin(g/2)|11>,
measured with spin observables cos(t) Z + sin(t) X (directions in the
x-z plane). Outcome +1 is the projector onto the +1 eigenvector.

Classical: convex mixtures of the 16 deterministic local assignments
(value of S1, S2, S1', S2').
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .probability import EprDistribution, correlations

SINGLET = "singlet"
TSIRELSON = 2.0 * math.sqrt(2.0)
ANGLE_NAMES = ("A1", "A2", "B1", "B2")

# Alice/Bob direction index for each block, in block order.
_BLOCK_DIRECTIONS = ((0, 0), (0, 1), (1, 0), (1, 1))
_OUTCOMES = ((1, 1), (1, -1), (-1, 1), (-1, -1))

# (S1, S2, S1', S2') tuples in product order, +1 first
DETERMINISTIC_ASSIGNMENTS = tuple(itertools.product((1, -1), repeat=4))


@dataclass(frozen=True)
class MeasurementConfig:
    """Shared state plus the four measurement angles (A1, A2, B1, B2) in radians.

    ``state`` is ``"singlet"`` or a Schmidt angle in [0, pi/2].
    """

    state: Union[str, float]
    angles: tuple[float, float, float, float]

    def __post_init__(self):
        angles = tuple(float(a) for a in self.angles)
        if len(angles) != 4:
            raise ValueError(f"need 4 angles (A1, A2, B1, B2), got {len(angles)}")
        if not all(math.isfinite(a) for a in angles):
            raise ValueError(f"angles must be finite, got {angles}")
        object.__setattr__(self, "angles", angles)
        if isinstance(self.state, str):
            if self.state != SINGLET:
                raise ValueError(f"unknown state tag {self.state!r}; use 'singlet' or a Schmidt angle")
        else:
            g = float(self.state)
            if not (math.isfinite(g) and 0.0 <= g <= math.pi / 2):
                raise ValueError(f"Schmidt angle must lie in [0, pi/2], got {self.state!r}")
            object.__setattr__(self, "state", g)

    def with_angles(self, angles: Sequence[float]) -> "MeasurementConfig":
        return MeasurementConfig(self.state, tuple(angles))


def _moments(state, ta: np.ndarray, tb: np.ndarray):
    """<A>, <B>, <AB> for observables at angles ta (Alice) and tb (Bob)."""
    ta, tb = np.broadcast_arrays(ta, tb)
    if state == SINGLET:
        zero = np.zeros(ta.shape)
        return zero, zero, -np.cos(ta - tb)
    g = float(state)
    # <ZZ> = 1, <XX> = sin g, <ZX> = <XZ> = 0, <Z x 1> = <1 x Z> = cos g
    ma = math.cos(g) * np.cos(ta)
    mb = math.cos(g) * np.cos(tb)
    corr = np.cos(ta) * np.cos(tb) + math.sin(g) * np.sin(ta) * np.sin(tb)
    return ma, mb, corr


def born_eps(state, angles: np.ndarray) -> np.ndarray:
    """Vectorised Born-rule probabilities; ``angles`` has shape (..., 4)."""
    angles = np.asarray(angles, dtype=float)
    out = np.empty(angles.shape[:-1] + (16,))
    for k, (i, j) in enumerate(_BLOCK_DIRECTIONS):
        ma, mb, corr = _moments(state, angles[..., i], angles[..., 2 + j])
        for m, (x, y) in enumerate(_OUTCOMES):
            out[..., 4 * k + m] = 0.25 * (1.0 + x * ma + y * mb + x * y * corr)
    return out


def born_distribution(config: MeasurementConfig) -> EprDistribution:
    return EprDistribution(born_eps(config.state, np.array(config.angles)))


def chsh_of_angles(state, angles: np.ndarray) -> np.ndarray:
    """CHSH sum for a batch of angle vectors, shape (..., 4) -> (...)."""
    angles = np.asarray(angles, dtype=float)
    total = 0.0
    for sign, (i, j) in zip((1.0, 1.0, 1.0, -1.0), _BLOCK_DIRECTIONS):
        total = total + sign * _moments(state, angles[..., i], angles[..., 2 + j])[2]
    return total


def max_chsh_config(sign: int = 1, seed: int = 0, grid: int = 24, restarts: int = 8) -> MeasurementConfig:
    """Singlet angles pushing the CHSH sum to ``sign`` times its quantum maximum.

    Coarse grid over (A2, B1, B2) with A1 = 0 (only differences matter for
    the singlet), seeded random restarts, then Nelder-Mead refinement of
    the best candidates.
    """
    from scipy.optimize import minimize

    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    ticks = np.linspace(-np.pi, np.pi, grid, endpoint=False)
    mesh = np.stack(np.meshgrid(ticks, ticks, ticks, indexing="ij"), axis=-1).reshape(-1, 3)
    rng = np.random.default_rng(seed)
    starts = np.vstack([mesh, rng.uniform(-np.pi, np.pi, size=(restarts, 3))])
    full = np.hstack([np.zeros((len(starts), 1)), starts])
    score = sign * chsh_of_angles(SINGLET, full)
    best = starts[np.argsort(score)[::-1][:restarts]]

    def objective(x):
        return -sign * float(chsh_of_angles(SINGLET, np.concatenate([[0.0], x])))

    results = [
        minimize(objective, x0, method="Nelder-Mead", options={"xatol": 1e-12, "fatol": 1e-15, "maxiter": 4000})
        for x0 in best
    ]
    x = min(results, key=lambda r: r.fun).x
    wrapped = np.mod(np.concatenate([[0.0], x]) + np.pi, 2 * np.pi) - np.pi
    config = MeasurementConfig(SINGLET, tuple(wrapped))
    delta = correlations(born_distribution(config)).delta
    if abs(delta - sign * TSIRELSON) > 1e-9:
        raise RuntimeError(f"CHSH search stalled at {delta!r}")
    return config


@dataclass(frozen=True, eq=False)
class LocalModel:
    """Weights over DETERMINISTIC_ASSIGNMENTS."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=float).reshape(-1)
        if w.shape != (16,):
            raise ValueError(f"LocalModel needs 16 weights, got {w.size}")
        if not np.all(np.isfinite(w)) or np.any(w < 0):
            raise ValueError("LocalModel weights must be finite and non-negative")
        if abs(w.sum() - 1.0) > 1e-9:
            raise ValueError(f"LocalModel weights must sum to 1, got {w.sum()!r}")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @classmethod
    def point_mass(cls, assignment: Sequence[int]) -> "LocalModel":
        w = np.zeros(16)
        w[DETERMINISTIC_ASSIGNMENTS.index(tuple(assignment))] = 1.0
        return cls(w)


def deterministic_vertices() -> np.ndarray:
    """Row s is the eps vector induced by deterministic assignment s."""
    rows = np.zeros((16, 16))
    for s, (a1, a2, b1, b2) in enumerate(DETERMINISTIC_ASSIGNMENTS):
        alice, bob = (a1, a2), (b1, b2)
        for k, (i, j) in enumerate(_BLOCK_DIRECTIONS):
            rows[s, 4 * k + _OUTCOMES.index((alice[i], bob[j]))] = 1.0
    return rows


def local_deterministic_mixture(model: LocalModel) -> EprDistribution:
    return EprDistribution(model.weights @ deterministic_vertices())
