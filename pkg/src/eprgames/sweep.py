"""Angle sweeps: CHSH sum, brackets and NE verdict along a path of measurement settings."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .game import GameMatrix, MixedStrategyPair
from .nash import NE_TOL, is_nash, nash_brackets_one_half
from .probability import bell_discriminant, chsh_delta_mu
from .quantum import ANGLE_NAMES, MeasurementConfig, born_distribution

SWEEP_HEADER = (
    "value", "theta_A1", "theta_A2", "theta_B1", "theta_B2",
    "delta", "discriminant", "bracket_A", "bracket_B",
    "is_ne", "is_strict_boundary", "binding",
)


@dataclass(frozen=True)
class SweepSpec:
    """Angle k is set to baseline_k + coeff_k * v for v in linspace(lo, hi, steps).

    ``terms`` pairs an angle name (A1, A2, B1, B2) with its coefficient;
    angles not named keep their baseline value.
    """

    baseline: MeasurementConfig
    terms: tuple[tuple[str, float], ...]
    lo: float
    hi: float
    steps: int
    game: GameMatrix
    pair: MixedStrategyPair = MixedStrategyPair(1.0, 0.5)
    tol: float = NE_TOL

    def __post_init__(self):
        if self.steps < 2:
            raise ValueError(f"steps must be >= 2, got {self.steps}")
        if not self.lo < self.hi:
            raise ValueError(f"need lo < hi, got [{self.lo}, {self.hi}]")
        if not self.terms:
            raise ValueError("sweep needs at least one angle")
        for name, _ in self.terms:
            if name not in ANGLE_NAMES:
                raise ValueError(f"unknown angle {name!r}; choose from {', '.join(ANGLE_NAMES)}")

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)

    def angles_at(self, v: float) -> tuple[float, ...]:
        angles = list(self.baseline.angles)
        for name, coeff in self.terms:
            angles[ANGLE_NAMES.index(name)] += coeff * v
        return tuple(float(x) for x in angles)


def parse_terms(text: str) -> tuple[tuple[str, float], ...]:
    """'B2' or 'A2:2,B1:1,B2:-1' -> ((name, coeff), ...)."""
    terms = []
    for chunk in text.split(","):
        name, _, coeff = chunk.strip().partition(":")
        terms.append((name.strip(), float(coeff) if coeff else 1.0))
    return tuple(terms)


def sweep_row(spec: SweepSpec, v: float) -> tuple:
    angles = spec.angles_at(v)
    dist = born_distribution(spec.baseline.with_angles(angles))
    br = nash_brackets_one_half(spec.game, dist)
    report = is_nash(spec.game, dist, spec.pair, spec.tol)
    return (
        float(v), *angles,
        chsh_delta_mu(dist), bell_discriminant(dist), br.bracket_A, br.bracket_B,
        report.is_ne, report.is_strict_boundary, ";".join(report.binding),
    )


def run_sweep(spec: SweepSpec) -> list[tuple]:
    """One row per step, in sweep order."""
    return [sweep_row(spec, v) for v in spec.values()]
