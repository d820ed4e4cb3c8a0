"""Two-player games played over EPR joint probabilities."""

from .families import Case, FamilyParams, example_game, generate, membership_test, verify_family
from .game import GameMatrix, MixedStrategyPair, PayoffTable, mixed_payoff, pure_payoffs, reduce_symmetric
from .montecarlo import SimulationSummary, simulate
from .nash import BracketValues, NashReport, brute_force_nash, check_half_half_degeneracy, is_nash, nash_brackets_one_half
from .probability import (
    ConstraintReport,
    CorrelationSet,
    EprDistribution,
    IndependentProbs,
    bell_discriminant,
    chsh_delta_mu,
    complete_from_independent,
    correlations,
    validate,
)
from .quantum import (
    SINGLET,
    TSIRELSON,
    LocalModel,
    MeasurementConfig,
    born_distribution,
    local_deterministic_mixture,
    max_chsh_config,
)

__all__ = [
    "SINGLET", "TSIRELSON", "BracketValues", "Case", "ConstraintReport", "CorrelationSet", "EprDistribution", "FamilyParams",
    "GameMatrix", "IndependentProbs", "LocalModel", "MeasurementConfig", "MixedStrategyPair", "NashReport",
    "PayoffTable", "SimulationSummary", "bell_discriminant", "born_distribution", "brute_force_nash",
    "check_half_half_degeneracy", "chsh_delta_mu", "complete_from_independent", "correlations",
    "example_game", "generate", "is_nash", "local_deterministic_mixture", "max_chsh_config",
    "membership_test", "mixed_payoff", "nash_brackets_one_half", "pure_payoffs", "reduce_symmetric",
    "simulate", "validate", "verify_family",
]
