import numpy as np
import pytest

from eprgames.probability import EprDistribution, complete_mu_array, sample_valid_mu

_ACCEPTANCE = []


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion."""

    def record(label: str, passed: bool, detail: str = ""):
        _ACCEPTANCE.append((label, bool(passed), detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {label}" + (f"  ({detail})" if detail else ""))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def valid_distributions(rng, n):
    return [EprDistribution(complete_mu_array(mu)) for mu in sample_valid_mu(rng, n)]


UNIFORM = EprDistribution(np.full(16, 0.25))
# both parties always report +1
ALWAYS_PLUS = EprDistribution([1, 0, 0, 0] * 4)
