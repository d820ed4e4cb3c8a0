import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eprgames.probability import bell_discriminant, chsh_delta_mu, constraint_residuals, correlations, validate
from eprgames.quantum import (
    DETERMINISTIC_ASSIGNMENTS,
    SINGLET,
    TSIRELSON,
    LocalModel,
    MeasurementConfig,
    born_distribution,
    local_deterministic_mixture,
    max_chsh_config,
)

from conftest import ALWAYS_PLUS, UNIFORM

Z = np.array([[1, 0], [0, -1]], dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
I2 = np.eye(2)

angle = st.floats(-2 * math.pi, 2 * math.pi, allow_nan=False)
angles4 = st.tuples(angle, angle, angle, angle)
schmidt = st.floats(0.0, math.pi / 2)


def projector(theta, outcome):
    return (I2 + outcome * (math.cos(theta) * Z + math.sin(theta) * X)) / 2


def state_vector(state):
    if state == SINGLET:
        return np.array([0, 1, -1, 0], dtype=complex) / math.sqrt(2)
    return np.array([math.cos(state / 2), 0, 0, math.sin(state / 2)], dtype=complex)


def oracle_eps(state, angles):
    """Born rule on the full two-qubit state vector."""
    psi = state_vector(state)
    a, b = angles[:2], angles[2:]
    eps = []
    for i, j in ((0, 0), (0, 1), (1, 0), (1, 1)):
        for x, y in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
            op = np.kron(projector(a[i], x), projector(b[j], y))
            eps.append((psi.conj() @ op @ psi).real)
    return np.array(eps)


@given(angles4)
def test_singlet_matches_projector_oracle(angles):
    dist = born_distribution(MeasurementConfig(SINGLET, angles))
    np.testing.assert_allclose(dist.eps, oracle_eps(SINGLET, angles), atol=1e-12)


@given(schmidt, angles4)
def test_schmidt_state_matches_projector_oracle(g, angles):
    dist = born_distribution(MeasurementConfig(g, angles))
    np.testing.assert_allclose(dist.eps, oracle_eps(g, angles), atol=1e-12)


@given(angle, angle)
def test_singlet_correlation_is_minus_cos(ta, tb):
    c = correlations(born_distribution(MeasurementConfig(SINGLET, (ta, ta, tb, tb))))
    assert c.e11 == pytest.approx(-math.cos(ta - tb), abs=1e-12)


@given(st.one_of(st.just(SINGLET), schmidt), angles4)
def test_born_output_is_no_signalling(state, angles):
    dist = born_distribution(MeasurementConfig(state, angles))
    norm, loc = constraint_residuals(dist.eps)
    assert np.abs(norm).max() < 1e-12 and np.abs(loc).max() < 1e-12
    assert validate(dist, 1e-12).is_valid
    assert abs(chsh_delta_mu(dist)) <= TSIRELSON + 1e-9


def test_aligned_singlet_is_anticorrelated():
    c = correlations(born_distribution(MeasurementConfig(SINGLET, (0.3, 1.1, 0.3, 1.1))))
    # aligned only within blocks 11 and 22
    assert c.e11 == pytest.approx(-1, abs=1e-15) and c.e22 == pytest.approx(-1, abs=1e-15)
    c = correlations(born_distribution(MeasurementConfig(SINGLET, (0.7,) * 4)))
    assert c.as_tuple() == pytest.approx((-1, -1, -1, -1), abs=1e-15)
    assert c.delta == pytest.approx(-2, abs=1e-15)


def test_textbook_angles_reach_tsirelson():
    dist = born_distribution(MeasurementConfig(SINGLET, (0, math.pi / 2, math.pi / 4, -math.pi / 4)))
    assert abs(abs(correlations(dist).delta) - TSIRELSON) < 1e-9
    assert bell_discriminant(dist) == pytest.approx(2 - TSIRELSON, abs=1e-12)


def test_three_quarter_pi_setting_is_not_optimal():
    # B2 = 3pi/4 measures the same axis as -pi/4 with outcomes swapped, flipping e12 and e22
    dist = born_distribution(MeasurementConfig(SINGLET, (0, math.pi / 2, math.pi / 4, 3 * math.pi / 4)))
    assert correlations(dist).delta == pytest.approx(0, abs=1e-12)


@given(angles4)
def test_product_state_obeys_chsh(angles):
    assert abs(chsh_delta_mu(born_distribution(MeasurementConfig(0.0, angles)))) <= 2 + 1e-12


@pytest.mark.parametrize("sign", [1, -1])
def test_max_chsh_config(sign):
    config = max_chsh_config(sign)
    dist = born_distribution(config)
    assert abs(correlations(dist).delta - sign * TSIRELSON) < 1e-9
    assert validate(dist, 1e-12).is_valid
    assert max_chsh_config(sign) == config


@pytest.mark.parametrize(
    "state, angles",
    [("triplet", (0, 0, 0, 0)), (2.0, (0, 0, 0, 0)), (SINGLET, (0, 0, math.inf, 0)), (SINGLET, (0, 0, 0))],
)
def test_config_rejects_bad_input(state, angles):
    with pytest.raises(ValueError):
        MeasurementConfig(state, angles)


class TestLocalModel:
    def test_point_mass_all_plus(self):
        dist = local_deterministic_mixture(LocalModel.point_mass((1, 1, 1, 1)))
        assert dist == ALWAYS_PLUS
        assert correlations(dist).delta == 2

    def test_uniform_weights(self):
        dist = local_deterministic_mixture(LocalModel(np.full(16, 1 / 16)))
        np.testing.assert_allclose(dist.eps, UNIFORM.eps, atol=1e-15)
        assert correlations(dist).delta == pytest.approx(0, abs=1e-15)

    def test_point_mass_flipped_b2(self):
        c = correlations(local_deterministic_mixture(LocalModel.point_mass((1, 1, 1, -1))))
        assert c.as_tuple() == (1, -1, 1, -1)
        assert c.delta == 2

    @settings(max_examples=200)
    @given(st.lists(st.floats(0, 1), min_size=16, max_size=16).filter(lambda w: sum(w) > 1e-3))
    def test_bound_and_locality(self, w):
        w = np.array(w) / np.sum(w)
        dist = local_deterministic_mixture(LocalModel(w))
        assert abs(correlations(dist).delta) <= 2 + 1e-12
        norm, loc = constraint_residuals(dist.eps)
        assert np.abs(loc).max() < 1e-15 and np.abs(norm).max() < 1e-12

    def test_linear_in_weights(self, rng):
        for _ in range(50):
            w1, w2 = rng.dirichlet(np.ones(16)), rng.dirichlet(np.ones(16))
            lam = rng.random()
            mixed = local_deterministic_mixture(LocalModel(lam * w1 + (1 - lam) * w2)).eps
            separate = lam * local_deterministic_mixture(LocalModel(w1)).eps + (1 - lam) * local_deterministic_mixture(LocalModel(w2)).eps
            np.testing.assert_allclose(mixed, separate, atol=1e-12)

    @pytest.mark.parametrize("w", [np.full(16, 0.1), np.r_[-0.5, 1.5, np.zeros(14)], np.zeros(15)])
    def test_rejects_bad_weights(self, w):
        with pytest.raises(ValueError):
            LocalModel(w)

    def test_every_vertex_saturates_at_most_two(self):
        deltas = {correlations(local_deterministic_mixture(LocalModel.point_mass(s))).delta for s in DETERMINISTIC_ASSIGNMENTS}
        assert deltas == {-2.0, 2.0}
