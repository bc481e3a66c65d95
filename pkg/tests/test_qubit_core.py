import math

import numpy as np
import pytest

from blochcurve import (
    BlochVector,
    ContractViolationError,
    InvalidArgumentError,
    NumericalConsistencyError,
    QubitState,
    bloch_vector,
    expectation,
    fidelity,
    pauli_compose,
    pauli_decompose,
    state_from_angles,
)

RNG = np.random.default_rng(42)


def random_state(rng):
    vec = rng.normal(size=2) + 1j * rng.normal(size=2)
    return QubitState.from_vector(vec, renormalize=True)


class TestQubitState:
    def test_accepts_normalized(self):
        s = QubitState(1.0, 0.0)
        assert s.alpha == 1.0 + 0.0j

    def test_rejects_unnormalized(self):
        with pytest.raises(ContractViolationError):
            QubitState(1.0, 1.0)

    def test_rejects_nonfinite(self):
        with pytest.raises(InvalidArgumentError):
            QubitState(math.inf, 0.0)

    def test_from_vector_renormalizes_on_request(self):
        s = QubitState.from_vector([3.0, 4.0j], renormalize=True)
        assert abs(s.alpha - 0.6) < 1e-15
        assert abs(s.beta - 0.8j) < 1e-15

    def test_from_vector_strict_by_default(self):
        with pytest.raises(ContractViolationError):
            QubitState.from_vector([3.0, 4.0])

    def test_vector_round_trip(self):
        s = state_from_angles(1.1, 0.4)
        again = QubitState.from_vector(s.vector())
        assert fidelity(s, again) == pytest.approx(1.0, abs=1e-15)


def test_bloch_of_angle_state_matches_spherical_coordinates():
    for theta, phi in [(0.0, 0.0), (math.pi / 3, 1.2), (2.2, -0.7), (math.pi, 2.0)]:
        a = bloch_vector(state_from_angles(theta, phi))
        expected = (
            math.sin(theta) * math.cos(phi),
            math.sin(theta) * math.sin(phi),
            math.cos(theta),
        )
        assert np.allclose(np.asarray(a), expected, atol=1e-12)


def test_bloch_vector_unit_norm():
    for _ in range(50):
        a = np.asarray(bloch_vector(random_state(RNG)))
        assert abs(float(a @ a) - 1.0) < 1e-12


def test_bloch_vector_rejects_unnormalized_sequence():
    with pytest.raises(ContractViolationError):
        bloch_vector([0.5, 0.5])


def test_pauli_round_trip_random():
    # decompose(compose(...)) must be the identity well below coefficient scale
    for _ in range(100):
        h0 = float(RNG.uniform(-3, 3))
        h = RNG.uniform(-3, 3, size=3)
        h0_back, h_back = pauli_decompose(pauli_compose(h0, h))
        assert abs(h0_back - h0) < 1e-14
        assert np.max(np.abs(h_back - h)) < 1e-14


def test_compose_decompose_matrix_round_trip():
    for _ in range(20):
        mat = pauli_compose(float(RNG.uniform(-2, 2)), RNG.uniform(-2, 2, size=3))
        rebuilt = pauli_compose(*pauli_decompose(mat))
        assert np.max(np.abs(rebuilt - mat)) < 1e-14


def test_decompose_rejects_non_hermitian():
    with pytest.raises(ContractViolationError):
        pauli_decompose(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_decompose_rejects_wrong_shape():
    with pytest.raises(InvalidArgumentError):
        pauli_decompose(np.eye(3))


def test_expectation_equals_scalar_plus_bloch_inner_product():
    for _ in range(100):
        q0 = float(RNG.uniform(-3, 3))
        q = RNG.uniform(-3, 3, size=3)
        state = random_state(RNG)
        a = np.asarray(bloch_vector(state))
        val = expectation(pauli_compose(q0, q), state)
        assert abs(val - (q0 + float(a @ q))) < 1e-12


def test_expectation_rejects_imaginary_residue():
    antihermitian = np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex)
    state = QubitState.from_vector([1.0, 1.0j], renormalize=True)
    with pytest.raises(NumericalConsistencyError):
        expectation(antihermitian, state)


def test_fidelity_bounds_and_symmetry():
    a, b = random_state(RNG), random_state(RNG)
    f = fidelity(a, b)
    assert 0.0 <= f <= 1.0 + 1e-12
    assert f == pytest.approx(fidelity(b, a), abs=1e-15)
    assert fidelity(a, a) == pytest.approx(1.0, abs=1e-15)


def test_fidelity_ignores_global_phase():
    s = state_from_angles(0.9, 0.3)
    rotated = QubitState.from_vector(np.exp(0.77j) * s.vector(), renormalize=True)
    assert fidelity(s, rotated) == pytest.approx(1.0, abs=1e-12)


def test_bloch_vector_accepts_plain_sequences():
    a = bloch_vector([1.0, 0.0])
    assert isinstance(a, BlochVector)
    assert np.allclose(np.asarray(a), (0.0, 0.0, 1.0))
