import math

import numpy as np
import pytest

from cascade_rabi.dynamics import rotating_frame_hamiltonian, sector_hamiltonian
from cascade_rabi.errors import InvalidAmplitudes, InvalidInput, NonHermitianInput
from cascade_rabi.linalg import (
    as_amplitudes,
    basis_state,
    hermitian_eigensystem,
    hermiticity_residual,
    matrix_exponential_propagate,
    orthogonality_defect,
    propagate_on_grid,
    reconstruction_residual,
)
from cascade_rabi.schema import SectorParams, SemiclassicalParams
from conftest import random_hermitian, random_state


def test_diagonal_eigensystem():
    system = hermitian_eigensystem(np.diag([-3.0, -1.0, 1.0, 3.0]))
    np.testing.assert_allclose(system.eigenvalues, [-3, -1, 1, 3], atol=1e-15)
    np.testing.assert_allclose(system.eigenvectors, np.eye(4), atol=1e-15)


def test_diagonal_eigensystem_sorts_eigenvalues():
    system = hermitian_eigensystem(np.diag([3.0, -1.0, 1.0, -3.0]))
    np.testing.assert_allclose(system.eigenvalues, [-3, -1, 1, 3], atol=1e-15)
    expected = np.eye(4)[:, [3, 1, 2, 0]]
    np.testing.assert_allclose(system.eigenvectors, expected, atol=1e-15)


def test_resonant_rotating_frame_spectrum():
    h = rotating_frame_hamiltonian(SemiclassicalParams.from_detuning(kappa=1.0))
    system = hermitian_eigensystem(h)
    np.testing.assert_allclose(system.eigenvalues, [-3, -1, 1, 3], atol=1e-12)


def test_vacuum_sector_spectrum():
    system = hermitian_eigensystem(sector_hamiltonian(SectorParams(n=0, g=1.0)))
    root10 = math.sqrt(10)
    np.testing.assert_allclose(system.eigenvalues, [-root10, 0, 0, root10], atol=1e-12)


def test_eigensystem_invariants(rng):
    for _ in range(20):
        h = random_hermitian(rng, scale=rng.uniform(0.1, 10))
        system = hermitian_eigensystem(h)
        v = system.eigenvectors
        norm = np.max(np.abs(h))
        assert np.all(np.diff(system.eigenvalues) >= 0)
        assert np.max(np.abs(v.conj().T @ v - np.eye(4))) < 1e-12
        assert np.max(np.abs(h @ v - v * system.eigenvalues)) < 1e-11 * norm
        assert reconstruction_residual(h, system) < 1e-11 * norm


def test_eigenvector_phase_convention(rng):
    h = random_hermitian(rng)
    first = hermitian_eigensystem(h).eigenvectors
    for column in first.T:
        pivot = int(np.argmax(np.abs(column)))
        assert column[pivot].imag == 0.0
        assert column[pivot].real > 0
    np.testing.assert_array_equal(first, hermitian_eigensystem(h.copy()).eigenvectors)


def test_sizes_below_four():
    system = hermitian_eigensystem([[0.0, 2.0, 0.0], [2.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    np.testing.assert_allclose(system.eigenvalues, [-2, 1, 2], atol=1e-14)
    assert hermitian_eigensystem([[5.0]]).eigenvalues.tolist() == [5.0]


def test_non_hermitian_rejected():
    m = np.zeros((4, 4), dtype=complex)
    m[0, 1] = 1.0
    assert hermiticity_residual(m) == 1.0
    with pytest.raises(NonHermitianInput):
        hermitian_eigensystem(m)
    with pytest.raises(NonHermitianInput):
        matrix_exponential_propagate(m, basis_state(1), 1.0)


def test_non_finite_rejected():
    m = np.eye(4)
    m[2, 2] = np.nan
    with pytest.raises(InvalidInput):
        hermitian_eigensystem(m)


def test_zero_hamiltonian_is_identity(rng):
    psi0 = random_state(rng)
    psi = matrix_exponential_propagate(np.zeros((4, 4)), psi0, 3.7)
    np.testing.assert_allclose(psi, psi0, atol=1e-15)


def test_diagonal_phase():
    t = 0.83
    h = np.diag([-3.0, -1.0, 1.0, 3.0])
    psi = matrix_exponential_propagate(h, basis_state(1), t)
    np.testing.assert_allclose(psi, [np.exp(3j * t), 0, 0, 0], atol=1e-15)


def test_resonant_half_period_transfers_population():
    h = rotating_frame_hamiltonian(SemiclassicalParams.from_detuning(kappa=1.0))
    psi = matrix_exponential_propagate(h, basis_state(1), math.pi / 2)
    assert abs(abs(psi[3]) ** 2 - 1) < 1e-12


def test_unitarity_and_semigroup(rng):
    for _ in range(20):
        h = random_hermitian(rng)
        psi0 = random_state(rng)
        t1, t2 = rng.uniform(-5, 5, size=2)
        psi1 = matrix_exponential_propagate(h, psi0, t1)
        assert abs(np.linalg.norm(psi1) - 1) < 1e-12
        both = matrix_exponential_propagate(h, psi1, t2)
        direct = matrix_exponential_propagate(h, psi0, t1 + t2)
        np.testing.assert_allclose(both, direct, atol=1e-10)


def test_propagate_on_grid_matches_single_points(rng):
    h = random_hermitian(rng)
    psi0 = random_state(rng)
    times = np.linspace(0, 4, 9)
    amplitudes = propagate_on_grid(h, psi0, times)
    np.testing.assert_array_equal(amplitudes[0], psi0)
    for t, row in zip(times[1:], amplitudes[1:]):
        single = matrix_exponential_propagate(h, psi0, t)
        np.testing.assert_allclose(row, single, atol=1e-13)


def test_orthogonality_defect(rng):
    assert orthogonality_defect(np.eye(4)) == 0.0
    assert orthogonality_defect(2 * np.eye(4)) == 3.0
    q, _ = np.linalg.qr(rng.normal(size=(4, 4)))
    assert orthogonality_defect(q) < 1e-12


def test_amplitude_validation():
    with pytest.raises(InvalidAmplitudes):
        as_amplitudes([1.0, 1.0, 0.0, 0.0])
    with pytest.raises(InvalidAmplitudes):
        as_amplitudes([1.0, 0.0, 0.0])
    with pytest.raises(InvalidAmplitudes):
        as_amplitudes([np.nan, 0.0, 0.0, 0.0])
    with pytest.raises(InvalidInput):
        basis_state(0)
    assert basis_state(3).tolist() == [0, 0, 1, 0]
