"""Small dense Hermitian matrices: eigensystems, unitary propagation, diagnostics."""
from __future__ import annotations

import logging

import numpy as np
from numpy.typing import ArrayLike

from cascade_rabi.config import HERMITIAN_ATOL, NORM_ATOL
from cascade_rabi.errors import (
    ConvergenceFailure,
    InvalidAmplitudes,
    InvalidInput,
    NonHermitianInput,
)
from cascade_rabi.schema import EigenSystem

logger = logging.getLogger(__name__)

MAX_SIZE = 4


def _as_square(m: ArrayLike) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidInput(f"expected a square matrix, got shape {m.shape}")
    if not 1 <= m.shape[0] <= MAX_SIZE:
        raise InvalidInput(f"matrix size must be 1..{MAX_SIZE}, got {m.shape[0]}")
    if not np.all(np.isfinite(m)):
        raise InvalidInput("matrix has non-finite entries")
    return m


def hermiticity_residual(m: ArrayLike) -> float:
    m = np.asarray(m, dtype=complex)
    return float(np.max(np.abs(m - m.conj().T)))


def check_hermitian(m: ArrayLike) -> np.ndarray:
    """Return ``m`` as a complex array, raising NonHermitianInput if m != m^dagger."""
    m = _as_square(m)
    scale = max(1.0, float(np.max(np.abs(m))))
    residual = hermiticity_residual(m)
    if residual > HERMITIAN_ATOL * scale:
        raise NonHermitianInput(
            f"matrix is not Hermitian: max |m - m^dagger| = {residual:.3e}"
        )
    return m


def _fix_phases(vectors: np.ndarray) -> np.ndarray:
    # largest-magnitude component real and positive, ties to the lowest index
    fixed = vectors.copy()
    for k in range(fixed.shape[1]):
        column = fixed[:, k]
        magnitudes = np.abs(column)
        pivot = int(np.flatnonzero(magnitudes >= magnitudes.max() - 1e-12)[0])
        fixed[:, k] = column * (np.conj(column[pivot]) / magnitudes[pivot])
        fixed[pivot, k] = magnitudes[pivot]
    return fixed


def hermitian_eigensystem(m: ArrayLike) -> EigenSystem:
    """Eigenvalues ascending, orthonormal eigenvectors as columns.

    Phases are fixed so that output is reproducible: the largest-magnitude
    component of each eigenvector is real and positive.
    """
    m = check_hermitian(m)
    hermitian = 0.5 * (m + m.conj().T)
    try:
        eigenvalues, eigenvectors = np.linalg.eigh(hermitian)
    except np.linalg.LinAlgError as e:
        raise ConvergenceFailure(f"eigensolver did not converge: {e}") from e
    return EigenSystem(
        eigenvalues=eigenvalues.astype(float),
        eigenvectors=_fix_phases(eigenvectors),
    )


def reconstruction_residual(m: ArrayLike, system: EigenSystem) -> float:
    return float(np.max(np.abs(system.reconstruct() - np.asarray(m, dtype=complex))))


def orthogonality_defect(t: ArrayLike) -> float:
    """max |T^T T - I| over all entries."""
    t = np.asarray(t, dtype=float)
    return float(np.max(np.abs(t.T @ t - np.eye(t.shape[1]))))


def as_amplitudes(c: ArrayLike, size: int = 4) -> np.ndarray:
    c = np.asarray(c, dtype=complex)
    if c.shape != (size,):
        raise InvalidAmplitudes(f"expected {size} amplitudes, got shape {c.shape}")
    if not np.all(np.isfinite(c)):
        raise InvalidAmplitudes("amplitudes must be finite")
    norm = float(np.sum(np.abs(c) ** 2))
    if abs(norm - 1.0) > NORM_ATOL:
        raise InvalidAmplitudes(f"amplitudes are not normalized (|c|^2 = {norm!r})")
    return c


def basis_state(level: int, size: int = 4) -> np.ndarray:
    if not 1 <= level <= size:
        raise InvalidInput(f"level must be 1..{size}, got {level}")
    c = np.zeros(size, dtype=complex)
    c[level - 1] = 1.0
    return c


def propagator(system: EigenSystem, t: float) -> np.ndarray:
    """exp(-i H t) assembled from the eigensystem of H."""
    v = system.eigenvectors
    return (v * np.exp(-1j * system.eigenvalues * t)) @ v.conj().T


def matrix_exponential_propagate(h: ArrayLike, psi0: ArrayLike, t: float) -> np.ndarray:
    system = hermitian_eigensystem(h)
    psi0 = as_amplitudes(psi0, system.size)
    if t == 0:
        return psi0.copy()
    return propagator(system, t) @ psi0


def propagate_on_grid(h: ArrayLike, psi0: ArrayLike, times: ArrayLike) -> np.ndarray:
    """Amplitudes at every time, shape (len(times), size).

    Each row is evolved independently from t = 0.
    """
    system = hermitian_eigensystem(h)
    psi0 = as_amplitudes(psi0, system.size)
    return evolve_in_eigenbasis(system.eigenvalues, system.eigenvectors, psi0, times)


def evolve_in_eigenbasis(
    eigenvalues: np.ndarray,
    eigenvectors: np.ndarray,
    psi0: np.ndarray,
    times: ArrayLike,
) -> np.ndarray:
    """V diag(exp(-i lambda t)) V^dagger psi0 for a whole grid.

    Rows at t == 0 return psi0 exactly.
    """
    times = np.atleast_1d(np.asarray(times, dtype=float))
    coefficients = eigenvectors.conj().T @ psi0
    phases = np.exp(-1j * np.outer(times, eigenvalues))
    weighted = phases * coefficients
    # fixed summation order over eigenvalues, identical for every column
    amplitudes = np.zeros((times.shape[0], eigenvectors.shape[0]), dtype=complex)
    for k in range(eigenvalues.shape[0]):
        amplitudes += weighted[:, k, None] * eigenvectors[:, k]
    amplitudes[times == 0] = psi0
    return amplitudes
