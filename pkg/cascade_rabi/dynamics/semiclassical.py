"""Four-level cascade atom driven by a classical monochromatic field.

The rotating frame removes the drive's time dependence. At resonance the
rotating-frame Hamiltonian is diagonalized by a closed-form rotation built
from six Euler angles; off resonance the numerical eigensystem is used.
"""
from __future__ import annotations

import logging
import math
from functools import lru_cache

import numpy as np
from numpy.typing import ArrayLike
from scipy.integrate import solve_ivp

from cascade_rabi.config import LAB_FRAME_ATOL, LAB_FRAME_RTOL
from cascade_rabi.errors import InvalidInput, IntegratorFailure
from cascade_rabi.linalg import (
    as_amplitudes,
    basis_state,
    evolve_in_eigenbasis,
    hermitian_eigensystem,
)
from cascade_rabi.schema import (
    CaseId,
    EulerAngles,
    ProbabilityTrace,
    SemiclassicalParams,
)
from cascade_rabi.spin import spin32_generators, to_level_order
from cascade_rabi.utils.grid import validate_grid

logger = logging.getLogger(__name__)


def lab_frame_hamiltonian(p: SemiclassicalParams, t: float) -> np.ndarray:
    """H(t) = omega0 J3 + kappa (J+ e^{-i Omega t} + J- e^{i Omega t}), level order."""
    ops = spin32_generators()
    phase = np.exp(-1j * p.omega * t)
    drive = ops.j_plus * phase + ops.j_minus * np.conj(phase)
    h = p.omega0 * ops.j3 + p.kappa * drive
    return to_level_order(h)


def rotating_frame_hamiltonian(p: SemiclassicalParams) -> np.ndarray:
    ops = spin32_generators()
    h = p.delta * ops.j3 + p.kappa * (ops.j_plus + ops.j_minus)
    return to_level_order(h).astype(complex)


def resonance_eigenvalues(kappa: float) -> np.ndarray:
    return kappa * np.array([-3.0, -1.0, 1.0, 3.0])


def semiclassical_euler_angles() -> EulerAngles:
    return EulerAngles(
        theta1=math.acos(-math.sqrt(2 / 5)),
        theta2=3 * math.pi / 4,
        theta3=-math.pi / 2,
        theta4=-math.asin(math.sqrt(3 / 8)),
        theta5=math.asin(math.sqrt(1 / 5)),
        theta6=math.pi / 3,
    )


def euler_rotation_matrix(a: EulerAngles) -> np.ndarray:
    """Orthogonal 4x4 rotation parametrized by six angles."""
    angles = a.as_array()
    if not np.all(np.isfinite(angles)):
        raise InvalidInput("Euler angles must be finite")
    s1, s2, s3, s4, s5, s6 = np.sin(angles)
    c1, c2, c3, c4, c5, c6 = np.cos(angles)

    # rows 2 and 3 share these combinations
    u2 = c1 * c2 * s3 - s2 * c3
    w2 = c1 * c2 * c3 + s2 * s3
    u3 = c1 * s2 * s3 + c2 * c3
    w3 = c1 * s2 * c3 - c2 * s3

    return np.array(
        [
            [
                c1 * c5 + s1 * s3 * s4 * s5,
                -c1 * s5 * s6 + s1 * c3 * c6 + s1 * s3 * s4 * c5 * s6,
                s1 * s3 * c4,
                -c1 * s5 * c6 - s1 * c3 * s6 + s1 * s3 * s4 * c5 * c6,
            ],
            [
                -s1 * c2 * c5 + u2 * s4 * s5,
                s1 * c2 * s5 * s6 + w2 * c6 + u2 * s4 * c5 * s6,
                u2 * c4,
                s1 * c2 * s5 * c6 - w2 * s6 + u2 * s4 * c5 * c6,
            ],
            [
                -s1 * s2 * c5 + u3 * s4 * s5,
                s1 * s2 * s5 * s6 + w3 * c6 + u3 * s4 * c5 * s6,
                u3 * c4,
                s1 * s2 * s5 * c6 - w3 * s6 + u3 * s4 * c5 * c6,
            ],
            [c4 * s5, c4 * c5 * s6, -s4, c4 * c5 * c6],
        ]
    )


@lru_cache(maxsize=1)
def _resonance_rotation() -> np.ndarray:
    # rows pair with eigenvalues (-3, -1, 1, 3) kappa
    rotation = euler_rotation_matrix(semiclassical_euler_angles())
    # row k satisfies T[k, 3 - j] = parity[k] * T[k, j] exactly, so Case IV
    # and mirror cases agree bit for bit
    parity = np.sign(rotation[:, 0] * rotation[:, 3])[:, None]
    half = (rotation[:, :2] + parity * rotation[:, :1:-1]) / 2
    rotation = np.hstack([half, parity * half[:, ::-1]])
    rotation.setflags(write=False)
    return rotation


def _eigenbasis(p: SemiclassicalParams) -> tuple[np.ndarray, np.ndarray]:
    if p.delta == 0.0:
        return resonance_eigenvalues(p.kappa), _resonance_rotation().T
    system = hermitian_eigensystem(rotating_frame_hamiltonian(p))
    return system.eigenvalues, system.eigenvectors


def semiclassical_amplitudes_on_grid(
    c0: ArrayLike, p: SemiclassicalParams, times: ArrayLike
) -> np.ndarray:
    """Rotating-frame amplitudes, shape (len(times), 4), evolved from t = 0."""
    c0 = as_amplitudes(c0)
    eigenvalues, eigenvectors = _eigenbasis(p)
    return evolve_in_eigenbasis(eigenvalues, eigenvectors, c0, times)


def evolve_amplitudes(c0: ArrayLike, p: SemiclassicalParams, t: float) -> np.ndarray:
    """T^-1 diag(exp(-i lambda_k t)) T c0 in the rotating frame."""
    return semiclassical_amplitudes_on_grid(c0, p, [t])[0]


def rabi_populations(kappa: float, t: ArrayLike) -> np.ndarray:
    """Binomial populations of Case I at resonance, shape (len(t), 4)."""
    x = np.atleast_1d(np.asarray(t, dtype=float)) * kappa
    c2, s2 = np.cos(x) ** 2, np.sin(x) ** 2
    return np.stack([c2**3, 3 * c2**2 * s2, 3 * c2 * s2**2, s2**3], axis=1)


def _initial_state(case: CaseId) -> np.ndarray:
    if case.quantized:
        raise InvalidInput(
            f"case {case.value} belongs to the quantized model (expected I-IV)"
        )
    return basis_state(case.level)


def probability_trace(
    case: CaseId, p: SemiclassicalParams, grid: ArrayLike
) -> ProbabilityTrace:
    case = CaseId(case)
    grid = validate_grid(grid)
    amplitudes = semiclassical_amplitudes_on_grid(_initial_state(case), p, grid)
    return ProbabilityTrace(
        times=grid, populations=np.abs(amplitudes) ** 2, label=f"case {case.value}"
    )


def integrate_lab_frame(
    c0: ArrayLike, p: SemiclassicalParams, grid: ArrayLike
) -> ProbabilityTrace:
    """Integrate i dc/dt = H(t) c with DOP853 on the lab-frame Hamiltonian."""
    c0 = as_amplitudes(c0)
    grid = validate_grid(grid)
    if grid.size == 1:
        return ProbabilityTrace(times=grid, populations=np.abs(c0[None, :]) ** 2)

    def schroedinger(t: float, c: np.ndarray) -> np.ndarray:
        return -1j * (lab_frame_hamiltonian(p, t) @ c)

    solution = solve_ivp(
        schroedinger,
        (grid[0], grid[-1]),
        c0,
        method="DOP853",
        t_eval=grid,
        rtol=LAB_FRAME_RTOL,
        atol=LAB_FRAME_ATOL,
    )
    if not solution.success:
        raise IntegratorFailure(f"lab-frame integration failed: {solution.message}")
    logger.debug("lab-frame integration: %d right-hand side evaluations", solution.nfev)
    return ProbabilityTrace(times=grid, populations=np.abs(solution.y.T) ** 2)
