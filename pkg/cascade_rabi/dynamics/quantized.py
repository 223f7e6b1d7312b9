"""Quantized single-mode field: dynamics inside one excitation sector.

Sector n is spanned by |n+2,1>, |n+1,2>, |n,3>, |n-1,4> (photon number,
atomic level). At resonance the sector Hamiltonian has closed-form dressed
eigenvalues and a closed-form orthogonal rotation; both are validated
against the numerical eigensystem before use.
"""
from __future__ import annotations

import logging
import math
from functools import lru_cache
from types import MappingProxyType

import numpy as np
from numpy.typing import ArrayLike

from cascade_rabi.config import ARGUMENT_CLAMP_ATOL, DRESSED_VALIDATION_ATOL
from cascade_rabi.errors import (
    DomainError,
    EntryDefect,
    FormulaInconsistency,
    InvalidInput,
    InvalidSector,
    NonPhysicalState,
)
from cascade_rabi.linalg import (
    as_amplitudes,
    basis_state,
    evolve_in_eigenbasis,
    hermitian_eigensystem,
    orthogonality_defect,
)
from cascade_rabi.schema import (
    CaseId,
    DressedSpectrum,
    EulerAngles,
    ProbabilityTrace,
    SectorParams,
)
from cascade_rabi.spin import level_weights
from cascade_rabi.utils.grid import validate_grid

logger = logging.getLogger(__name__)

# Corrections to the printed quantized angle expressions, each one checked by
# rebuilding the dressed rotation from the angles.
EULER_ANGLE_ERRATA = MappingProxyType(
    {
        "theta1": "arccos argument is "
        "+alpha11/sqrt((1-alpha13^2)(1-alpha11^2-alpha13^2)); "
        "the printed leading minus sign is dropped",
        "theta2": "the whole arccos argument is negated",
        "theta3": "both radicands change sign: "
        "alpha13*sqrt(1-alpha11^2-alpha13^2) over "
        "sqrt((1-alpha13^2)^2 - alpha11^2 (2-alpha13^2))",
    }
)

_RADICAND_SNAP = 1e-12


def sector_hamiltonian(p: SectorParams) -> np.ndarray:
    """Interaction Hamiltonian of sector n; the constant Omega (n + 1/2) is dropped."""
    n, g = p.n, p.g
    couplings = g * np.array(
        [math.sqrt(3 * (n + 2)), 2 * math.sqrt(n + 1), math.sqrt(3 * n)]
    )
    h = np.diag(couplings, k=1) + np.diag(couplings, k=-1)
    h += np.diag(p.delta * level_weights())
    return h.astype(complex)


def _b(n: int) -> float:
    return math.sqrt(25 + 16 * n * (2 + n))


def _inner_minus(n: int, b: float) -> float:
    # 5(1+n) - b without the cancellation at large n
    return 9 * n * (n + 2) / (5 * (1 + n) + b)


def sector_eigenvalues(n: int, g: float = 1.0) -> DressedSpectrum:
    SectorParams(n=n, g=g)
    b = _b(n)
    outer = math.sqrt(5 * (1 + n) + b)
    inner = math.sqrt(_inner_minus(n, b))
    return DressedSpectrum(
        n=n, g=g, b=b, eigenvalues=g * np.array([-outer, -inner, inner, outer])
    )


def _require_excited_sector(n: int) -> None:
    SectorParams(n=n)
    if n < 1:
        raise InvalidSector(
            f"closed-form dressed rotation needs n >= 1, got {n}; "
            "use vacuum_sector_matrix()"
        )


def _closed_form_rotation(n: int) -> np.ndarray:
    b = _b(n)
    d = 5 * (5 + b) + 2 * n * (16 + b + 8 * n)
    minus = _inner_minus(n, b)
    plus = 5 + 2 * n + b

    a11 = (
        -(1 + b - 2 * n) * math.sqrt(5 + b + 5 * n) / (2 * math.sqrt(3 * (2 + n) * d))
    )
    a12 = plus / (2 * math.sqrt(d))
    a13 = -math.sqrt((1 + n) * (5 + b + 5 * n)) / math.sqrt(d)
    a14 = math.sqrt(b - 5 - 2 * n) / (2 * math.sqrt(b))
    a21 = (
        (b - 1 + 2 * n)
        * math.sqrt(minus * plus)
        / (12 * math.sqrt(n * (n + 1) * (n + 2) * b))
    )
    a22 = -math.sqrt(3 * n * (1 + n)) / math.sqrt(b * plus)
    a23 = -math.sqrt(minus * plus) / (2 * math.sqrt(3 * n * b))
    a24 = math.sqrt(plus) / (2 * math.sqrt(b))

    return np.array(
        [
            [a11, a12, a13, a14],
            [a21, a22, a23, a24],
            [-a21, a22, -a23, a24],
            [-a11, a12, -a13, a14],
        ]
    )


def dressed_matrix_report(n: int) -> list[EntryDefect]:
    """Compare every closed-form entry with the numerical eigenvectors of sector n.

    Row k is matched to the k-th ascending eigenvector, with its overall sign
    aligned to the closed-form row.
    """
    _require_excited_sector(n)
    rotation = _closed_form_rotation(n)
    system = hermitian_eigensystem(sector_hamiltonian(SectorParams(n=n)))
    defects = []
    for k in range(4):
        vector = system.eigenvectors[:, k].real
        sign = 1.0 if float(rotation[k] @ vector) >= 0 else -1.0
        for j in range(4):
            defects.append(
                EntryDefect(
                    k + 1, j + 1, float(rotation[k, j]), float(sign * vector[j])
                )
            )
    return defects


@lru_cache(maxsize=1024)
def _validated_rotation(n: int) -> np.ndarray:
    rotation = _closed_form_rotation(n)
    tolerance = DRESSED_VALIDATION_ATOL
    spectrum = sector_eigenvalues(n).eigenvalues
    transformed = rotation @ sector_hamiltonian(SectorParams(n=n)).real @ rotation.T
    diagonal_defect = float(np.max(np.abs(transformed - np.diag(spectrum))))

    orthogonality = orthogonality_defect(rotation)
    if orthogonality >= tolerance or diagonal_defect >= tolerance * math.sqrt(n):
        defects = [d for d in dressed_matrix_report(n) if d.deviation > tolerance]
        raise FormulaInconsistency(
            f"closed-form dressed rotation fails validation at n={n} "
            f"(orthogonality {orthogonality:.3e}, diagonal {diagonal_defect:.3e})",
            defects,
        )
    rotation.setflags(write=False)
    return rotation


def dressed_matrix_elements(n: int) -> np.ndarray:
    """Closed-form rotation T_n of sector n >= 1.

    Rows pair with the ascending dressed eigenvalues.

    Raises FormulaInconsistency (listing the offending entries) if the matrix
    is not orthogonal or does not diagonalize the sector Hamiltonian.
    """
    _require_excited_sector(n)
    return _validated_rotation(int(n)).copy()


def vacuum_sector_matrix() -> np.ndarray:
    """Rotation for n = 0, eigenvalues (-sqrt(10), 0, 0, sqrt(10)) g.

    |-1,4> stays decoupled.
    """
    return np.array(
        [
            [math.sqrt(6 / 20), -math.sqrt(10 / 20), 2 / math.sqrt(20), 0.0],
            [2 / math.sqrt(10), 0.0, -math.sqrt(6 / 10), 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [math.sqrt(6 / 20), math.sqrt(10 / 20), 2 / math.sqrt(20), 0.0],
        ]
    )


def _radicand(name: str, value: float) -> float:
    if value < -ARGUMENT_CLAMP_ATOL:
        raise DomainError(f"{name}: negative radicand {value:.3e}")
    if abs(value) < _RADICAND_SNAP:
        return 0.0
    return max(value, 0.0)


def _unit_argument(name: str, value: float) -> float:
    if not math.isfinite(value) or abs(value) > 1 + ARGUMENT_CLAMP_ATOL:
        raise DomainError(f"{name}: argument {value!r} outside [-1, 1]")
    if abs(abs(value) - 1) < _RADICAND_SNAP:
        return math.copysign(1.0, value)
    return min(1.0, max(-1.0, value))


def quantized_euler_angles(n: int) -> EulerAngles:
    _require_excited_sector(n)
    t = dressed_matrix_elements(n)
    a11, a12, a13, a23 = t[0, 0], t[0, 1], t[0, 2], t[1, 2]

    p = 1 - a13**2
    q = _radicand("1-a11^2-a13^2", 1 - a11**2 - a13**2)
    r = _radicand("(1-a13^2)^2-a11^2(2-a13^2)", p**2 - a11**2 * (2 - a13**2))
    if q == 0.0 or r == 0.0:
        raise DomainError(f"degenerate rotation at n={n}")

    theta1 = math.acos(_unit_argument("theta1", a11 / math.sqrt(p * q)))

    # the first radicand vanishes identically
    cross = math.sqrt(
        _radicand("1-2a11^2-2a13^2", 1 - 2 * a11**2 - 2 * a13**2)
        * _radicand("1-2a13^2-a23^2", 1 - 2 * a13**2 - a23**2)
    )
    theta2 = math.acos(
        _unit_argument(
            "theta2", -(a11 * a13 * a23 + p * cross) / ((2 * a13**2 - 1) * math.sqrt(r))
        )
    )
    theta3 = math.asin(_unit_argument("theta3", a13 * math.sqrt(q) / math.sqrt(r)))
    theta4 = math.asin(_unit_argument("theta4", a13))
    theta5 = -math.asin(_unit_argument("theta5", a11 / math.sqrt(p)))
    theta6 = math.asin(_unit_argument("theta6", a12 / math.sqrt(q)))
    logger.debug(
        "quantized angles at n=%d use errata for %s", n, ", ".join(EULER_ANGLE_ERRATA)
    )
    return EulerAngles(theta1, theta2, theta3, theta4, theta5, theta6)


def _sector_eigenbasis(p: SectorParams) -> tuple[np.ndarray, np.ndarray]:
    if p.delta == 0.0:
        eigenvalues = sector_eigenvalues(p.n, p.g).eigenvalues
        rotation = vacuum_sector_matrix() if p.n == 0 else _validated_rotation(p.n)
        return eigenvalues, rotation.T
    if p.n == 0:
        # |-1,4> does not exist; evolve the 3x3 block
        system = hermitian_eigensystem(sector_hamiltonian(p)[:3, :3])
        eigenvectors = np.zeros((4, 4), dtype=complex)
        eigenvectors[:3, :3] = system.eigenvectors
        eigenvectors[3, 3] = 1.0
        return np.append(system.eigenvalues, 0.0), eigenvectors
    system = hermitian_eigensystem(sector_hamiltonian(p))
    return system.eigenvalues, system.eigenvectors


def sector_amplitudes_on_grid(
    c0: ArrayLike, p: SectorParams, times: ArrayLike
) -> np.ndarray:
    c0 = as_amplitudes(c0)
    if p.n == 0 and c0[3] != 0:
        raise NonPhysicalState(
            "sector n=0 has no |-1,4> state; its amplitude must be 0"
        )
    eigenvalues, eigenvectors = _sector_eigenbasis(p)
    amplitudes = evolve_in_eigenbasis(eigenvalues, eigenvectors, c0, times)
    if p.n == 0:
        amplitudes[:, 3] = 0.0
    return amplitudes


def evolve_sector_amplitudes(c0: ArrayLike, p: SectorParams, t: float) -> np.ndarray:
    """T_n^-1 diag(exp(-i lambda_kq t)) T_n c0 inside sector n."""
    return sector_amplitudes_on_grid(c0, p, [t])[0]


def _check_case(case: CaseId, n: int) -> CaseId:
    case = CaseId(case)
    if not case.quantized:
        raise InvalidInput(
            f"case {case.value} belongs to the semiclassical model (expected V-VIII)"
        )
    if case == CaseId.VIII and n == 0:
        raise InvalidSector(
            "case VIII needs photon index n >= 1 (|n-1,4> does not exist for n = 0)"
        )
    return case


def sector_populations_on_grid(
    level: int, p: SectorParams, grid: ArrayLike
) -> np.ndarray:
    """|C_i|^2 of sector n started in ``level``, shape (len(grid), 4)."""
    amplitudes = sector_amplitudes_on_grid(basis_state(level), p, grid)
    return np.abs(amplitudes) ** 2


def sector_probability_trace(
    case: CaseId, p: SectorParams, grid: ArrayLike
) -> ProbabilityTrace:
    case = _check_case(case, p.n)
    grid = validate_grid(grid)
    return ProbabilityTrace(
        times=grid,
        populations=sector_populations_on_grid(case.level, p, grid),
        label=f"case {case.value}, n={p.n}",
    )
