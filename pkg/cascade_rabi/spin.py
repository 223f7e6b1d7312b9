"""Spin-3/2 generators of SU(2) and the level/coordinate ordering helpers.

Coordinates follow the column vectors of the cascade model: level |4> sits
at coordinate 1 and level |1> at coordinate 4. Everything public is indexed
by level.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from cascade_rabi.errors import InvalidInput

SPIN = 1.5
CASIMIR = SPIN * (SPIN + 1.0)


@dataclass(frozen=True)
class SpinOperators:
    j_plus: np.ndarray
    j_minus: np.ndarray
    j3: np.ndarray


@lru_cache(maxsize=None)
def _generators() -> SpinOperators:
    j_plus = np.diag([np.sqrt(3.0), 2.0, np.sqrt(3.0)], k=1)
    j3 = np.diag([1.5, 0.5, -0.5, -1.5])
    for m in (j_plus, j3):
        m.setflags(write=False)
    j_minus = j_plus.T
    return SpinOperators(j_plus=j_plus, j_minus=j_minus, j3=j3)


def spin32_generators() -> SpinOperators:
    """J+, J- and J3 in coordinate order; the arrays are read-only."""
    return _generators()


def _commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def commutator_residual(ops: SpinOperators) -> float:
    """max over [J+, J-] - 2 J3 and [J3, J+] - J+."""
    lowering = _commutator(ops.j_plus, ops.j_minus) - 2.0 * ops.j3
    raising = _commutator(ops.j3, ops.j_plus) - ops.j_plus
    return float(max(np.max(np.abs(lowering)), np.max(np.abs(raising))))


def casimir_residual(ops: SpinOperators) -> float:
    casimir = ops.j_plus @ ops.j_minus + ops.j3 @ ops.j3 - ops.j3
    return float(np.max(np.abs(casimir - CASIMIR * np.eye(4))))


def to_level_order(matrix: np.ndarray) -> np.ndarray:
    """Reverse rows and columns: coordinate order |4>..|1> to level order |1>..|4>."""
    return np.ascontiguousarray(np.asarray(matrix)[::-1, ::-1])


def level_coordinate(level: int) -> int:
    if level not in (1, 2, 3, 4):
        raise InvalidInput(f"level must be 1..4, got {level}")
    return 5 - level


def level_weights() -> np.ndarray:
    """J3 eigenvalues of levels 1..4: (-3/2, -1/2, 1/2, 3/2)."""
    return np.diag(to_level_order(spin32_generators().j3)).copy()
