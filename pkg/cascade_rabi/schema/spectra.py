from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class EigenSystem:
    """Ascending eigenvalues; column k of ``eigenvectors`` pairs with eigenvalue k."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def size(self) -> int:
        return int(self.eigenvalues.shape[0])

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


@dataclass(frozen=True)
class EulerAngles:
    """Six rotation angles (radians) of the four-dimensional orthogonal matrix."""

    theta1: float
    theta2: float
    theta3: float
    theta4: float
    theta5: float
    theta6: float

    def as_array(self) -> np.ndarray:
        return np.array(
            [
                self.theta1,
                self.theta2,
                self.theta3,
                self.theta4,
                self.theta5,
                self.theta6,
            ]
        )

    @classmethod
    def from_array(cls, values) -> "EulerAngles":
        return cls(*(float(v) for v in values))

    def max_difference(self, other: "EulerAngles") -> float:
        return float(np.max(np.abs(self.as_array() - other.as_array())))


@dataclass(frozen=True)
class DressedSpectrum:
    n: int
    g: float
    b: float
    eigenvalues: np.ndarray
