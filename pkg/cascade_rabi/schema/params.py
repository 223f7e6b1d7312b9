from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from cascade_rabi.errors import InvalidInput, InvalidSector


class CaseId(str, Enum):
    """Initial condition: the level (1..4) holding all population at t = 0."""

    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"
    VI = "VI"
    VII = "VII"
    VIII = "VIII"

    @property
    def level(self) -> int:
        return _CASE_LEVELS[self]

    @property
    def quantized(self) -> bool:
        return self in QUANTIZED_CASES

    @property
    def mirror(self) -> "CaseId":
        """The case whose initial level is 5 - level, in the same family."""
        family = QUANTIZED_CASES if self.quantized else SEMICLASSICAL_CASES
        return family[4 - self.level]


SEMICLASSICAL_CASES = (CaseId.I, CaseId.II, CaseId.III, CaseId.IV)
QUANTIZED_CASES = (CaseId.V, CaseId.VI, CaseId.VII, CaseId.VIII)
_CASE_LEVELS = {
    **{case: i + 1 for i, case in enumerate(SEMICLASSICAL_CASES)},
    **{case: i + 1 for i, case in enumerate(QUANTIZED_CASES)},
}


class WeightingMode(str, Enum):
    PAPER = "paper"
    PHYSICAL = "physical"


@dataclass(frozen=True)
class SemiclassicalParams:
    """Classical drive: level spacing omega0, drive frequency omega, coupling kappa.

    All three are angular frequencies with hbar = 1.
    """

    omega0: float = 0.0
    omega: float = 0.0
    kappa: float = 1.0

    def __post_init__(self) -> None:
        for name in ("omega0", "omega", "kappa"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidInput(f"{name} must be finite")
        if self.kappa < 0 or self.omega0 < 0 or self.omega < 0:
            raise InvalidInput("omega0, omega and kappa must be non-negative")

    @property
    def delta(self) -> float:
        return self.omega0 - self.omega

    @classmethod
    def from_detuning(cls, kappa: float, delta: float = 0.0) -> "SemiclassicalParams":
        """Rotating-frame parametrisation: only kappa and delta matter there."""
        if delta >= 0:
            return cls(omega0=delta, omega=0.0, kappa=kappa)
        return cls(omega0=0.0, omega=-delta, kappa=kappa)


@dataclass(frozen=True)
class SectorParams:
    """One excitation-conserving block |n+2,1>, |n+1,2>, |n,3>, |n-1,4>."""

    n: int
    g: float = 1.0
    delta: float = 0.0

    def __post_init__(self) -> None:
        if isinstance(self.n, bool) or int(self.n) != self.n:
            raise InvalidSector(f"photon index must be an integer, got {self.n!r}")
        if self.n < 0:
            raise InvalidSector(f"photon index must be >= 0, got {self.n}")
        if not (math.isfinite(self.g) and self.g > 0):
            raise InvalidInput(f"coupling g must be positive, got {self.g}")
        if not math.isfinite(self.delta):
            raise InvalidInput("detuning must be finite")


@dataclass(frozen=True)
class CoherentField:
    """Poisson photon statistics truncated at n_max, with its weight table."""

    nbar: float
    epsilon: float
    n_max: int
    weights: np.ndarray = field(repr=False)

    @property
    def total_weight(self) -> float:
        return math.fsum(self.weights)

    def weight(self, n: int) -> float:
        if 0 <= n <= self.n_max:
            return float(self.weights[n])
        return 0.0
