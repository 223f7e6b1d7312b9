from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from cascade_rabi.errors import InvalidGrid

TRACE_SUM_ATOL = 1e-10


@dataclass(frozen=True)
class ProbabilityTrace:
    """Time grid plus the four level populations P1..P4."""

    times: np.ndarray
    populations: np.ndarray  # shape (len(times), 4), level order
    label: Optional[str] = None

    def __post_init__(self) -> None:
        if self.populations.shape != (self.times.shape[0], 4):
            raise InvalidGrid(
                f"populations shape {self.populations.shape} does not match "
                f"{self.times.shape[0]} time points"
            )

    @property
    def p1(self) -> np.ndarray:
        return self.populations[:, 0]

    @property
    def p2(self) -> np.ndarray:
        return self.populations[:, 1]

    @property
    def p3(self) -> np.ndarray:
        return self.populations[:, 2]

    @property
    def p4(self) -> np.ndarray:
        return self.populations[:, 3]

    def level(self, level: int) -> np.ndarray:
        if level not in (1, 2, 3, 4):
            raise ValueError(f"level must be 1..4, got {level}")
        return self.populations[:, level - 1]

    def row_sums(self) -> np.ndarray:
        return self.populations.sum(axis=1)

    def normalization_defect(self) -> float:
        return float(np.max(np.abs(self.row_sums() - 1.0)))

    def meta(self) -> dict[str, Any]:
        return {"label": self.label} if self.label else {}


@dataclass(frozen=True)
class AveragedTrace(ProbabilityTrace):
    """Coherently averaged populations plus the bookkeeping of the sector sum."""

    nbar: float = 0.0
    epsilon: float = 0.0
    n_max: int = 0
    g: float = 1.0
    delta: float = 0.0
    weighting_mode: str = "paper"
    total_weight: float = 1.0
    skipped_weight: float = 0.0
    renormalized: bool = False
    sectors: tuple[int, ...] = field(default=(), repr=False)

    def meta(self) -> dict[str, Any]:
        return {
            **super().meta(),
            "nbar": self.nbar,
            "epsilon": self.epsilon,
            "n_max": self.n_max,
            "g": self.g,
            "delta": self.delta,
            "weighting_mode": self.weighting_mode,
            "total_weight": self.total_weight,
            "skipped_weight": self.skipped_weight,
            "renormalized": self.renormalized,
            "sector_count": len(self.sectors),
        }


@dataclass(frozen=True)
class CollapseRevivalMetrics:
    collapse_floor: float
    revival_peak_time: float
    revival_amplitude: float
    revival_time_estimate: float
    window: float
