from __future__ import annotations

import math

import numpy as np
from numpy.typing import ArrayLike

from cascade_rabi.config import (
    COHERENT_GRID_POINTS,
    COHERENT_REVIVAL_SPAN,
    QUANTIZED_GRID_POINTS,
    SEMICLASSICAL_GRID_POINTS,
)
from cascade_rabi.errors import EmptyGrid, InvalidGrid


def uniform_grid(t_max: float, steps: int) -> np.ndarray:
    """``steps`` equally spaced points on [0, t_max], endpoints included."""
    if steps < 2:
        raise InvalidGrid(f"a grid needs at least 2 points, got {steps}")
    if not (math.isfinite(t_max) and t_max > 0):
        raise InvalidGrid(f"t_max must be positive and finite, got {t_max}")
    return np.linspace(0.0, t_max, steps)


def validate_grid(grid: ArrayLike) -> np.ndarray:
    """Grids start at t = 0 and increase strictly."""
    grid = np.atleast_1d(np.asarray(grid, dtype=float))
    if grid.size == 0:
        raise EmptyGrid("time grid is empty")
    if grid.ndim != 1:
        raise InvalidGrid(f"time grid must be one-dimensional, got shape {grid.shape}")
    if not np.all(np.isfinite(grid)):
        raise InvalidGrid("time grid has non-finite entries")
    if grid[0] != 0.0:
        raise InvalidGrid(f"time grid must start at 0, starts at {grid[0]!r}")
    if np.any(np.diff(grid) <= 0):
        raise InvalidGrid("time grid must be strictly increasing")
    return grid


def semiclassical_grid(
    kappa: float = 1.0, steps: int = SEMICLASSICAL_GRID_POINTS
) -> np.ndarray:
    return uniform_grid(4 * math.pi / kappa, steps)


def quantized_grid(g: float = 1.0, steps: int = QUANTIZED_GRID_POINTS) -> np.ndarray:
    return uniform_grid(4 * math.pi / g, steps)


def coherent_grid(
    nbar: float, g: float = 1.0, steps: int = COHERENT_GRID_POINTS
) -> np.ndarray:
    """Three revival times, 2*pi*sqrt(nbar)/g each."""
    revival = 2 * math.pi * math.sqrt(nbar) / g
    return uniform_grid(COHERENT_REVIVAL_SPAN * revival, steps)
