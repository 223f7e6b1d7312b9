"""Coherent-state field: Poisson-weighted sums of sector dynamics.

Collapse and revival of the Rabi oscillations come from the dephasing and
rephasing of the many photon-number sectors a coherent state populates.
"""
from __future__ import annotations

import asyncio
import logging
import math
from typing import Iterator, NamedTuple

import numpy as np
from numpy.typing import ArrayLike
from scipy.ndimage import maximum_filter1d, minimum_filter1d
from scipy.special import gammaln, xlogy

from cascade_rabi.errors import (
    GridTooShort,
    InvalidGrid,
    InvalidInput,
    InvalidSector,
    InvalidTolerance,
)
from cascade_rabi.linalg import basis_state, evolve_in_eigenbasis, hermitian_eigensystem
from cascade_rabi.schema import (
    AveragedTrace,
    CaseId,
    CoherentField,
    CollapseRevivalMetrics,
    ProbabilityTrace,
    SectorParams,
    WeightingMode,
)
from cascade_rabi.dynamics.quantized import sector_populations_on_grid
from cascade_rabi.spin import level_weights
from cascade_rabi.utils.grid import validate_grid

logger = logging.getLogger(__name__)

# sector index minus initial photon number, per initial level
_PHYSICAL_OFFSETS = {1: -2, 2: -1, 3: 0, 4: 1}


def poisson_weights(nbar: float, epsilon: float) -> CoherentField:
    """w_n = exp(-nbar) nbar^n / n!, up to the first n_max with sum >= 1 - epsilon."""
    if not 1e-16 < epsilon < 0.5:
        raise InvalidTolerance(
            f"tail tolerance must lie in (1e-16, 0.5), got {epsilon!r}"
        )
    if not (math.isfinite(nbar) and nbar >= 0):
        raise InvalidInput(f"mean photon number must be finite and >= 0, got {nbar!r}")

    upper = int(math.ceil(nbar + 12 * math.sqrt(nbar) + 30))
    while True:
        n = np.arange(upper + 1)
        weights = np.exp(-nbar + xlogy(n, nbar) - gammaln(n + 1))
        reached = np.flatnonzero(np.cumsum(weights) >= 1 - epsilon)
        if reached.size:
            n_max = int(reached[0])
            return CoherentField(
                nbar=float(nbar),
                epsilon=float(epsilon),
                n_max=n_max,
                weights=weights[: n_max + 1],
            )
        if weights[-1] == 0.0:
            raise InvalidTolerance(
                f"tail tolerance {epsilon!r} is below the floating-point "
                "resolution of the weight sum"
            )
        upper *= 2


def revival_time(nbar: float, g: float = 1.0) -> float:
    return 2 * math.pi * math.sqrt(nbar) / g


class SectorTerm(NamedTuple):
    photons: int
    sector: int
    weight: float


def _sector_terms(
    case: CaseId, field: CoherentField, mode: WeightingMode
) -> Iterator[SectorTerm]:
    offset = 0 if mode == WeightingMode.PAPER else _PHYSICAL_OFFSETS[case.level]
    for photons in range(field.n_max + 1):
        yield SectorTerm(photons, photons + offset, field.weight(photons))


def _truncated_sector_populations(
    level: int, sector: int, g: float, delta: float, grid: np.ndarray
) -> np.ndarray:
    # sectors -1 and -2 keep only |1,1>,|0,2> or |0,1>
    size = sector + 3
    h = np.diag(delta * level_weights()[:size]).astype(complex)
    if size == 2:
        h[0, 1] = h[1, 0] = g * math.sqrt(3.0)
    system = hermitian_eigensystem(h)
    amplitudes = evolve_in_eigenbasis(
        system.eigenvalues, system.eigenvectors, basis_state(level, size), grid
    )
    populations = np.zeros((grid.shape[0], 4))
    populations[:, :size] = np.abs(amplitudes) ** 2
    return populations


def _term_populations(
    case: CaseId, term: SectorTerm, g: float, delta: float, grid: np.ndarray
) -> np.ndarray:
    if term.sector < 0:
        return _truncated_sector_populations(case.level, term.sector, g, delta, grid)
    params = SectorParams(n=term.sector, g=g, delta=delta)
    return sector_populations_on_grid(case.level, params, grid)


def _valid(case: CaseId, term: SectorTerm) -> bool:
    # |-1,4> would be the initial state
    return not (case == CaseId.VIII and term.sector == 0)


class _CompensatedSum:
    """Neumaier summation over arrays, accumulated in call order."""

    def __init__(self, shape: tuple[int, ...]) -> None:
        self.total = np.zeros(shape)
        self.compensation = np.zeros(shape)

    def add(self, term: np.ndarray) -> None:
        total = self.total + term
        big = np.abs(self.total) >= np.abs(term)
        self.compensation += np.where(
            big, (self.total - total) + term, (term - total) + self.total
        )
        self.total = total

    def result(self) -> np.ndarray:
        return self.total + self.compensation


def _prepare(case: CaseId, g: float, grid: ArrayLike, weighting_mode: WeightingMode):
    case = CaseId(case)
    if not case.quantized:
        raise InvalidInput(
            f"case {case.value} belongs to the semiclassical model (expected V-VIII)"
        )
    if not g > 0:
        raise InvalidInput(f"coupling g must be positive, got {g}")
    return case, validate_grid(grid), WeightingMode(weighting_mode)


def _reduce(
    case: CaseId,
    field: CoherentField,
    g: float,
    delta: float,
    grid: np.ndarray,
    mode: WeightingMode,
    renormalize: bool,
    terms: list[SectorTerm],
    populations: list[np.ndarray],
) -> AveragedTrace:
    accumulator = _CompensatedSum((grid.shape[0], 4))
    skipped = math.fsum(term.weight for term in terms if not _valid(case, term))
    used = [term for term in terms if _valid(case, term)]
    if not used:
        raise InvalidSector(
            f"no valid sector for case {case.value} with n_max={field.n_max}"
        )
    # increasing sector order, whatever order the terms were evaluated in
    ordered = sorted(zip(used, populations), key=lambda pair: pair[0].sector)
    for term, term_populations in ordered:
        accumulator.add(term.weight * term_populations)
    averaged = accumulator.result()

    total_weight = field.total_weight
    if skipped > field.epsilon:
        logger.warning(
            "case %s: skipped sector terms carry weight %.3e", case.value, skipped
        )
    elif skipped > 0:
        logger.debug(
            "case %s: skipped sector terms carry weight %.3e", case.value, skipped
        )
    if renormalize:
        averaged = averaged / (total_weight - skipped)
        logger.info(
            "case %s: populations renormalized by %.17g",
            case.value,
            total_weight - skipped,
        )
    logger.debug(
        "case %s: summed %d sectors up to n_max=%d", case.value, len(used), field.n_max
    )

    return AveragedTrace(
        times=grid,
        populations=averaged,
        label=f"case {case.value}, nbar={field.nbar:g}",
        nbar=field.nbar,
        epsilon=field.epsilon,
        n_max=field.n_max,
        g=g,
        delta=delta,
        weighting_mode=mode.value,
        total_weight=total_weight,
        skipped_weight=skipped,
        renormalized=renormalize,
        sectors=tuple(term.sector for term in used),
    )


def coherent_probability_trace(
    case: CaseId,
    field: CoherentField,
    g: float,
    grid: ArrayLike,
    delta: float = 0.0,
    weighting_mode: WeightingMode = WeightingMode.PAPER,
    renormalize: bool = False,
) -> AveragedTrace:
    """<P_i(t)> = sum_n w_n |C_i^(n)(t)|^2, same initial level in every sector.

    In ``paper`` mode w_n weights sector n; in ``physical`` mode it weights the
    sector reached from n initial photons.
    """
    case, grid, mode = _prepare(case, g, grid, weighting_mode)
    terms = list(_sector_terms(case, field, mode))
    populations = [
        _term_populations(case, term, g, delta, grid)
        for term in terms
        if _valid(case, term)
    ]
    return _reduce(case, field, g, delta, grid, mode, renormalize, terms, populations)


async def acoherent_probability_trace(
    case: CaseId,
    field: CoherentField,
    g: float,
    grid: ArrayLike,
    delta: float = 0.0,
    weighting_mode: WeightingMode = WeightingMode.PAPER,
    renormalize: bool = False,
) -> AveragedTrace:
    """Evaluate sector terms in worker threads; the reduction stays sequential."""
    case, grid, mode = _prepare(case, g, grid, weighting_mode)
    terms = list(_sector_terms(case, field, mode))
    populations = await asyncio.gather(
        *(
            asyncio.to_thread(_term_populations, case, term, g, delta, grid)
            for term in terms
            if _valid(case, term)
        )
    )
    return _reduce(
        case, field, g, delta, grid, mode, renormalize, terms, list(populations)
    )


def mirror_defect(a: ProbabilityTrace, b: ProbabilityTrace) -> float:
    """max over t and i of |P_i(a) - P_{5-i}(b)|."""
    if a.times.shape != b.times.shape or not np.array_equal(a.times, b.times):
        raise InvalidGrid("mirror defect needs traces on the same grid")
    return float(np.max(np.abs(a.populations - b.populations[:, ::-1])))


def collapse_revival_metrics(
    trace: AveragedTrace, level: int
) -> CollapseRevivalMetrics:
    """Envelope of the oscillation of <P_level> and where it collapses and revives.

    The envelope is the sliding max - min over two fundamental Rabi periods
    pi/(g sqrt(nbar)). The collapse floor is its minimum over [t_r/3, 2t_r/3],
    the revival its maximum over (2t_r/3, 1.5 t_r], with t_r = 2 pi sqrt(nbar)/g.
    """
    if not trace.nbar > 0:
        raise InvalidInput("collapse and revival need nbar > 0")
    t_r = revival_time(trace.nbar, trace.g)
    times = trace.times
    if times.shape[0] < 3 or times[-1] < 1.5 * t_r * (1 - 1e-12):
        raise GridTooShort(
            f"trace ends at t={times[-1]:.6g}, "
            f"metrics need at least 1.5 * t_r = {1.5 * t_r:.6g}"
        )

    series = trace.level(level)
    series = series - series.mean()
    window = 2 * math.pi / (trace.g * math.sqrt(trace.nbar))
    size = max(1, int(round(window / float(np.median(np.diff(times))))))
    envelope = maximum_filter1d(series, size, mode="nearest") - minimum_filter1d(
        series, size, mode="nearest"
    )

    collapse = (times >= t_r / 3) & (times <= 2 * t_r / 3)
    revival = np.flatnonzero((times > 2 * t_r / 3) & (times <= 1.5 * t_r))
    if not collapse.any() or revival.size == 0:
        raise GridTooShort(
            "grid too coarse to resolve the collapse and revival windows"
        )
    peak = revival[int(np.argmax(envelope[revival]))]
    return CollapseRevivalMetrics(
        collapse_floor=float(envelope[collapse].min()),
        revival_peak_time=float(times[peak]),
        revival_amplitude=float(envelope[peak]),
        revival_time_estimate=t_r,
        window=window,
    )
