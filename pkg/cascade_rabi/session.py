import asyncio
import logging
import time
from dataclasses import dataclass
from typing import Any

import numpy as np

from cascade_rabi.config import (
    COHERENT_GRID_POINTS,
    QUANTIZED_GRID_POINTS,
    SEMICLASSICAL_GRID_POINTS,
    settings,
)
from cascade_rabi.errors import InvalidGrid
from cascade_rabi.dynamics import (
    acoherent_probability_trace,
    coherent_probability_trace,
    poisson_weights,
    probability_trace,
    sector_probability_trace,
)
from cascade_rabi.schema import (
    AveragedTrace,
    File,
    Model,
    OutputFormat,
    ProbabilityTrace,
    RunConfig,
    SectorParams,
    SemiclassicalParams,
)
from cascade_rabi.utils import (
    coherent_grid,
    format_csv,
    format_json,
    quantized_grid,
    semiclassical_grid,
    uniform_grid,
)

logger = logging.getLogger(__name__)


@dataclass
class SimulationResult:
    config: RunConfig
    trace: ProbabilityTrace
    artifact: File
    summary: str
    wall_time: float


class SimulationSession:
    """Runs one RunConfig: grid, model evaluation and the rendered artifact."""

    def __init__(self, config: RunConfig, **kwargs) -> None:
        self.config = config
        self.verbose = kwargs.get("verbose", settings.VERBOSE)

    def grid(self) -> np.ndarray:
        c = self.config
        if c.model == Model.SEMICLASSICAL:
            default = semiclassical_grid(c.kappa, c.steps or SEMICLASSICAL_GRID_POINTS)
        elif c.model == Model.QUANTIZED:
            default = quantized_grid(c.g, c.steps or QUANTIZED_GRID_POINTS)
        else:
            if c.t_max is None and c.nbar == 0:
                raise InvalidGrid(
                    "t_max: coherent runs with nbar = 0 need an explicit t_max"
                )
            default = coherent_grid(c.nbar, c.g, c.steps or COHERENT_GRID_POINTS)
        if c.t_max is None:
            return default
        return uniform_grid(c.t_max, default.shape[0])

    def compute(self) -> ProbabilityTrace:
        c = self.config
        grid = self.grid()
        if c.model == Model.SEMICLASSICAL:
            params = SemiclassicalParams.from_detuning(kappa=c.kappa, delta=c.delta)
            return probability_trace(c.case, params, grid)
        if c.model == Model.QUANTIZED:
            params = SectorParams(n=c.n, g=c.g, delta=c.delta)
            return sector_probability_trace(c.case, params, grid)
        return coherent_probability_trace(
            c.case,
            poisson_weights(c.nbar, c.epsilon),
            c.g,
            grid,
            delta=c.delta,
            weighting_mode=c.weighting_mode,
            renormalize=c.renormalize,
        )

    async def acompute(self) -> ProbabilityTrace:
        c = self.config
        if c.model != Model.COHERENT:
            return await asyncio.to_thread(self.compute)
        return await acoherent_probability_trace(
            c.case,
            poisson_weights(c.nbar, c.epsilon),
            c.g,
            self.grid(),
            delta=c.delta,
            weighting_mode=c.weighting_mode,
            renormalize=c.renormalize,
        )

    def meta(self) -> dict[str, Any]:
        c = self.config
        meta: dict[str, Any] = {
            "model": c.model.value,
            "case": c.case.value,
            "delta": c.delta,
        }
        if c.model == Model.SEMICLASSICAL:
            meta["kappa"] = c.kappa
        else:
            meta["g"] = c.g
        if c.model == Model.QUANTIZED:
            meta["n"] = c.n
        return meta

    def render(self, trace: ProbabilityTrace) -> File:
        c = self.config
        extension = c.format.value
        if c.output is not None:
            name = c.output.name
        else:
            name = f"{c.model.value}_{c.case.value}.{extension}"
        if c.format == OutputFormat.JSON:
            text = format_json(trace, meta=self.meta())
        else:
            text = format_csv(trace)
        return File.from_text(name, text)

    def summary(self, trace: ProbabilityTrace, wall_time: float) -> str:
        c = self.config
        parts = [f"model={c.model.value}", f"case={c.case.value}"]
        if isinstance(trace, AveragedTrace):
            parts.append(f"n_max={trace.n_max}")
        parts += [f"points={trace.times.shape[0]}", f"wall_time={wall_time:.3f}s"]
        return " ".join(parts)

    def _result(self, trace: ProbabilityTrace, started: float) -> SimulationResult:
        artifact = self.render(trace)
        wall_time = time.perf_counter() - started
        result = SimulationResult(
            config=self.config,
            trace=trace,
            artifact=artifact,
            summary=self.summary(trace, wall_time),
            wall_time=wall_time,
        )
        if self.verbose:
            logger.info(result.summary)
        return result

    def run(self) -> SimulationResult:
        started = time.perf_counter()
        return self._result(self.compute(), started)

    async def arun(self) -> SimulationResult:
        started = time.perf_counter()
        return self._result(await self.acompute(), started)
