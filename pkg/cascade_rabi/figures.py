"""Data behind the four published figures: 24 panels, one CSV each, plus a manifest."""
import json
import logging
from pathlib import Path
from typing import Union

from pydantic import BaseModel

from cascade_rabi.config import DEFAULT_NBAR
from cascade_rabi.schema import (
    QUANTIZED_CASES,
    SEMICLASSICAL_CASES,
    CaseId,
    File,
    Model,
    ProbabilityTrace,
    RunConfig,
)
from cascade_rabi.session import SimulationSession
from cascade_rabi.templates import render_plot_script
from cascade_rabi.utils import format_csv

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"
PLOT_SCRIPT_NAME = "plot_figures.py"
_LETTERS = "abcdefgh"


class FigurePanel(BaseModel):
    name: str
    title: str
    levels: list[int]
    config: RunConfig

    @property
    def file(self) -> str:
        return f"{self.name}.csv"

    def entry(self) -> dict:
        return {
            "name": self.name,
            "file": self.file,
            "title": self.title,
            "levels": self.levels,
            "config": json.loads(self.config.json(exclude={"output", "format"})),
        }


def _full_trace_panels(figure: int, model: Model, cases: tuple) -> list[FigurePanel]:
    return [
        FigurePanel(
            name=f"fig{figure}{_LETTERS[i]}",
            title=f"{model.value}, case {case.value}",
            levels=[1, 2, 3, 4],
            config=RunConfig(model=model, case=case),
        )
        for i, case in enumerate(cases)
    ]


def _coherent_panels(figure: int, cases: tuple) -> list[FigurePanel]:
    panels = []
    pairs = [(case, level) for case in cases for level in (1, 2, 3, 4)]
    for i, (case, level) in enumerate(pairs):
        panels.append(
            FigurePanel(
                name=f"fig{figure}{_LETTERS[i]}",
                title=f"coherent, case {case.value}, level {level}",
                levels=[level],
                config=RunConfig(model=Model.COHERENT, case=case, nbar=DEFAULT_NBAR),
            )
        )
    return panels


def figure_panels() -> list[FigurePanel]:
    """Fig. 1: semiclassical I-IV. Fig. 2: quantized V-VIII at n=1.
    Fig. 3: coherent V and VIII. Fig. 4: coherent VI and VII, one level per panel."""
    return [
        *_full_trace_panels(1, Model.SEMICLASSICAL, SEMICLASSICAL_CASES),
        *_full_trace_panels(2, Model.QUANTIZED, QUANTIZED_CASES),
        *_coherent_panels(3, (CaseId.V, CaseId.VIII)),
        *_coherent_panels(4, (CaseId.VI, CaseId.VII)),
    ]


def render_panels(panels: list[FigurePanel]) -> list[File]:
    traces: dict[str, ProbabilityTrace] = {}
    files = []
    for panel in panels:
        key = panel.config.json()
        if key not in traces:
            traces[key] = SimulationSession(panel.config).compute()
            logger.debug("computed %s", panel.title)
        files.append(File.from_text(panel.file, format_csv(traces[key], panel.levels)))
    manifest = {"panels": [panel.entry() for panel in panels]}
    document = json.dumps(manifest, indent=2, sort_keys=True) + "\n"
    files.append(File.from_text(MANIFEST_NAME, document))
    return files


def reproduce_figures(
    outdir: Union[str, Path], plot_script: bool = False
) -> list[Path]:
    """Write every panel CSV and the manifest into ``outdir``.

    Re-runs overwrite the same files with identical content.
    """
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    files = render_panels(figure_panels())
    if plot_script:
        script = render_plot_script(MANIFEST_NAME)
        files.append(File.from_text(PLOT_SCRIPT_NAME, script))
    return [file.save(outdir / file.name) for file in files]
