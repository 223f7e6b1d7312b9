from .file import File
from .input import Model, OutputFormat, RunConfig
from .params import (
    QUANTIZED_CASES,
    SEMICLASSICAL_CASES,
    CaseId,
    CoherentField,
    SectorParams,
    SemiclassicalParams,
    WeightingMode,
)
from .spectra import DressedSpectrum, EigenSystem, EulerAngles
from .trace import AveragedTrace, CollapseRevivalMetrics, ProbabilityTrace
