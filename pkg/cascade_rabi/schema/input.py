from enum import Enum
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, Field, root_validator, validator

from cascade_rabi.config import (
    DEFAULT_EPSILON,
    DEFAULT_G,
    DEFAULT_KAPPA,
    DEFAULT_NBAR,
    DEFAULT_PHOTON_INDEX,
)
from cascade_rabi.schema.params import CaseId, WeightingMode


class Model(str, Enum):
    SEMICLASSICAL = "semiclassical"
    QUANTIZED = "quantized"
    COHERENT = "coherent"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class RunConfig(BaseModel):
    """Parameters of one `simulate` run."""

    model: Model
    case: CaseId
    kappa: float = DEFAULT_KAPPA
    g: float = DEFAULT_G
    delta: float = 0.0
    n: int = DEFAULT_PHOTON_INDEX
    nbar: float = DEFAULT_NBAR
    epsilon: float = DEFAULT_EPSILON
    t_max: Optional[float] = Field(None, alias="tmax")
    steps: Optional[int] = None
    format: OutputFormat = OutputFormat.CSV
    output: Optional[Path] = None
    weighting_mode: WeightingMode = WeightingMode.PAPER
    renormalize: bool = False

    class Config:
        extra = "forbid"
        allow_population_by_field_name = True
        use_enum_values = False

    @validator("kappa", "g")
    def positive_coupling(cls, value: float) -> float:
        if not value > 0:
            raise ValueError("must be > 0")
        return value

    @validator("n")
    def non_negative_photon_index(cls, value: int) -> int:
        if value < 0:
            raise ValueError("photon index must be >= 0")
        return value

    @validator("nbar")
    def non_negative_nbar(cls, value: float) -> float:
        if value < 0:
            raise ValueError("mean photon number must be >= 0")
        return value

    @validator("epsilon")
    def tail_tolerance(cls, value: float) -> float:
        if not 1e-16 < value < 0.5:
            raise ValueError("tail tolerance must lie in (1e-16, 0.5)")
        return value

    @validator("t_max")
    def positive_duration(cls, value: Optional[float]) -> Optional[float]:
        if value is not None and not value > 0:
            raise ValueError("must be > 0")
        return value

    @validator("steps")
    def enough_steps(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value < 2:
            raise ValueError("must be >= 2")
        return value

    @root_validator(skip_on_failure=True)
    def case_matches_model(cls, values: dict) -> dict:
        model, case = values["model"], values["case"]
        if (model == Model.SEMICLASSICAL) == case.quantized:
            expected = "I-IV" if model == Model.SEMICLASSICAL else "V-VIII"
            raise ValueError(
                f"case {case.value} is not valid for the {model.value} model "
                f"(expected {expected})"
            )
        if model == Model.QUANTIZED and case == CaseId.VIII and values["n"] == 0:
            raise ValueError(
                "invalid sector: case VIII needs photon index n >= 1 "
                "(|n-1,4> does not exist for n = 0)"
            )
        return values
