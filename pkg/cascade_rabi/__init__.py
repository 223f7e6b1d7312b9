from cascade_rabi.session import SimulationResult, SimulationSession
from cascade_rabi.schema import CaseId, File, RunConfig

__version__ = "0.1.0"
