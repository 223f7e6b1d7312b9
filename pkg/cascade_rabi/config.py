from pydantic import BaseSettings
from dotenv import load_dotenv

# .env file
load_dotenv(dotenv_path="./.env")


class CascadeRabiSettings(BaseSettings):
    """
    Cascade Rabi Config

    Only verbosity lives here. Numerical results never depend on the
    environment.
    """

    VERBOSE: bool = False
    LOG_LEVEL: str = "WARNING"


settings = CascadeRabiSettings()


# numerical defaults
DEFAULT_KAPPA = 1.0
DEFAULT_G = 1.0
DEFAULT_PHOTON_INDEX = 1
DEFAULT_NBAR = 48.0
DEFAULT_EPSILON = 1e-8

SEMICLASSICAL_GRID_POINTS = 2001
QUANTIZED_GRID_POINTS = 2001
COHERENT_GRID_POINTS = 4001
COHERENT_REVIVAL_SPAN = 3.0

HERMITIAN_ATOL = 1e-12
NORM_ATOL = 1e-12
ARGUMENT_CLAMP_ATOL = 1e-9
DRESSED_VALIDATION_ATOL = 1e-9

LAB_FRAME_RTOL = 1e-10
LAB_FRAME_ATOL = 1e-12
