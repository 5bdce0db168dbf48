"""Configuration settings for entanglion.

This module provides:
- Logging configuration
- Environment variable loading
- Numeric tolerances and limits shared by every module
"""

import logging
import math
import os

from dotenv import load_dotenv

# --- Env Config ---
load_dotenv()


# --- Logging Config ---
LOGGING_LEVEL = os.getenv("LOGGING_LEVEL", "INFO").upper()
LOG_FORMAT = "%(asctime)s - %(levelname)s - %(name)s - %(message)s"

project_logger = logging.getLogger("entanglion")
project_logger.setLevel(LOGGING_LEVEL)
if not project_logger.hasHandlers():
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    project_logger.addHandler(handler)

logger = logging.getLogger("entanglion.config")


# --- Global Environment Variables ---
def _read_thread_cap() -> int:
    """Read ENTANGLION_THREADS, falling back to the CPU count (or 1 on bad input)."""
    raw = os.getenv("ENTANGLION_THREADS")
    if raw is None or not raw.strip():
        return os.cpu_count() or 1
    try:
        value = int(raw)
    except ValueError:
        logger.warning("ENTANGLION_THREADS=%r is not an integer, using 1", raw)
        return 1
    if value < 1:
        logger.warning("ENTANGLION_THREADS=%d is below 1, using 1", value)
        return 1
    return value


ENTANGLION_THREADS = _read_thread_cap()

# --- Constants ---
MAX_TOTAL_DIM = 64
EIGEN_CLAMP_TOL = 1e-10
HERMITIAN_TOL = 1e-12
NORMALIZATION_TOL = 1e-10
PARAMETER_TOL = 1e-9
ISOMETRY_TOL = 1e-9
RECONSTRUCTION_TOL = 1e-8
VIOLATION_TOL = 1e-9
NEGLIGIBLE_WEIGHT = 1e-14

LCREN_SCALE = 4 * math.log(2)  # 4 ln 2, monogamy threshold for LCREN
LCRENOA_SCALE = 2.0
NONZERO_MEASURE_TOL = 1e-10

# --- Convex roof defaults ---
DEFAULT_RESTARTS = 32
DEFAULT_MAX_ITERATIONS = 2000
DEFAULT_ROOF_TOLERANCE = 1e-6
