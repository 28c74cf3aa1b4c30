"""
Configuration settings for the convex-geometry toolkit.

Every value can be overridden from the environment (or a .env file); the
library functions take these as keyword defaults so callers can always
pass explicit values instead.
"""

import os
import logging
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

BASE_DIR = os.path.dirname(os.path.abspath(__file__))

# Output directory for CLI runs without an explicit --out
OUTPUT_DIR = os.getenv("GEOM_OUTPUT_DIR", os.path.join(BASE_DIR, "results"))

# Sampling settings
DEFAULT_SEED = int(os.getenv("GEOM_SEED", 7))
DEFAULT_SAMPLES = int(os.getenv("GEOM_SAMPLES", 100_000))  # sweeps
ACCEPTANCE_SAMPLES = int(os.getenv("GEOM_ACCEPTANCE_SAMPLES", 1_000_000))
CHUNK_SIZE = int(os.getenv("GEOM_CHUNK_SIZE", 4096))
DEFAULT_WORKERS = int(os.getenv("GEOM_WORKERS", 1))
MAX_RESAMPLES = 100

# Tolerance for every Monte-Carlo comparison, in standard errors
TOLERANCE_SIGMAS = float(os.getenv("GEOM_TOLERANCE_SIGMAS", 4.0))

# Relative slack for comparisons between exactly computed quantities
EXACT_RTOL = 1e-9

# Eigensolver settings
JACOBI_MAX_SWEEPS = int(os.getenv("JACOBI_MAX_SWEEPS", 30))
JACOBI_TOLERANCE = float(os.getenv("JACOBI_TOLERANCE", 1e-12))
MAX_DIMENSION = int(os.getenv("MAX_DIMENSION", 64))
ORTHONORMAL_TOLERANCE = 1e-10

# Geometry settings
CONDITIONING_CAP = float(os.getenv("CONDITIONING_CAP", 1e8))
DEFAULT_DIMENSION = int(os.getenv("GEOM_DIMENSION", 3))

# Verification defaults
DEFAULT_TRIALS = int(os.getenv("GEOM_TRIALS", 200))
VERIFY_MIN_SAMPLES = 1000

# Flask settings
DEBUG = os.getenv("DEBUG", "False").lower() in ("true", "1", "t")
HOST = os.getenv("HOST", "0.0.0.0")
PORT = int(os.getenv("PORT", 5000))
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()

logging.getLogger(__name__).debug(
    f"Configuration loaded: seed={DEFAULT_SEED}, samples={DEFAULT_SAMPLES}, "
    f"chunk={CHUNK_SIZE}, workers={DEFAULT_WORKERS}, output={OUTPUT_DIR}"
)
