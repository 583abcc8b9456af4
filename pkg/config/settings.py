import os
import logging
from pathlib import Path

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

logger = logging.getLogger(__name__)

PROJECT_ROOT = Path(__file__).resolve().parent.parent

# Logging configuration from environment variables (with defaults)
LOG_LEVEL = os.environ.get('LOG_LEVEL', 'WARNING')
LOG_JSON = os.environ.get('LOG_JSON', 'false').lower() == 'true'
LOG_FILE = os.environ.get('LOG_FILE') or None

# Where bare profile names given to --curve are looked up
CURVE_DIR = Path(os.environ.get('BUNMOT_CURVE_DIR', str(PROJECT_ROOT / 'curves')))

# Default truncation order for series output
DEFAULT_TRUNC = int(os.environ.get('BUNMOT_DEFAULT_TRUNC', '25'))

# Worker threads for grid audits; 1 disables the pool
WORKERS = max(1, int(os.environ.get('BUNMOT_WORKERS', '4')))


def resolve_curve_path(name: str) -> Path:
    """Resolve a --curve argument: explicit paths win, then CURVE_DIR lookups"""
    candidate = Path(name)
    if candidate.exists():
        return candidate
    for option in (CURVE_DIR / name, CURVE_DIR / f"{name}.json"):
        if option.exists():
            return option
    return candidate
