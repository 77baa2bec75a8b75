# Search and reporting configuration
import logging
import os

from core.errors import InputError

ENUM_START_BOUND = 2
ENUM_CEILING = 32

# Largest estimated ellipsoid population walked before a search gives up
BALL_POINT_CAP = 2_000_000
# Box enumeration switches to exact object arithmetic past this magnitude
BOX_INT64_LIMIT = 2 ** 62
BOX_CHUNK = 1 << 16

LLL_DELTA = (3, 4)

REPORT_SCHEMA = "covermap-report/1"
CLASSIFICATION_SCHEMA = "covermap-classification/1"
BRANCH_SCHEMA = "covermap-branch/1"

DEFAULT_MAX_SUM = 2
IMMERSED_DEGREE = 4
ADMISSIBLE_DEGREES = (4, 5, 6, 9)

EXIT_OK, EXIT_INVALID, EXIT_INCONCLUSIVE = 0, 1, 2

LOG_LEVEL = "WARNING"
LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"

# Node budget for the A8 root-frame backtracking
E8_SEARCH_BUDGET = 200_000


def log_level(name: str, source: str = "log level") -> str:
    """Upper-cased logging level name; InputError for names logging does not know."""
    level = str(name).strip().upper()
    if not isinstance(logging.getLevelName(level), int):
        raise InputError(source, f"unknown logging level {name!r}")
    return level


def load_environment(environ=None) -> None:
    """Apply COVERMAP_ENUM_CEILING and COVERMAP_LOG_LEVEL; unset variables leave the current values."""
    global ENUM_CEILING, LOG_LEVEL
    environ = os.environ if environ is None else environ
    raw = environ.get("COVERMAP_ENUM_CEILING")
    if raw is not None:
        try:
            ceiling = int(raw)
        except ValueError:
            raise InputError("COVERMAP_ENUM_CEILING", f"expected an integer, got {raw!r}") from None
        if ceiling < ENUM_START_BOUND:
            raise InputError("COVERMAP_ENUM_CEILING", f"must be at least {ENUM_START_BOUND}, got {ceiling}")
        ENUM_CEILING = ceiling
    raw = environ.get("COVERMAP_LOG_LEVEL")
    if raw is not None:
        LOG_LEVEL = log_level(raw, "COVERMAP_LOG_LEVEL")
