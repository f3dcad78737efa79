import os

from dotenv import load_dotenv

from cm_engine.core.errors import ConfigError


load_dotenv()


def env(key: str, default: str | None = None) -> str | None:
    value = os.getenv(key)
    if value is None or value == "":
        return default
    return value


def env_int(key: str, default: int) -> int:
    value = env(key)
    if value is None:
        return default
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{key} must be an integer, got {value!r}") from None


# Enumeration
CYCLE_CAP = env_int("CM_CYCLE_CAP", 10_000)

# Output
OUTPUT_FORMAT = env("CM_FORMAT", "text")
LOG_LEVEL = env("CM_LOG_LEVEL", "WARNING")
REPORT_SCHEMA = "cm-report/1"

# Execution
WORKERS = env_int("CM_WORKERS", 1)
CACHE_SIZE = env_int("CM_CACHE_SIZE", 512)

# Invariance checks
CHECK_MOVES = env_int("CM_MOVES", 10)
CHECK_SEED = env_int("CM_SEED", 0)
