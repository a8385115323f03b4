import os
import sys
from pathlib import Path

from dotenv import load_dotenv

# variables already set in the environment take precedence over .env
load_dotenv(override=False)

DEFAULT_TRUNCATION = 24
DEFAULT_SEED = 20240601

_TRUE = {"1", "true", "yes", "on"}


def _env_flag(name: str) -> bool:
    return os.getenv(name, "0").strip().lower() in _TRUE


def debug_enabled() -> bool:
    return _env_flag("QSTIRLING_DEBUG")


def log_event(tag: str, msg: str, *, force: bool = False) -> None:
    """Print a tagged diagnostic line to stderr.

    stdout is reserved for the single JSON document a CLI call emits, so
    diagnostics never go there. Lines are dropped unless QSTIRLING_DEBUG is on
    or ``force`` is set (configuration warnings).
    """
    if not (force or debug_enabled()):
        return
    try:
        print(f"[{tag}] {msg}", file=sys.stderr)
    except Exception:
        pass


def _env_int(name: str, default: int, minimum: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw)
    except ValueError:
        log_event("CONFIG", f"{name}={raw!r} is not an integer, using {default}", force=True)
        return default
    if value < minimum:
        log_event("CONFIG", f"{name}={value} below {minimum}, using {default}", force=True)
        return default
    return value


def get_truncation_order() -> int:
    """Power-series truncation order (QSTIRLING_TRUNCATION, default 24)."""
    return _env_int("QSTIRLING_TRUNCATION", DEFAULT_TRUNCATION, 1)


def get_default_seed() -> int:
    return _env_int("QSTIRLING_SEED", DEFAULT_SEED, 0)


def cache_enabled() -> bool:
    return _env_flag("QSTIRLING_CACHE")


def get_data_dir() -> Path:
    """Directory holding the table cache.

    Priority: QSTIRLING_DATA_DIR, then ./data next to this file. Not created
    here; the cache creates it on first use.
    """
    env_dir = os.getenv("QSTIRLING_DATA_DIR")
    if env_dir:
        return Path(env_dir)
    return Path(__file__).resolve().parent / "data"
