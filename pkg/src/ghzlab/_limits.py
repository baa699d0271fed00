"""Size limits and the exception hierarchy shared by every module."""

import os

MAX_DIM = 64
MAX_PARTIES = 63
MAX_TENSOR_ENTRIES = 2**24

DEFAULT_MAX_SEARCH = 10**8
DEFAULT_MAX_AMPLITUDES = 2**20

ENV_VAR = "GHZLAB_MAX_SPACE"


class GhzLabError(Exception):
    """Base class for errors raised by ghzlab."""


class ParameterError(GhzLabError, ValueError):
    """Invalid dimension, party count, index or settings string."""


class DimensionOverflowError(ParameterError):
    """A requested object would exceed the configured size cap."""


class ConstructionError(GhzLabError, RuntimeError):
    """An internal consistency check failed (signals a construction bug)."""


def _env_cap() -> int | None:
    raw = os.environ.get(ENV_VAR)
    if raw is None or raw.strip() == "":
        return None
    try:
        value = int(float(raw))
    except ValueError as exc:
        raise ParameterError(f"{ENV_VAR}={raw!r} is not a number") from exc
    if value < 1:
        raise ParameterError(f"{ENV_VAR} must be positive, got {value}")
    return value


def max_search_points() -> int:
    cap = _env_cap()
    return DEFAULT_MAX_SEARCH if cap is None else cap


def max_amplitudes() -> int:
    cap = _env_cap()
    return DEFAULT_MAX_AMPLITUDES if cap is None else cap


def check_dimension(d: int) -> None:
    if not isinstance(d, (int,)) or isinstance(d, bool):
        raise ParameterError(f"dimension must be an integer, got {d!r}")
    if not 2 <= d <= MAX_DIM:
        raise ParameterError(f"dimension d={d} outside [2, {MAX_DIM}]")


def check_parties(N: int) -> None:
    """Odd party count, 3 <= N <= MAX_PARTIES."""
    if not isinstance(N, int) or isinstance(N, bool):
        raise ParameterError(f"party count must be an integer, got {N!r}")
    if N < 3 or N % 2 == 0 or N > MAX_PARTIES:
        raise ParameterError(f"party count N={N} must be odd with 3 <= N <= {MAX_PARTIES}")


def check_amplitudes(d: int, N: int) -> int:
    size = d**N
    cap = max_amplitudes()
    if size > cap:
        raise DimensionOverflowError(f"d^N = {d}^{N} = {size} amplitudes exceeds cap {cap}")
    return size
