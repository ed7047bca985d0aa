"""Environment-configurable cost guards.

The guards exist to fail fast instead of hanging: the pattern count grows
as C(N+2L-1, N) and the permanent kernel as 2^n, so an innocent-looking
argument can request years of work.  Defaults are desk-scale; power users
override them per process:

    PACHINKO_COST_CAP      maximum number of occupation patterns a full
                           distribution (or state-vector evolution) may
                           enumerate; default 10**6
    PACHINKO_RYSER_MAX     largest matrix dimension permanent_ryser accepts;
                           default 30
    PACHINKO_LAPLACE_MAX   largest matrix dimension permanent_laplace
                           accepts; default 12
"""

import os

_DEFAULT_COST_CAP = 10**6
_DEFAULT_RYSER_MAX = 30
_DEFAULT_LAPLACE_MAX = 12


def _read_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


def cost_cap() -> int:
    """Pattern-count cap for complete distributions and state vectors."""
    return _read_int("PACHINKO_COST_CAP", _DEFAULT_COST_CAP)


def ryser_max() -> int:
    """Dimension guard for the Ryser permanent kernel."""
    return _read_int("PACHINKO_RYSER_MAX", _DEFAULT_RYSER_MAX)


def laplace_max() -> int:
    """Dimension guard for the Laplace-expansion permanent kernel."""
    return _read_int("PACHINKO_LAPLACE_MAX", _DEFAULT_LAPLACE_MAX)
