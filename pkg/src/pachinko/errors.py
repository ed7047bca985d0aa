"""Exception types shared across the package.

The CLI maps these onto its exit-code contract: ValidationError -> 1,
CostGuardError -> 2 (oracle mismatches are detected in the CLI itself
and exit 3).
"""


class ValidationError(ValueError):
    """Raised when a configuration, state or argument violates a contract."""


class CostGuardError(RuntimeError):
    """Raised when a computation is refused because its cost would explode.

    The message states the offending size and the guard that tripped, so
    callers can decide whether to raise the cap (see ``pachinko.settings``).
    """
