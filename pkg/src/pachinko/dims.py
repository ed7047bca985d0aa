"""Exact state-space dimension and operation counting.

Everything here is exact big-integer arithmetic (Python ints); floating
point appears only in :func:`stirling_estimate`, which is evaluated in the
log domain so it keeps working far past the float overflow point of the
direct formula.
"""

import math
from dataclasses import dataclass

from .errors import ValidationError
from .oracle import path_count


def dim_bosonic(N: int, L: int) -> int:
    """Number of ways to distribute N identical bosons over 2L detectors.

    C(N + 2L - 1, N), exact.
    """
    if N < 0 or L < 1:
        raise ValidationError(f"need N >= 0 and L >= 1, got N={N}, L={L}")
    return math.comb(N + 2 * L - 1, N)


def dim_fermionic(N: int, L: int) -> int:
    """Number of single-species fermionic patterns: C(2L, N).

    Each of the 2L modes holds at most one particle, so N > 2L is a
    domain error (exclusion principle).
    """
    if L < 1:
        raise ValidationError(f"need L >= 1, got {L}")
    if not 0 <= N <= 2 * L:
        raise ValidationError(
            f"fermion number must satisfy 0 <= N <= 2L = {2 * L}, got {N}"
        )
    return math.comb(2 * L, N)


def stirling_estimate(N: int) -> float:
    """Large-N asymptotic 2^(2N) / sqrt(pi*N) of the half-filling dimensions.

    Evaluated as exp(2N ln 2 - ln(pi N)/2); returns inf once the value
    exceeds float range (N around 540).
    """
    if N < 1:
        raise ValidationError(f"need N >= 1, got {N}")
    log_value = 2 * N * math.log(2.0) - 0.5 * math.log(math.pi * N)
    try:
        return math.exp(log_value)
    except OverflowError:
        return math.inf


def stirling_estimate_log10(N: int) -> float:
    """log10 of :func:`stirling_estimate`, exact in the log domain."""
    if N < 1:
        raise ValidationError(f"need N >= 1, got {N}")
    return 2 * N * math.log10(2.0) - 0.5 * math.log10(math.pi * N)


def digit_count(value: int) -> int:
    """Number of decimal digits of a non-negative integer."""
    if value < 0:
        raise ValidationError("digit_count takes a non-negative integer")
    return len(str(value))


def scientific_str(value: int, digits: int = 3) -> str:
    """Order-of-magnitude rendering of a huge integer, e.g. '4.97e+86'."""
    if value < 0:
        raise ValidationError("scientific_str takes a non-negative integer")
    if value == 0:
        return "0"
    exponent = math.floor(math.log10(value))
    mantissa = value / 10**exponent
    return f"{mantissa:.{digits - 1}f}e+{exponent}"


@dataclass(frozen=True)
class ComplexityRow:
    """One line of the scaling table, all entries exact.

    The photon number is pinned to the hard regime N = 2L - 1 (bosonic)
    and half filling N = L (fermionic); path_count is the per-photon
    branch count 2^(L*N) for that bosonic input, ryser_ops the
    2^(2L) * L^2 permanent cost of the full output matrix.
    """

    L: int
    N: int
    dim_bosonic: int
    dim_fermionic: int
    path_count: int
    ryser_ops: int


def complexity_table(L_max: int) -> list[ComplexityRow]:
    """Exact scaling table for L = 1..L_max (guarded at 200)."""
    if not 1 <= L_max <= 200:
        raise ValidationError(f"L_max must be in 1..200, got {L_max}")
    rows = []
    for L in range(1, L_max + 1):
        N = 2 * L - 1
        rows.append(
            ComplexityRow(
                L=L,
                N=N,
                dim_bosonic=dim_bosonic(N, L),
                dim_fermionic=dim_fermionic(L, L),
                path_count=path_count(N, 0, L),
                ryser_ops=2 ** (2 * L) * L**2,
            )
        )
    return rows
