"""Exact permanent and determinant kernels over complex matrices.

The permanent governs bosonic transition amplitudes, the determinant
fermionic ones.  Both are computed exactly (no sampling, no approximation):

* :func:`permanent_ryser`: inclusion-exclusion over column subsets walked
  in Gray-code order so each step updates the running row sums with one
  column, Theta(2^n * n) arithmetic.  For the full (2L)x(2L) lattice
  unitary that is O(2^(2L) L^2) work, which is the whole point: there is
  no known polynomial shortcut.
* :func:`permanent_laplace`: textbook first-row expansion with all plus
  signs, factorial-ish cost; kept as an independent cross-check oracle.
* :func:`determinant`: elimination with partial pivoting, Theta(n^3);
  the polynomial shortcut that exists for the antisymmetric case.

All kernels are pure functions and safe to call concurrently.  Size guards
fail fast instead of hanging; see ``pachinko.settings`` for the knobs.
"""

import math

import numpy as np

from . import settings
from .errors import CostGuardError, ValidationError
from .transfer import as_matrix

try:
    from numba import njit as _njit
except ModuleNotFoundError:  # pragma: no cover - numba is a declared dep
    _njit = None


def _as_square(m) -> np.ndarray:
    a = np.asarray(as_matrix(m), dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {a.shape}")
    return a


def _ryser_gray_py(a: np.ndarray) -> complex:
    # Same loop as the jitted version; kept for environments without numba.
    n = a.shape[0]
    row_sums = [0j] * n
    total = 0j
    gray = 0
    size = 0
    for k in range(1, 1 << n):
        j = (k & -k).bit_length() - 1
        bit = 1 << j
        gray ^= bit
        if gray & bit:
            size += 1
            for i in range(n):
                row_sums[i] += a[i, j]
        else:
            size -= 1
            for i in range(n):
                row_sums[i] -= a[i, j]
        prod = 1 + 0j
        for i in range(n):
            prod *= row_sums[i]
        total += -prod if size & 1 else prod
    return -total if n & 1 else total


if _njit is not None:

    @_njit(cache=True)
    def _ryser_gray_jit(a):  # pragma: no cover - exercised via permanent_ryser
        n = a.shape[0]
        row_sums = np.zeros(n, dtype=np.complex128)
        total = 0.0 + 0.0j
        gray = 0
        size = 0
        for k in range(1, 1 << n):
            j = 0
            while (k >> j) & 1 == 0:
                j += 1
            bit = 1 << j
            gray ^= bit
            if gray & bit:
                size += 1
                for i in range(n):
                    row_sums[i] += a[i, j]
            else:
                size -= 1
                for i in range(n):
                    row_sums[i] -= a[i, j]
            prod = 1.0 + 0.0j
            for i in range(n):
                prod *= row_sums[i]
            if size & 1:
                total -= prod
            else:
                total += prod
        if n & 1:
            return -total
        return total

else:  # pragma: no cover
    _ryser_gray_jit = None


def permanent_ryser(m) -> complex:
    """Permanent by Gray-code inclusion-exclusion, Theta(2^n * n).

    Per(A) = (-1)^n sum over non-empty column subsets S of (-1)^|S|
    prod_i sum_{j in S} A[i, j]; the Gray-code walk changes one column
    per subset.  The empty matrix has permanent 1.  Deterministic: the
    subset loop is sequential, so results are bit-stable across calls.
    """
    a = _as_square(m)
    n = a.shape[0]
    limit = settings.ryser_max()
    if n > limit:
        raise CostGuardError(
            f"permanent of a {n}x{n} matrix needs about 2^{n} subset steps; "
            f"guard is n <= {limit} (PACHINKO_RYSER_MAX to override)"
        )
    if n == 0:
        return 1 + 0j
    if _ryser_gray_jit is not None:
        return complex(_ryser_gray_jit(np.ascontiguousarray(a)))
    return complex(_ryser_gray_py(a))


def permanent_laplace(m) -> complex:
    """Permanent by recursive first-row expansion (all plus signs).

    Independent of the Ryser route; factorial-ish cost, so the guard is
    tight (PACHINKO_LAPLACE_MAX to override).
    """
    a = _as_square(m)
    n = a.shape[0]
    limit = settings.laplace_max()
    if n > limit:
        raise CostGuardError(
            f"Laplace permanent of a {n}x{n} matrix is factorial-cost; "
            f"guard is n <= {limit} (PACHINKO_LAPLACE_MAX to override)"
        )

    def expand(row: int, cols: tuple) -> complex:
        if not cols:
            return 1 + 0j
        total = 0j
        for idx, j in enumerate(cols):
            entry = a[row, j]
            if entry != 0:
                total += entry * expand(row + 1, cols[:idx] + cols[idx + 1 :])
        return total

    return complex(expand(0, tuple(range(n))))


def determinant(m) -> complex:
    """Determinant by elimination with partial pivoting, Theta(n^3).

    Singular matrices return 0 (a zero pivot short-circuits).  The empty
    matrix has determinant 1.
    """
    a = _as_square(m).copy()
    n = a.shape[0]
    det = 1 + 0j
    for col in range(n):
        pivot = int(np.argmax(np.abs(a[col:, col]))) + col
        if a[pivot, col] == 0:
            return 0j
        if pivot != col:
            a[[col, pivot]] = a[[pivot, col]]
            det = -det
        det *= a[col, col]
        factors = a[col + 1 :, col] / a[col, col]
        a[col + 1 :, col:] -= factors[:, None] * a[col, col:]
    return complex(det)


def scattering_submatrix(U, input_pattern, output_pattern) -> np.ndarray:
    """N x N transition submatrix for occupation patterns.

    Column j of U is taken input_pattern[j] times and row l is taken
    output_pattern[l] times, in index order.  Photon numbers must agree.
    """
    u = as_matrix(U)
    inp = tuple(int(v) for v in input_pattern)
    out = tuple(int(v) for v in output_pattern)
    if any(v < 0 for v in inp + out):
        raise ValidationError("occupation counts must be non-negative")
    if sum(inp) != sum(out):
        raise ValidationError(
            f"photon number mismatch: input {sum(inp)}, output {sum(out)}"
        )
    cols = [j for j, v in enumerate(inp) for _ in range(v)]
    rows = [l for l, v in enumerate(out) for _ in range(v)]
    return u[np.ix_(rows, cols)]


def warm_up() -> None:
    """Trigger JIT compilation of the Ryser kernel outside timing windows."""
    permanent_ryser(np.eye(2, dtype=complex))


def factorial_product(pattern) -> int:
    """Exact product of factorials of the counts in a pattern."""
    out = 1
    for v in pattern:
        out *= math.factorial(int(v))
    return out
