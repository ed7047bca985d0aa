"""Creation-operator transfer matrices for the lattice.

Column convention (read this before indexing anything)
------------------------------------------------------
``U[out, in]``: column ``j`` of a transfer matrix lists the output-mode
coefficients of input mode ``j``,

    adag_in[j] = sum_out U[out, j] * adag_out[out],

so propagating a single-port Fock input means reading off one column.
Transposing this convention is the classic bug; every routine in the
package assumes it.  The forward (annihilation-operator) map is the
conjugate transpose and is not separately exposed.

A beam splitter contributes the 2x2 block [[i r, t], [t, i r]] (reflection
picks up the factor i).  A phase shifter multiplies its mode's coefficient
by exp(i*phi).  The full lattice unitary is the level product
``M_L @ ... @ M_1`` computed in O(L^4) scalar work, comfortably
polynomial; the dual-Fock input ports are the centre pair, global modes
L and L+1 in device numbering (0-based column indices L-1 and L).
"""

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .lattice import BeamSplitterSpec, LatticeConfig, active_slice

UNITARITY_TOL = 1e-10


@dataclass(frozen=True)
class TransferMatrix:
    """A validated (2L)x(2L) creation-operator unitary.

    Thin wrapper over an ndarray; index it 0-based like any array.
    Immutable after construction, safe for concurrent reads.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValidationError(f"transfer matrix must be square, got {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        dev = np.abs(m.conj().T @ m - np.eye(m.shape[0])).max() if m.size else 0.0
        if dev > UNITARITY_TOL:
            raise ValidationError(
                f"matrix is not unitary: max |U^dag U - I| = {dev:.3e}"
            )

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __getitem__(self, key):
        return self.matrix[key]

    def column(self, j: int) -> np.ndarray:
        """Output coefficients of input mode ``j`` (0-based)."""
        return self.matrix[:, j]


def as_matrix(U) -> np.ndarray:
    """Accept a TransferMatrix or a plain array and return the ndarray."""
    if isinstance(U, TransferMatrix):
        return U.matrix
    return np.asarray(U, dtype=complex)


def input_ports(L: int) -> tuple[int, int]:
    """0-based column indices of the two top input ports (|N>, |M>)."""
    return (L - 1, L)


def bs_block(spec: BeamSplitterSpec) -> np.ndarray:
    """2x2 creation-operator block of one beam splitter."""
    return np.array([[1j * spec.r, spec.t], [spec.t, 1j * spec.r]], dtype=complex)


def level_matrix(config: LatticeConfig, level: int) -> TransferMatrix:
    """Unitary of one level: its beam splitters, then its phase layer.

    Identity outside the active span.  Beam splitter k of the level acts on
    the adjacent global pair (L-level+2k-1, L-level+2k) in device numbering;
    the final level carries no phase layer.
    """
    L = config.depth
    if not 1 <= level <= L:
        raise ValidationError(f"level must be in 1..{L}, got {level}")
    n = 2 * L
    m = np.eye(n, dtype=complex)
    for k in range(1, level + 1):
        a = L - level + 2 * k - 2  # 0-based upper mode of the pair
        m[np.ix_((a, a + 1), (a, a + 1))] = bs_block(config.bs[(level, k)])
    if level < L:
        span = active_slice(L, level)
        phase = np.array(
            [config.phases[(level, j)] for j in range(1, 2 * level + 1)]
        )
        m[span, :] = np.exp(1j * phase)[:, None] * m[span, :]
    return TransferMatrix(m)


def total_matrix(config: LatticeConfig) -> TransferMatrix:
    """Full-lattice transfer unitary M_L @ ... @ M_1.

    Column j holds the final-level coefficients of input mode j, so the
    |N> port's coefficients are ``total_matrix(cfg).column(L - 1)``.
    """
    u = np.eye(2 * config.depth, dtype=complex)
    for level in range(1, config.depth + 1):
        u = level_matrix(config, level).matrix @ u
    return TransferMatrix(u)
