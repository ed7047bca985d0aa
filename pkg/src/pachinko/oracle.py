"""Brute-force Schrodinger-picture engine: full Fock-basis state-vector
evolution through the lattice.

This is the deliberately simple reference implementation the fast
(operator-propagation) route is checked against.  Its cost is the full
occupation-basis dimension C(N+2L-1, N), exponential in the machine size,
which is exactly why it only runs at desk scale; the per-photon branch
count that makes naive path summation hopeless is exposed separately as
:func:`path_count`.

States map occupation patterns (tuples of length 2L) to complex
amplitudes.  Two-mode transformations are applied by exact monomial
rebinding of creation operators with binomial sums; factorials stay exact
in doubles for the photon numbers this engine is meant for (N <= 20).
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import settings
from .errors import CostGuardError, ValidationError
from .lattice import BeamSplitterSpec, LatticeConfig
from .transfer import bs_block


@dataclass
class FockStateVector:
    """Occupation-basis state over the 2L detector modes.

    ``amplitudes`` maps length-2L tuples to complex numbers; patterns all
    carry the same total photon number N.  Evolution is single-threaded;
    read-only queries afterwards are concurrency-safe.
    """

    L: int
    N: int
    amplitudes: dict = field(default_factory=dict)

    @property
    def num_modes(self) -> int:
        return 2 * self.L

    def norm_sq(self) -> float:
        return float(sum(abs(a) ** 2 for a in self.amplitudes.values()))

    def probability(self, pattern) -> float:
        return abs(self.amplitudes.get(tuple(pattern), 0j)) ** 2

    def probabilities(self) -> dict:
        return {p: abs(a) ** 2 for p, a in self.amplitudes.items()}

    def mean_photons(self) -> np.ndarray:
        """Per-detector mean photon number."""
        out = np.zeros(self.num_modes)
        for pattern, amp in self.amplitudes.items():
            w = abs(amp) ** 2
            for mode, count in enumerate(pattern):
                if count:
                    out[mode] += w * count
        return out


def _sqrt_fact_ratio(m_a: int, m_b: int, p: int, q: int) -> float:
    # sqrt(m_a! m_b! / (p! q!)) with the ratio formed exactly first
    num = math.factorial(m_a) * math.factorial(m_b)
    den = math.factorial(p) * math.factorial(q)
    return math.sqrt(num / den)


def apply_two_mode(state: FockStateVector, mode_a: int, mode_b: int, block) -> FockStateVector:
    """Apply an arbitrary 2x2 creation-operator block to a mode pair.

    ``block`` follows the package column convention: column 0 holds the
    output coefficients of input mode_a, column 1 those of mode_b.
    Photon number is conserved pattern by pattern.
    """
    n_modes = state.num_modes
    if not (0 <= mode_a < n_modes and 0 <= mode_b < n_modes) or mode_a == mode_b:
        raise ValidationError(
            f"need two distinct mode indices in 0..{n_modes - 1}, "
            f"got {mode_a}, {mode_b}"
        )
    u00, u01 = complex(block[0][0]), complex(block[0][1])
    u10, u11 = complex(block[1][0]), complex(block[1][1])

    new_amps: dict = {}
    for pattern, amp in state.amplitudes.items():
        p, q = pattern[mode_a], pattern[mode_b]
        if p == 0 and q == 0:
            new_amps[pattern] = new_amps.get(pattern, 0j) + amp
            continue
        base = list(pattern)
        for m_a in range(p + q + 1):
            m_b = p + q - m_a
            coeff = 0j
            for j in range(max(0, m_a - q), min(p, m_a) + 1):
                k = m_a - j
                coeff += (
                    math.comb(p, j)
                    * math.comb(q, k)
                    * u00**j
                    * u10 ** (p - j)
                    * u01**k
                    * u11 ** (q - k)
                )
            if coeff == 0:
                continue
            coeff *= _sqrt_fact_ratio(m_a, m_b, p, q)
            base[mode_a], base[mode_b] = m_a, m_b
            key = tuple(base)
            new_amps[key] = new_amps.get(key, 0j) + amp * coeff
    return FockStateVector(L=state.L, N=state.N, amplitudes=new_amps)


def apply_bs(state: FockStateVector, mode_a: int, mode_b: int, spec: BeamSplitterSpec) -> FockStateVector:
    """Beam splitter on a mode pair in the occupation basis."""
    return apply_two_mode(state, mode_a, mode_b, bs_block(spec))


def apply_phase(state: FockStateVector, mode: int, phi: float) -> FockStateVector:
    """Phase shifter exp(i*phi*n) on one mode."""
    if not 0 <= mode < state.num_modes:
        raise ValidationError(f"mode must be in 0..{state.num_modes - 1}, got {mode}")
    new_amps = {}
    for pattern, amp in state.amplitudes.items():
        new_amps[pattern] = amp * complex(np.exp(1j * phi * pattern[mode]))
    return FockStateVector(L=state.L, N=state.N, amplitudes=new_amps)


def initial_state(L: int, N: int, M: int) -> FockStateVector:
    """Dual-Fock input |N>|M> on the centre port pair, vacuum elsewhere."""
    if N < 0 or M < 0:
        raise ValidationError("photon numbers must be non-negative")
    pattern = [0] * (2 * L)
    pattern[L - 1] = N
    pattern[L] = M
    return FockStateVector(L=L, N=N + M, amplitudes={tuple(pattern): 1 + 0j})


def evolve(config: LatticeConfig, N: int, M: int = 0) -> FockStateVector:
    """Propagate the dual-Fock input through every level of the lattice.

    Applies each level's beam splitters then its phase layer; the final
    level carries no phases.  Refuses to start when the occupation-basis
    dimension C(N+M+2L-1, N+M) exceeds the cost cap.
    """
    L = config.depth
    dim = math.comb(N + M + 2 * L - 1, N + M)
    cap = settings.cost_cap()
    if dim > cap:
        raise CostGuardError(
            f"state space has dimension {dim} > cap {cap} "
            f"(PACHINKO_COST_CAP to override)"
        )
    state = initial_state(L, N, M)
    for level in range(1, L + 1):
        for k in range(1, level + 1):
            a = L - level + 2 * k - 2  # 0-based upper mode of the pair
            state = apply_bs(state, a, a + 1, config.bs[(level, k)])
        if level < L:
            for j in range(1, 2 * level + 1):
                state = apply_phase(state, L - level + j - 1, config.phases[(level, j)])
    return state


def path_count(N: int, M: int, L: int) -> int:
    """Exact number of per-photon branchings, 2^(L*(N+M)).

    Each of the N+M photons bifurcates once per level; following every
    branch is the naive simulation strategy this count rules out.
    """
    if N < 0 or M < 0 or L < 0:
        raise ValidationError("arguments must be non-negative")
    return 2 ** (L * (N + M))
