"""Exact output photon-counting statistics for Fock-state inputs.

Bosonic amplitudes come in two independent flavours that must agree:

* :func:`amplitude_single_port`: closed form for all photons entering one
  port: sqrt(N!/prod n_k!) * prod alpha_k^(n_k), with alpha the input
  port's transfer-matrix column.  Polynomial per pattern.
* :func:`amplitude_general`: permanent of the row/column-repeated
  scattering submatrix over factorial normalisation.  Works for any input
  pattern and is exponential in the photon number, which is the price of
  generality.

Fermionic amplitudes replace the permanent by a determinant per spin
species and are therefore cheap; the contrast is the point.

Complete distributions enumerate all C(N+2L-1, N) occupation patterns in
lexicographic stars-and-bars order (stable across runs, so emitted tables
are reproducible byte for byte).
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from . import settings
from .errors import CostGuardError, ValidationError
from .kernels import determinant, factorial_product, permanent_ryser, scattering_submatrix
from .transfer import as_matrix

NORMALIZATION_TOL = 1e-9


def enumerate_patterns(total: int, modes: int) -> Iterator[tuple]:
    """All occupation patterns of ``total`` photons over ``modes`` slots.

    Lexicographically ascending: (0, ..., 0, total) first.
    """
    if total < 0 or modes < 0:
        raise ValidationError("need non-negative total and mode count")
    if modes == 0:
        if total == 0:
            yield ()
        return
    if modes == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in enumerate_patterns(total - first, modes - 1):
            yield (first,) + rest


def multinomial(N: int, pattern: Sequence[int]) -> int:
    """Exact multinomial coefficient N! / prod(n_k!)."""
    if sum(pattern) != N:
        raise ValidationError(f"pattern sums to {sum(pattern)}, expected {N}")
    out = 1
    remaining = N
    for n in pattern:
        out *= math.comb(remaining, n)
        remaining -= n
    return out


@dataclass
class AmplitudeDistribution:
    """Complete mapping pattern -> complex amplitude for a fixed input.

    Validated to be normalised within 1e-9; completeness (exactly
    C(N+2L-1, N) patterns) is required by :func:`marginal`.
    """

    total_photons: int
    num_modes: int
    amplitudes: dict = field(default_factory=dict)

    def __post_init__(self):
        norm = sum(abs(a) ** 2 for a in self.amplitudes.values())
        if abs(norm - 1.0) > NORMALIZATION_TOL:
            raise ValidationError(
                f"distribution norm {norm!r} deviates from 1 by more than "
                f"{NORMALIZATION_TOL}"
            )

    @property
    def is_complete(self) -> bool:
        expected = math.comb(self.total_photons + self.num_modes - 1, self.total_photons)
        return len(self.amplitudes) == expected

    def probability(self, pattern) -> float:
        return abs(self.amplitudes.get(tuple(pattern), 0j)) ** 2

    def probabilities(self) -> dict:
        return {p: abs(a) ** 2 for p, a in self.amplitudes.items()}

    def mean_photons(self) -> np.ndarray:
        out = np.zeros(self.num_modes)
        for pattern, amp in self.amplitudes.items():
            w = abs(amp) ** 2
            for mode, count in enumerate(pattern):
                if count:
                    out[mode] += w * count
        return out


def amplitude_single_port(alphas, pattern, N: int) -> complex:
    """Amplitude of ``pattern`` when all N photons enter one port.

    ``alphas`` is that port's transfer-matrix column.  The value is
    sqrt(N!/prod n_k!) * prod_k alpha_k^(n_k); its squared modulus is the
    detection probability.
    """
    alphas = np.asarray(alphas, dtype=complex)
    pattern = tuple(int(v) for v in pattern)
    if len(pattern) != alphas.shape[0]:
        raise ValidationError(
            f"pattern length {len(pattern)} does not match mode count {alphas.shape[0]}"
        )
    if any(v < 0 for v in pattern):
        raise ValidationError("occupation counts must be non-negative")
    if sum(pattern) != N:
        raise ValidationError(f"pattern sums to {sum(pattern)}, expected {N}")
    amp = complex(math.sqrt(multinomial(N, pattern)))
    for alpha, n in zip(alphas, pattern):
        if n:
            amp *= alpha**n
    return amp


def amplitude_general(U, input_pattern, output_pattern) -> complex:
    """Amplitude between arbitrary occupation patterns.

    Per(scattering submatrix) / sqrt(prod in_j! * prod out_l!); the
    permanent's cost guard propagates for large photon numbers.
    """
    sub = scattering_submatrix(U, input_pattern, output_pattern)
    norm = math.sqrt(factorial_product(input_pattern) * factorial_product(output_pattern))
    return permanent_ryser(sub) / norm


def full_distribution(U, input_pattern, threads: int = 1) -> AmplitudeDistribution:
    """Amplitudes of every output pattern for the given input pattern.

    Single-port inputs use the closed form, multi-port inputs the
    permanent route (the two agree; that equivalence is tested, not
    assumed).  With ``threads > 1`` pattern amplitudes are computed by a
    thread pool; results are deterministic either way.
    """
    u = as_matrix(U)
    modes = u.shape[0]
    pattern = tuple(int(v) for v in input_pattern)
    if len(pattern) != modes:
        raise ValidationError(
            f"input pattern length {len(pattern)} does not match mode count {modes}"
        )
    if any(v < 0 for v in pattern):
        raise ValidationError("occupation counts must be non-negative")
    N = sum(pattern)
    dim = math.comb(N + modes - 1, N)
    cap = settings.cost_cap()
    if dim > cap:
        raise CostGuardError(
            f"distribution has {dim} patterns > cap {cap} "
            f"(PACHINKO_COST_CAP to override)"
        )

    occupied = [j for j, v in enumerate(pattern) if v > 0]
    if len(occupied) <= 1:
        alphas = u[:, occupied[0]] if occupied else None

        def amplitude(out_pattern):
            if alphas is None:
                return 1 + 0j
            return amplitude_single_port(alphas, out_pattern, N)

    else:

        def amplitude(out_pattern):
            return amplitude_general(u, pattern, out_pattern)

    outputs = list(enumerate_patterns(N, modes))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            amps = list(pool.map(amplitude, outputs))
    else:
        amps = [amplitude(p) for p in outputs]
    return AmplitudeDistribution(
        total_photons=N,
        num_modes=modes,
        amplitudes=dict(zip(outputs, amps)),
    )


def marginal(dist: AmplitudeDistribution, detectors: Sequence[tuple]) -> float:
    """Probability that each listed detector sees exactly its listed count.

    ``detectors`` is a list of (detector index, photon count) pairs,
    0-based indices; unconstrained detectors are summed over.  Requires a
    complete distribution.
    """
    if not dist.is_complete:
        raise ValidationError("marginal requires a complete distribution")
    constraints = [(int(d), int(c)) for d, c in detectors]
    for d, _ in constraints:
        if not 0 <= d < dist.num_modes:
            raise ValidationError(
                f"detector index {d} out of range 0..{dist.num_modes - 1}"
            )
    total = 0.0
    for pattern, amp in dist.amplitudes.items():
        if all(pattern[d] == c for d, c in constraints):
            total += abs(amp) ** 2
    return total


# ---------------------------------------------------------------------------
# Fermions
# ---------------------------------------------------------------------------
# Spin-1/2 particles: the two spin species propagate independently through
# the same spatial unitary, so a transition amplitude is the product of one
# determinant per species.  Basis states are labelled by occupancies with a
# fixed canonical operator order: all spin-up creation operators first
# (ascending mode), then all spin-down (ascending mode).  Spin-entangled
# inputs are superpositions of such basis terms with client-supplied
# coefficients -- note the anticommutation bookkeeping: the spatially
# bunching "singlet" is (|up@a, down@b> + |up@b, down@a>)/sqrt(2) in this
# canonical basis (the minus sign of the first-quantised notation is
# absorbed by reordering the operators).


@dataclass(frozen=True)
class FermionOccupation:
    """Occupancies per (mode, spin); at most one particle per slot.

    ``up`` and ``down`` are equal-length tuples of 0/1 ints over the 2L
    spatial modes.
    """

    up: tuple
    down: tuple

    def __post_init__(self):
        up = tuple(int(v) for v in self.up)
        down = tuple(int(v) for v in self.down)
        object.__setattr__(self, "up", up)
        object.__setattr__(self, "down", down)
        if len(up) != len(down):
            raise ValidationError("spin-up and spin-down registers differ in length")
        if any(v not in (0, 1) for v in up + down):
            raise ValidationError(
                "Pauli violation: occupancies must be 0 or 1 per (mode, spin)"
            )

    @property
    def num_modes(self) -> int:
        return len(self.up)

    def counts(self) -> tuple[int, int]:
        return (sum(self.up), sum(self.down))


def _species_amplitude(u: np.ndarray, occ_in, occ_out) -> complex:
    cols = [j for j, v in enumerate(occ_in) if v]
    rows = [l for l, v in enumerate(occ_out) if v]
    if len(cols) != len(rows):
        return 0j
    if not cols:
        return 1 + 0j
    return determinant(u[np.ix_(rows, cols)])


def fermion_amplitude(U, input_occ: FermionOccupation, output_occ) -> complex:
    """Transition amplitude between fermionic occupation basis states.

    Product over spin species of det(rows = occupied outputs, columns =
    occupied inputs), each mode used exactly once, ascending order.  The
    output may be given as a FermionOccupation or as a raw (up, down)
    pair of count sequences; any output occupancy above 1 gives amplitude
    0 (Pauli-blocked), while an invalid *input* raises.
    """
    u = as_matrix(U)
    if isinstance(output_occ, FermionOccupation):
        out_up, out_down = output_occ.up, output_occ.down
    else:
        out_up, out_down = (tuple(int(v) for v in s) for s in output_occ)
    if input_occ.num_modes != u.shape[0]:
        raise ValidationError(
            f"occupation registers have {input_occ.num_modes} modes, "
            f"matrix has {u.shape[0]}"
        )
    if len(out_up) != len(out_down) or len(out_up) != u.shape[0]:
        raise ValidationError("output registers do not match the mode count")
    if any(v < 0 for v in out_up + out_down):
        raise ValidationError("occupation counts must be non-negative")
    if any(v > 1 for v in out_up + out_down):
        return 0j
    return _species_amplitude(u, input_occ.up, out_up) * _species_amplitude(
        u, input_occ.down, out_down
    )


def fermion_output_basis(num_modes: int, n_up: int, n_down: int) -> Iterator[FermionOccupation]:
    """All fermionic patterns with the given per-species particle numbers."""
    from itertools import combinations

    for ups in combinations(range(num_modes), n_up):
        up = tuple(1 if m in ups else 0 for m in range(num_modes))
        for downs in combinations(range(num_modes), n_down):
            down = tuple(1 if m in downs else 0 for m in range(num_modes))
            yield FermionOccupation(up=up, down=down)
