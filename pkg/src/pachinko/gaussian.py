"""Polynomial-cost propagation of coherent and squeezed inputs.

This is the efficient side of the simulation-cost contrast: Gaussian
states stay Gaussian under the lattice, so instead of an exponentially
large amplitude table the state is a 4L real mean vector plus a 4L x 4L
covariance matrix, and one pass through the machine is a few dense matrix
products.

A squeezed input could equivalently be tracked through the exponent of
its squeezing operator, which stays a quadratic form with at most
2L(L+1) distinct monomials; the covariance route below carries the same
information with plain matrix algebra and the same polynomial cost.

Conventions (fixed here, tested via purity):
  * quadratures interleaved as (x_1, p_1, x_2, p_2, ...), hbar = 1,
    x = (a + a^dag)/sqrt(2), so the vacuum covariance is I/2;
  * the symplectic image of a transfer unitary U = A + iB consists of the
    2x2 blocks [[A_lj, -B_lj], [B_lj, A_lj]];
  * per-mode mean photon number <n_l> = (tr V_l - 1)/2 + |m_l|^2 / 2 with
    V_l the 2x2 covariance block and m_l the two quadrature means.

Only photon-number means are exposed, not full counting distributions.
All transformations are pure functions on immutable inputs.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ValidationError
from .transfer import as_matrix

SYMPLECTIC_TOL = 1e-10
UNCERTAINTY_TOL = 1e-9
MAX_SQUEEZING = 5.0


class OpCounter:
    """Tallies the scalar multiply-adds a propagation actually issues.

    Used to certify polynomial cost by counting steps instead of timing.
    """

    def __init__(self):
        self.total = 0

    def add(self, n: int) -> None:
        self.total += int(n)


@dataclass(frozen=True)
class CoherentInput:
    """Coherent amplitude ``beta`` entering one port (0-based index)."""

    beta: complex
    port: int

    @property
    def mean_photons(self) -> float:
        return abs(self.beta) ** 2


@dataclass(frozen=True)
class GaussianState:
    """Mean vector and covariance over the 2L modes (4L quadratures)."""

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=float)
        cov = np.asarray(self.cov, dtype=float)
        if mean.ndim != 1 or mean.size % 2:
            raise ValidationError("mean must be a flat vector of 2*modes entries")
        if cov.shape != (mean.size, mean.size):
            raise ValidationError(
                f"covariance shape {cov.shape} does not match mean size {mean.size}"
            )
        if np.abs(cov - cov.T).max() > UNCERTAINTY_TOL:
            raise ValidationError("covariance must be symmetric")
        # Heisenberg constraint: cov + (i/2)*Omega >= 0
        omega = omega_matrix(mean.size // 2)
        eigs = np.linalg.eigvalsh(cov + 0.5j * omega)
        if eigs.min() < -UNCERTAINTY_TOL:
            raise ValidationError(
                f"covariance violates the uncertainty relation "
                f"(min eigenvalue {eigs.min():.3e})"
            )
        mean.setflags(write=False)
        cov.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def num_modes(self) -> int:
        return self.mean.size // 2

    def mean_photons(self) -> np.ndarray:
        """Per-mode mean photon number (see module conventions)."""
        n = self.num_modes
        out = np.empty(n)
        for l in range(n):
            sl = slice(2 * l, 2 * l + 2)
            out[l] = 0.5 * (np.trace(self.cov[sl, sl]) - 1.0) + 0.5 * (
                self.mean[sl] ** 2
            ).sum()
        return out

    def purity_det(self) -> float:
        """det(2V); equals 1 exactly for pure states."""
        return float(np.linalg.det(2.0 * self.cov))


def omega_matrix(num_modes: int) -> np.ndarray:
    """Symplectic form in the interleaved (x, p) ordering."""
    omega = np.zeros((2 * num_modes, 2 * num_modes))
    for l in range(num_modes):
        omega[2 * l, 2 * l + 1] = 1.0
        omega[2 * l + 1, 2 * l] = -1.0
    return omega


def vacuum_state(L: int) -> GaussianState:
    """All 2L modes in vacuum."""
    n = 2 * L
    return GaussianState(mean=np.zeros(2 * n), cov=0.5 * np.eye(2 * n))


def coherent_state(beta: complex, port: int, L: int) -> GaussianState:
    """Coherent |beta> on ``port`` (0-based), vacuum elsewhere."""
    n = 2 * L
    if not 0 <= port < n:
        raise ValidationError(f"port must be in 0..{n - 1}, got {port}")
    mean = np.zeros(2 * n)
    mean[2 * port] = math.sqrt(2.0) * beta.real
    mean[2 * port + 1] = math.sqrt(2.0) * beta.imag
    return GaussianState(mean=mean, cov=0.5 * np.eye(2 * n))


def squeezed_vacuum_state(xi: complex, port: int, L: int) -> GaussianState:
    """Single-mode squeezed vacuum on ``port``, vacuum elsewhere.

    With s = |xi| the port's quadrature variances are e^(-2s)/2 and
    e^(+2s)/2, rotated by arg(xi)/2; the mean photon number is sinh(s)^2.
    """
    n = 2 * L
    if not 0 <= port < n:
        raise ValidationError(f"port must be in 0..{n - 1}, got {port}")
    xi = complex(xi)
    s = abs(xi)
    if s > MAX_SQUEEZING:
        raise ValidationError(
            f"|xi| = {s} exceeds the numerical range guard {MAX_SQUEEZING}"
        )
    phi = math.atan2(xi.imag, xi.real) / 2.0
    rot = np.array([[math.cos(phi), -math.sin(phi)], [math.sin(phi), math.cos(phi)]])
    block = rot @ np.diag([math.exp(-2 * s) / 2, math.exp(2 * s) / 2]) @ rot.T
    cov = 0.5 * np.eye(2 * n)
    cov[2 * port : 2 * port + 2, 2 * port : 2 * port + 2] = block
    return GaussianState(mean=np.zeros(2 * n), cov=cov)


def symplectic_from_unitary(U, counter: Optional[OpCounter] = None) -> np.ndarray:
    """4L x 4L real symplectic matrix induced by a transfer unitary."""
    u = as_matrix(U)
    n = u.shape[0]
    s = np.zeros((2 * n, 2 * n))
    a, b = u.real, u.imag
    s[0::2, 0::2] = a
    s[0::2, 1::2] = -b
    s[1::2, 0::2] = b
    s[1::2, 1::2] = a
    if counter is not None:
        counter.add(4 * n * n)
    omega = omega_matrix(n)
    dev = np.abs(s.T @ omega @ s - omega).max()
    if dev > SYMPLECTIC_TOL:
        raise ValidationError(
            f"induced matrix is not symplectic: max deviation {dev:.3e}"
        )
    return s


def propagate_coherent(U, inp: CoherentInput, counter: Optional[OpCounter] = None) -> np.ndarray:
    """Output coherent amplitudes beta * U[:, port], one per detector.

    Linear work given U; the output is again a product of coherent
    states, so the per-detector mean photon number is |beta * U[l,p]|^2.
    """
    u = as_matrix(U)
    if not 0 <= inp.port < u.shape[0]:
        raise ValidationError(
            f"port must be in 0..{u.shape[0] - 1}, got {inp.port}"
        )
    if counter is not None:
        counter.add(u.shape[0])
    return inp.beta * u[:, inp.port]


def propagate_gaussian(U, state: GaussianState, counter: Optional[OpCounter] = None) -> GaussianState:
    """Propagate mean and covariance: m -> S m, V -> S V S^T."""
    u = as_matrix(U)
    if state.num_modes != u.shape[0]:
        raise ValidationError(
            f"state has {state.num_modes} modes, matrix has {u.shape[0]}"
        )
    s = symplectic_from_unitary(u, counter)
    d = s.shape[0]
    mean = s @ state.mean
    cov = s @ state.cov @ s.T
    cov = 0.5 * (cov + cov.T)  # kill fp asymmetry before validation
    if counter is not None:
        counter.add(d * d + 2 * d * d * d)
    return GaussianState(mean=mean, cov=cov)
