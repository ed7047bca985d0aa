"""Shared helpers for the test suite."""

import math

import numpy as np

from pachinko import BeamSplitterSpec, LatticeConfig, uniform_config


def random_config(rng: np.random.Generator, L: int, interior: bool = False) -> LatticeConfig:
    """Random lattice: per-node mixing angles and phases.

    With ``interior`` the angles stay away from 0 and pi/2 so no
    coefficient degenerates to an exact zero.
    """
    lo, hi = (0.1, math.pi / 2 - 0.1) if interior else (0.0, math.pi / 2)
    bs = {
        (lev, k): BeamSplitterSpec.from_theta(rng.uniform(lo, hi))
        for lev in range(1, L + 1)
        for k in range(1, lev + 1)
    }
    phases = {
        (lev, j): rng.uniform(0.0, 2 * math.pi)
        for lev in range(1, L)
        for j in range(1, 2 * lev + 1)
    }
    return LatticeConfig(depth=L, bs=bs, phases=phases)


def eq1_column(r: float, t: float) -> np.ndarray:
    """Closed-form level-3 coefficients of the centre input port, uniform lattice."""
    return np.array(
        [
            1j * r * t**2,
            -(r**2) * t,
            1j * r * (t**2 - r**2),
            -2 * r**2 * t,
            1j * r * t**2,
            t**3,
        ],
        dtype=complex,
    )


def config_5050(L: int = 3) -> LatticeConfig:
    return uniform_config(L, 2**-0.5, 2**-0.5)
