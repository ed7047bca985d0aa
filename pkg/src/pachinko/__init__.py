"""Exact desk-scale simulator of a triangular beam-splitter lattice.

A depth-L cascade of beam splitters and phase shifters is driven with
bosonic Fock, coherent, squeezed-vacuum or fermionic inputs; the package
computes exact output photon-counting statistics two independent ways
(operator propagation vs full state-vector evolution), exact Hilbert-space
dimensions and path counts, and the permanent-vs-determinant cost contrast
that separates the hard bosonic case from the easy fermionic one.
"""

__version__ = "0.1.0"

from .dims import complexity_table, dim_bosonic, dim_fermionic, stirling_estimate
from .errors import CostGuardError, ValidationError
from .fock import (
    AmplitudeDistribution,
    FermionOccupation,
    amplitude_general,
    amplitude_single_port,
    fermion_amplitude,
    full_distribution,
    marginal,
)
from .gaussian import (
    CoherentInput,
    GaussianState,
    propagate_coherent,
    propagate_gaussian,
    squeezed_vacuum_state,
)
from .kernels import determinant, permanent_laplace, permanent_ryser, scattering_submatrix
from .lattice import (
    BeamSplitterSpec,
    LatticeConfig,
    PhysicalConstants,
    ResourceReport,
    active_mode_span,
    load_config,
    resource_report,
    save_config,
    uniform_config,
)
from .oracle import FockStateVector, apply_bs, evolve, path_count
from .transfer import TransferMatrix, bs_block, input_ports, level_matrix, total_matrix

__all__ = [
    "__version__",
    "AmplitudeDistribution",
    "BeamSplitterSpec",
    "CoherentInput",
    "CostGuardError",
    "FermionOccupation",
    "FockStateVector",
    "GaussianState",
    "LatticeConfig",
    "PhysicalConstants",
    "ResourceReport",
    "TransferMatrix",
    "ValidationError",
    "active_mode_span",
    "amplitude_general",
    "amplitude_single_port",
    "apply_bs",
    "bs_block",
    "complexity_table",
    "determinant",
    "dim_bosonic",
    "dim_fermionic",
    "evolve",
    "fermion_amplitude",
    "full_distribution",
    "input_ports",
    "level_matrix",
    "load_config",
    "marginal",
    "path_count",
    "permanent_laplace",
    "permanent_ryser",
    "propagate_coherent",
    "propagate_gaussian",
    "resource_report",
    "save_config",
    "scattering_submatrix",
    "squeezed_vacuum_state",
    "stirling_estimate",
    "total_matrix",
    "uniform_config",
]
