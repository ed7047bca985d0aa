"""Geometry, validation and resource accounting for the beam-splitter lattice.

The device is a triangular cascade of depth ``L``: level ``l`` (1-based)
carries ``l`` beam splitters, and every level except the last is followed
by one tunable phase shifter per active mode.  Photons enter on the two
centre ports at the top and fall through to ``2L`` number-resolving
detectors at the bottom.

Mode bookkeeping uses a fixed global register of ``2L`` modes, numbered
1..2L left to right (device numbering).  Level ``l`` touches the centred
contiguous block returned by :func:`active_mode_span`; beam splitter ``k``
of level ``l`` couples the global pair ``(L-l+2k-1, L-l+2k)``.  This makes
each level a block-diagonal unitary on the fixed register.

Node labels ``(level, index)`` are 1-based throughout, matching the device
drawing.  Array positions elsewhere in the package are ordinary 0-based
Python indices; only this labelling layer is 1-based.
"""

import json
import math
from collections import Counter
from dataclasses import dataclass
from typing import Optional

from scipy.constants import c as _SPEED_OF_LIGHT
from scipy.constants import hbar as _HBAR

from .errors import ValidationError

NORM_TOL = 1e-12


@dataclass(frozen=True)
class BeamSplitterSpec:
    """Reflection/transmission pair of a single beam splitter.

    Both coefficients are real and non-negative with r**2 + t**2 = 1;
    reflection picks up a factor i in the mode transformation.
    """

    r: float
    t: float

    def __post_init__(self):
        if not (0.0 <= self.r <= 1.0 and 0.0 <= self.t <= 1.0):
            raise ValidationError(
                f"beam splitter coefficients must lie in [0, 1], got r={self.r}, t={self.t}"
            )
        if abs(self.r**2 + self.t**2 - 1.0) > NORM_TOL:
            raise ValidationError(
                f"r^2 + t^2 = {self.r**2 + self.t**2!r} is not 1 within {NORM_TOL}"
            )

    @classmethod
    def from_theta(cls, theta: float) -> "BeamSplitterSpec":
        """Mixing-angle form: r = sin(theta), t = cos(theta)."""
        return cls(r=math.sin(theta), t=math.cos(theta))


@dataclass(frozen=True)
class PhysicalConstants:
    """Optional physical scale of the device.

    d is the depth of one level in metres, omega the photon angular
    frequency in rad/s.
    """

    d: float
    omega: float

    def __post_init__(self):
        if self.d <= 0 or self.omega <= 0:
            raise ValidationError("physical constants d and omega must be positive")


@dataclass(frozen=True)
class LatticeConfig:
    """Validated description of a depth-L lattice.

    ``bs`` maps (level, index) -> BeamSplitterSpec for 1 <= index <= level <= L.
    ``phases`` maps (level, index) -> phase in radians for levels 1..L-1 and
    index 1..2*level (one shifter per active output mode of that level; the
    final level carries no shifters).  Immutable after construction; safe
    for concurrent reads.
    """

    depth: int
    bs: dict
    phases: dict
    physical: Optional[PhysicalConstants] = None

    def __post_init__(self):
        L = self.depth
        if L < 1:
            raise ValidationError(f"depth must be a positive integer, got {L}")
        expected_bs = {(lev, k) for lev in range(1, L + 1) for k in range(1, lev + 1)}
        if set(self.bs) != expected_bs:
            raise ValidationError(
                f"bs must be defined for exactly the {L * (L + 1) // 2} nodes "
                f"(level, index), 1 <= index <= level <= {L}"
            )
        expected_ps = {(lev, j) for lev in range(1, L) for j in range(1, 2 * lev + 1)}
        if set(self.phases) != expected_ps:
            raise ValidationError(
                f"phases must be defined for exactly the {L * (L - 1)} nodes "
                f"(level, index), levels 1..{L - 1}, index 1..2*level"
            )
        for node, spec in self.bs.items():
            if not isinstance(spec, BeamSplitterSpec):
                raise ValidationError(f"bs[{node}] is not a BeamSplitterSpec")

    @property
    def num_modes(self) -> int:
        return 2 * self.depth


@dataclass(frozen=True)
class ResourceReport:
    """Exact component counts plus, when the scale is known, physical cost.

    The physical fields are None when the config carries no
    PhysicalConstants.  Energy is (N+M)*hbar*omega per run, run time is
    sqrt(2)*L*d/c and the footprint area is 2*L^2*d^2.
    """

    depth: int
    num_bs: int
    num_ps: int
    num_detectors: int
    num_input_modes: int
    num_internal_modes: int
    energy_per_run: Optional[float] = None
    run_time: Optional[float] = None
    area: Optional[float] = None


def uniform_config(
    L: int,
    r: float,
    t: float,
    phase: float = 0.0,
    physical: Optional[PhysicalConstants] = None,
) -> LatticeConfig:
    """Lattice with every beam splitter equal to (r, t) and every phase equal."""
    if L < 1:
        raise ValidationError(f"depth must be a positive integer, got {L}")
    spec = BeamSplitterSpec(r, t)
    bs = {(lev, k): spec for lev in range(1, L + 1) for k in range(1, lev + 1)}
    phases = {
        (lev, j): float(phase) for lev in range(1, L) for j in range(1, 2 * lev + 1)
    }
    return LatticeConfig(depth=L, bs=bs, phases=phases, physical=physical)


def resource_report(config: LatticeConfig, N: int, M: int = 0) -> ResourceReport:
    """Component counts and physical cost of one run with the dual-Fock input."""
    if N < 0 or M < 0:
        raise ValidationError("photon numbers must be non-negative")
    L = config.depth
    energy = run_time = area = None
    if config.physical is not None:
        energy = (N + M) * _HBAR * config.physical.omega
        run_time = math.sqrt(2.0) * L * config.physical.d / _SPEED_OF_LIGHT
        area = 2.0 * L**2 * config.physical.d**2
    return ResourceReport(
        depth=L,
        num_bs=L * (L + 1) // 2,
        num_ps=L * (L - 1),
        num_detectors=2 * L,
        num_input_modes=2 * L,
        num_internal_modes=L * (L - 1),
        energy_per_run=energy,
        run_time=run_time,
        area=area,
    )


def active_mode_span(L: int, level: int) -> tuple[int, int]:
    """Inclusive 1-based global-mode bounds of the 2*level active modes.

    Returns (L - level + 1, L + level) under the centred embedding.
    """
    if not 1 <= level <= L:
        raise ValidationError(f"level must be in 1..{L}, got {level}")
    return (L - level + 1, L + level)


def active_slice(L: int, level: int) -> slice:
    """0-based array slice covering the active modes of ``level``."""
    lo, hi = active_mode_span(L, level)
    return slice(lo - 1, hi)


# ---------------------------------------------------------------------------
# Config file format
# ---------------------------------------------------------------------------
# A single JSON document:
#   {
#     "depth": 3,
#     "default_bs": {"r": ..., "t": ...} | {"theta": ...},
#     "default_phase": 0.0,
#     "overrides": [{"level": 2, "index": 1, "r": ..., "t": ...},
#                   {"level": 2, "index": 1, "theta": ...},
#                   {"level": 1, "index": 2, "phase": ...}],
#     "physical": {"d": ..., "omega": ...}          # optional
#   }
# Missing overrides fall back to the defaults.


def _bs_from_entry(entry: dict, where: str) -> BeamSplitterSpec:
    if "theta" in entry:
        return BeamSplitterSpec.from_theta(float(entry["theta"]))
    if "r" in entry and "t" in entry:
        return BeamSplitterSpec(float(entry["r"]), float(entry["t"]))
    raise ValidationError(f"{where} must give either theta or both r and t")


def config_from_dict(doc: dict) -> LatticeConfig:
    """Build and validate a LatticeConfig from the JSON document shape."""
    try:
        L = int(doc["depth"])
    except (KeyError, TypeError, ValueError):
        raise ValidationError("config must carry an integer 'depth'") from None
    if L < 1:
        raise ValidationError(f"depth must be a positive integer, got {L}")
    default_bs = _bs_from_entry(doc.get("default_bs", {}), "default_bs")
    default_phase = float(doc.get("default_phase", 0.0))

    bs = {(lev, k): default_bs for lev in range(1, L + 1) for k in range(1, lev + 1)}
    phases = {
        (lev, j): default_phase for lev in range(1, L) for j in range(1, 2 * lev + 1)
    }
    for entry in doc.get("overrides", []):
        try:
            node = (int(entry["level"]), int(entry["index"]))
        except (KeyError, TypeError, ValueError):
            raise ValidationError(
                f"override {entry!r} must carry integer 'level' and 'index'"
            ) from None
        if "phase" in entry:
            if node not in phases:
                raise ValidationError(f"no phase shifter at {node}")
            phases[node] = float(entry["phase"])
        else:
            if node not in bs:
                raise ValidationError(f"no beam splitter at {node}")
            bs[node] = _bs_from_entry(entry, f"override {node}")

    physical = None
    if doc.get("physical") is not None:
        phys = doc["physical"]
        physical = PhysicalConstants(d=float(phys["d"]), omega=float(phys["omega"]))
    return LatticeConfig(depth=L, bs=bs, phases=phases, physical=physical)


def config_to_dict(config: LatticeConfig) -> dict:
    """Serialize to the JSON document shape.

    The most common beam splitter and phase become the defaults so uniform
    configs round-trip with an empty override list.
    """
    bs_default = Counter((s.r, s.t) for s in config.bs.values()).most_common(1)[0][0]
    if config.phases:
        phase_default = Counter(config.phases.values()).most_common(1)[0][0]
    else:
        phase_default = 0.0

    overrides = []
    for (lev, k), spec in sorted(config.bs.items()):
        if (spec.r, spec.t) != bs_default:
            overrides.append({"level": lev, "index": k, "r": spec.r, "t": spec.t})
    for (lev, j), phi in sorted(config.phases.items()):
        if phi != phase_default:
            overrides.append({"level": lev, "index": j, "phase": phi})

    doc = {
        "depth": config.depth,
        "default_bs": {"r": bs_default[0], "t": bs_default[1]},
        "default_phase": phase_default,
        "overrides": overrides,
    }
    if config.physical is not None:
        doc["physical"] = {"d": config.physical.d, "omega": config.physical.omega}
    return doc


def load_config(path: str) -> LatticeConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return config_from_dict(json.load(fh))


def save_config(config: LatticeConfig, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(config_to_dict(config), fh, indent=2, sort_keys=True)
        fh.write("\n")
