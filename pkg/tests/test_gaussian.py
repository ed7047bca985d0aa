import math

import numpy as np
import pytest

from pachinko import (
    CoherentInput,
    GaussianState,
    ValidationError,
    evolve,
    input_ports,
    propagate_coherent,
    propagate_gaussian,
    squeezed_vacuum_state,
    total_matrix,
    uniform_config,
)
from pachinko.gaussian import (
    OpCounter,
    coherent_state,
    omega_matrix,
    symplectic_from_unitary,
    vacuum_state,
)

from helpers import config_5050, random_config

R5050 = 2**-0.5


def squeezed_fock_weights(s: float, cutoff: int) -> list:
    """|c_2m|^2 of squeezed vacuum for 2m <= cutoff (independent oracle)."""
    weights = []
    for m in range(cutoff // 2 + 1):
        c2m_sq = math.comb(2 * m, m) / 4**m * math.tanh(s) ** (2 * m) / math.cosh(s)
        weights.append(c2m_sq)
    return weights


def truncated_squeezed_means(config, s: float, cutoff: int) -> np.ndarray:
    """Per-detector means of a Fock-truncated squeezed input, via evolution.

    Photon number is conserved, so each even component evolves
    independently and the means add with the input weights.
    """
    weights = squeezed_fock_weights(s, cutoff)
    total = np.zeros(2 * config.depth)
    for m, w in enumerate(weights):
        if m == 0:
            continue  # vacuum contributes nothing
        state = evolve(config, 2 * m, 0)
        total += w * state.mean_photons()
    return total


# ---------------------------------------------------------------------------
# coherent inputs
# ---------------------------------------------------------------------------


def test_coherent_one_splitter():
    u = total_matrix(uniform_config(1, R5050, R5050))
    beta = 0.8 - 0.3j
    out = propagate_coherent(u, CoherentInput(beta=beta, port=0))
    assert out[0] == pytest.approx(1j * beta * R5050, abs=1e-15)
    assert out[1] == pytest.approx(beta * R5050, abs=1e-15)


def test_coherent_mean_photon_law():
    rng = np.random.default_rng(1)
    for _ in range(10):
        L = int(rng.integers(1, 6))
        u = total_matrix(random_config(rng, L))
        beta = complex(rng.standard_normal(), rng.standard_normal())
        port = int(rng.integers(0, 2 * L))
        out = propagate_coherent(u, CoherentInput(beta=beta, port=port))
        n_bar = abs(beta) ** 2
        col = u.column(port)
        assert np.abs(np.abs(out) ** 2 - n_bar * np.abs(col) ** 2).max() < 1e-12
        assert (np.abs(out) ** 2).sum() == pytest.approx(n_bar, abs=1e-12)


def test_coherent_gaussian_route_agrees():
    rng = np.random.default_rng(2)
    u = total_matrix(random_config(rng, 3))
    beta = 1.1 + 0.4j
    port = 2
    direct = propagate_coherent(u, CoherentInput(beta=beta, port=port))
    state = propagate_gaussian(u, coherent_state(beta, port, 3))
    expected_mean = np.empty(12)
    expected_mean[0::2] = math.sqrt(2) * direct.real
    expected_mean[1::2] = math.sqrt(2) * direct.imag
    assert np.abs(state.mean - expected_mean).max() < 1e-12
    assert np.abs(state.cov - 0.5 * np.eye(12)).max() < 1e-12


# ---------------------------------------------------------------------------
# gaussian states and propagation
# ---------------------------------------------------------------------------


def test_vacuum_in_vacuum_out():
    u = total_matrix(config_5050())
    out = propagate_gaussian(u, vacuum_state(3))
    assert np.abs(out.mean).max() == 0
    assert np.abs(out.cov - 0.5 * np.eye(12)).max() < 1e-12


def test_squeezed_state_construction():
    vac = squeezed_vacuum_state(0.0, 0, 2)
    assert np.abs(vac.cov - 0.5 * np.eye(8)).max() == 0

    sq = squeezed_vacuum_state(1.0, 0, 1)
    assert sq.cov[0, 0] == pytest.approx(math.exp(-2) / 2, rel=1e-12)
    assert sq.cov[1, 1] == pytest.approx(math.exp(2) / 2, rel=1e-12)
    assert sq.mean_photons()[0] == pytest.approx(math.sinh(1) ** 2, rel=1e-12)
    assert sq.mean_photons()[0] == pytest.approx(1.3811, abs=1e-4)

    with pytest.raises(ValidationError):
        squeezed_vacuum_state(6.0, 0, 1)
    with pytest.raises(ValidationError):
        squeezed_vacuum_state(0.5, 9, 2)


def test_squeezed_phase_rotates_covariance():
    sq = squeezed_vacuum_state(0.5j, 0, 1)
    # 45-degree rotation of the squeezing axes; photon number unchanged
    assert sq.cov[0, 0] == pytest.approx(math.cosh(1) / 2, rel=1e-12)
    assert sq.mean_photons()[0] == pytest.approx(math.sinh(0.5) ** 2, rel=1e-12)


def test_squeezed_propagation_mean_photons():
    cfg = config_5050()
    u = total_matrix(cfg)
    port = input_ports(3)[0]
    s = 0.5
    out = propagate_gaussian(u, squeezed_vacuum_state(s, port, 3))
    col = u.column(port)
    expected = np.abs(col) ** 2 * math.sinh(s) ** 2
    assert np.abs(out.mean_photons() - expected).max() < 1e-12
    assert out.mean_photons().sum() == pytest.approx(math.sinh(s) ** 2, abs=1e-12)


def test_squeezed_matches_truncated_fock_evolution():
    # independent oracle: evolve the Fock expansion of the squeezed input
    cfg = config_5050()
    u = total_matrix(cfg)
    port = input_ports(3)[0]
    s = 0.4
    gauss = propagate_gaussian(u, squeezed_vacuum_state(s, port, 3)).mean_photons()
    fock_means = truncated_squeezed_means(cfg, s, cutoff=10)
    assert np.abs(gauss - fock_means).max() < 1e-4


def test_symplectic_invariance_sweep():
    rng = np.random.default_rng(3)
    for _ in range(100):
        L = int(rng.integers(1, 7))
        u = total_matrix(random_config(rng, L))
        s = symplectic_from_unitary(u)
        omega = omega_matrix(2 * L)
        assert np.abs(s.T @ omega @ s - omega).max() < 1e-10


def test_purity_preserved():
    rng = np.random.default_rng(4)
    for _ in range(10):
        L = int(rng.integers(1, 5))
        u = total_matrix(random_config(rng, L))
        state = squeezed_vacuum_state(0.7, int(rng.integers(0, 2 * L)), L)
        assert state.purity_det() == pytest.approx(1, abs=1e-8)
        out = propagate_gaussian(u, state)
        assert out.purity_det() == pytest.approx(1, abs=1e-8)


def test_propagation_cost_polynomial_in_depth():
    # count scalar operations actually issued; slope of log(ops) vs log(L)
    depths = [2, 4, 8, 16, 28, 40]
    coherent_ops = []
    gaussian_ops = []
    for L in depths:
        u = total_matrix(uniform_config(L, 0.6, 0.8))
        c1 = OpCounter()
        propagate_coherent(u, CoherentInput(beta=1.0, port=L - 1), counter=c1)
        coherent_ops.append(c1.total)
        c2 = OpCounter()
        propagate_gaussian(u, vacuum_state(L), counter=c2)
        gaussian_ops.append(c2.total)
    for ops in (coherent_ops, gaussian_ops):
        slope = np.polyfit(np.log(depths), np.log(ops), 1)[0]
        assert slope <= 3.0
    # and the counts do not depend on the input amplitude
    u = total_matrix(uniform_config(4, 0.6, 0.8))
    c_small, c_large = OpCounter(), OpCounter()
    propagate_coherent(u, CoherentInput(beta=0.1, port=0), counter=c_small)
    propagate_coherent(u, CoherentInput(beta=1e6, port=0), counter=c_large)
    assert c_small.total == c_large.total


def test_gaussian_state_validation():
    with pytest.raises(ValidationError):
        GaussianState(mean=np.zeros(4), cov=np.eye(5))
    asym = 0.5 * np.eye(4)
    asym[0, 1] = 0.3
    with pytest.raises(ValidationError):
        GaussianState(mean=np.zeros(4), cov=asym)
    with pytest.raises(ValidationError):  # violates the uncertainty bound
        GaussianState(mean=np.zeros(4), cov=0.25 * np.eye(4))


def test_propagate_rejects_mode_mismatch():
    u = total_matrix(config_5050())
    with pytest.raises(ValidationError):
        propagate_gaussian(u, vacuum_state(2))
    with pytest.raises(ValidationError):
        propagate_coherent(u, CoherentInput(beta=1.0, port=6))
