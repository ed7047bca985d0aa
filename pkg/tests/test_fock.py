import math

import numpy as np
import pytest

from pachinko import (
    CostGuardError,
    FermionOccupation,
    ValidationError,
    amplitude_general,
    amplitude_single_port,
    dim_bosonic,
    fermion_amplitude,
    full_distribution,
    input_ports,
    marginal,
    total_matrix,
    uniform_config,
)
from pachinko.fock import enumerate_patterns, fermion_output_basis, multinomial

from helpers import config_5050, random_config

R5050 = 2**-0.5


def test_enumerate_patterns_is_lexicographic_and_complete():
    pats = list(enumerate_patterns(2, 3))
    assert pats == [
        (0, 0, 2), (0, 1, 1), (0, 2, 0), (1, 0, 1), (1, 1, 0), (2, 0, 0),
    ]
    assert len(list(enumerate_patterns(2, 6))) == 21
    assert list(enumerate_patterns(0, 4)) == [(0, 0, 0, 0)]
    assert all(sum(p) == 3 for p in enumerate_patterns(3, 5))


def test_multinomial():
    assert multinomial(2, (1, 1, 0)) == 2
    assert multinomial(4, (2, 2)) == 6
    assert multinomial(0, ()) == 1
    with pytest.raises(ValidationError):
        multinomial(3, (1, 1))


# ---------------------------------------------------------------------------
# single-port closed form
# ---------------------------------------------------------------------------


def test_single_port_headline_probability():
    u = total_matrix(config_5050())
    col = u.column(input_ports(3)[0])
    amp = amplitude_single_port(col, (1, 1, 0, 0, 0, 0), 2)
    expected = math.sqrt(2) * col[0] * col[1]
    assert amp == pytest.approx(expected, abs=1e-15)
    assert abs(amp) ** 2 == pytest.approx(1 / 32, abs=1e-14)


def test_single_port_vacuum():
    assert amplitude_single_port(np.array([]), (), 0) == 1


def test_single_port_one_bs_bunching():
    # |2> into one 50-50 splitter: amplitude of (1,1) from the 2-mode expansion
    u = total_matrix(uniform_config(1, R5050, R5050))
    col = u.column(0)
    amp = amplitude_single_port(col, (1, 1), 2)
    assert amp == pytest.approx(1j / math.sqrt(2), abs=1e-15)
    assert abs(amp) ** 2 == pytest.approx(0.5, abs=1e-15)


def test_single_port_validation():
    col = np.array([1.0, 0.0])
    with pytest.raises(ValidationError):
        amplitude_single_port(col, (1, 1), 3)
    with pytest.raises(ValidationError):
        amplitude_single_port(col, (1, -1), 0)
    with pytest.raises(ValidationError):
        amplitude_single_port(col, (1, 0, 0), 1)


# ---------------------------------------------------------------------------
# general (permanent) route
# ---------------------------------------------------------------------------


def test_general_single_photon_is_matrix_entry():
    rng = np.random.default_rng(2)
    u = total_matrix(random_config(rng, 2)).matrix
    amp = amplitude_general(u, (0, 1, 0, 0), (0, 0, 0, 1))
    assert amp == pytest.approx(u[3, 1], abs=1e-15)


def test_general_hom_noon_state():
    u = total_matrix(uniform_config(1, R5050, R5050))
    assert amplitude_general(u, (1, 1), (2, 0)) == pytest.approx(1j / math.sqrt(2), abs=1e-15)
    assert amplitude_general(u, (1, 1), (0, 2)) == pytest.approx(1j / math.sqrt(2), abs=1e-15)
    assert amplitude_general(u, (1, 1), (1, 1)) == pytest.approx(0, abs=1e-15)


def test_general_agrees_with_single_port():
    rng = np.random.default_rng(4)
    for _ in range(10):
        L = int(rng.integers(1, 4))
        u = total_matrix(random_config(rng, L))
        port = int(rng.integers(0, 2 * L))
        col = u.column(port)
        for N in range(1, 5):
            inp = tuple(N if j == port else 0 for j in range(2 * L))
            for pattern in enumerate_patterns(N, 2 * L):
                a_gen = amplitude_general(u, inp, pattern)
                a_sp = amplitude_single_port(col, pattern, N)
                assert abs(a_gen - a_sp) < 1e-10


# ---------------------------------------------------------------------------
# complete distributions
# ---------------------------------------------------------------------------


def test_full_distribution_pattern_count_and_norm():
    u = total_matrix(config_5050())
    inp = (0, 0, 2, 0, 0, 0)
    dist = full_distribution(u, inp)
    assert len(dist.amplitudes) == 21
    assert dist.is_complete
    assert sum(dist.probabilities().values()) == pytest.approx(1, abs=1e-9)


def test_full_distribution_l1_single_photon():
    u = total_matrix(uniform_config(1, R5050, R5050))
    dist = full_distribution(u, (1, 0))
    assert dist.amplitudes[(1, 0)] == pytest.approx(1j / math.sqrt(2), abs=1e-15)
    assert dist.amplitudes[(0, 1)] == pytest.approx(1 / math.sqrt(2), abs=1e-15)


def test_full_distribution_norm_sweep():
    rng = np.random.default_rng(6)
    for _ in range(15):
        L = int(rng.integers(1, 5))
        u = total_matrix(random_config(rng, L))
        N = int(rng.integers(0, 6 - L if L < 4 else 3))
        M = int(rng.integers(0, 2))
        inp = [0] * (2 * L)
        inp[input_ports(L)[0]] = N
        inp[input_ports(L)[1]] = M
        dist = full_distribution(u, inp)
        assert sum(dist.probabilities().values()) == pytest.approx(1, abs=1e-9)


def test_full_distribution_cost_cap(monkeypatch):
    monkeypatch.setenv("PACHINKO_COST_CAP", "10")
    u = total_matrix(config_5050())
    with pytest.raises(CostGuardError, match="21"):
        full_distribution(u, (0, 0, 2, 0, 0, 0))


def test_full_distribution_threads_deterministic():
    u = total_matrix(config_5050())
    inp = (0, 0, 1, 1, 0, 0)
    seq = full_distribution(u, inp, threads=1)
    par = full_distribution(u, inp, threads=4)
    assert seq.amplitudes == par.amplitudes


def test_support_size_generic_vs_accidental_zeros():
    # interior angles: every output pattern carries weight
    rng = np.random.default_rng(8)
    cfg = random_config(rng, 3, interior=True)
    u = total_matrix(cfg)
    col = u.column(2)
    assert np.abs(col).min() > 1e-6
    dist = full_distribution(u, (0, 0, 2, 0, 0, 0))
    nonzero = sum(1 for p in dist.probabilities().values() if p > 1e-12)
    assert nonzero == dim_bosonic(2, 3)

    # the balanced lattice has an exact zero coefficient: support shrinks
    u50 = total_matrix(config_5050())
    d50 = full_distribution(u50, (0, 0, 1, 0, 0, 0))
    nonzero50 = sum(1 for p in d50.probabilities().values() if p > 1e-12)
    assert nonzero50 == 5 < dim_bosonic(1, 3)


# ---------------------------------------------------------------------------
# marginals
# ---------------------------------------------------------------------------


def test_marginal_no_constraints_is_one():
    u = total_matrix(config_5050())
    dist = full_distribution(u, (0, 0, 2, 0, 0, 0))
    assert marginal(dist, []) == pytest.approx(1, abs=1e-12)


def test_marginal_pins_headline_pattern():
    u = total_matrix(config_5050())
    dist = full_distribution(u, (0, 0, 2, 0, 0, 0))
    # two photons total: detectors 0 and 1 seeing one each forces the rest
    assert marginal(dist, [(0, 1), (1, 1)]) == pytest.approx(1 / 32, abs=1e-12)


def test_marginal_per_detector_totals():
    rng = np.random.default_rng(10)
    u = total_matrix(random_config(rng, 2))
    dist = full_distribution(u, (0, 2, 1, 0))
    for det in range(4):
        total = sum(marginal(dist, [(det, n)]) for n in range(4))
        assert total == pytest.approx(1, abs=1e-12)


def test_marginal_validation():
    u = total_matrix(config_5050())
    dist = full_distribution(u, (0, 0, 2, 0, 0, 0))
    with pytest.raises(ValidationError):
        marginal(dist, [(6, 1)])
    partial = type(dist)(
        total_photons=2,
        num_modes=6,
        amplitudes={(1, 1, 0, 0, 0, 0): 1 + 0j},
    )
    with pytest.raises(ValidationError):
        marginal(partial, [(0, 1)])


# ---------------------------------------------------------------------------
# fermions
# ---------------------------------------------------------------------------


def test_fermion_occupation_validation():
    FermionOccupation(up=(1, 0), down=(0, 1))
    with pytest.raises(ValidationError):
        FermionOccupation(up=(2, 0), down=(0, 0))
    with pytest.raises(ValidationError):
        FermionOccupation(up=(1, 0), down=(0, 1, 0))


def test_fermion_anti_hom_same_spin():
    u = total_matrix(uniform_config(1, R5050, R5050))
    pair = FermionOccupation(up=(1, 1), down=(0, 0))
    amp = fermion_amplitude(u, pair, pair)
    assert amp == pytest.approx(-1, abs=1e-12)
    assert abs(amp) ** 2 == pytest.approx(1, abs=1e-12)
    # bunched outputs are Pauli-blocked
    assert fermion_amplitude(u, pair, ((2, 0), (0, 0))) == 0
    assert fermion_amplitude(u, pair, ((0, 2), (0, 0))) == 0


def test_fermion_opposite_spins_factorize():
    rng = np.random.default_rng(12)
    u = total_matrix(random_config(rng, 1)).matrix
    inp = FermionOccupation(up=(1, 0), down=(0, 1))
    out = FermionOccupation(up=(1, 0), down=(0, 1))
    assert fermion_amplitude(u, inp, out) == pytest.approx(u[0, 0] * u[1, 1], abs=1e-15)


def test_fermion_singlet_bunches():
    # canonical-order coefficients of the spin singlet are (+, +)/sqrt(2)
    u = total_matrix(uniform_config(1, R5050, R5050))
    terms = [
        (FermionOccupation(up=(1, 0), down=(0, 1)), 1 / math.sqrt(2)),
        (FermionOccupation(up=(0, 1), down=(1, 0)), 1 / math.sqrt(2)),
    ]

    def superposed(output):
        return sum(c * fermion_amplitude(u, occ, output) for occ, c in terms)

    both_in_0 = superposed(FermionOccupation(up=(1, 0), down=(1, 0)))
    both_in_1 = superposed(FermionOccupation(up=(0, 1), down=(0, 1)))
    split_a = superposed(FermionOccupation(up=(1, 0), down=(0, 1)))
    split_b = superposed(FermionOccupation(up=(0, 1), down=(1, 0)))
    assert abs(both_in_0) ** 2 == pytest.approx(0.5, abs=1e-12)
    assert abs(both_in_1) ** 2 == pytest.approx(0.5, abs=1e-12)
    assert abs(split_a) ** 2 == pytest.approx(0, abs=1e-12)
    assert abs(split_b) ** 2 == pytest.approx(0, abs=1e-12)


def test_fermion_spin_count_mismatch_is_zero():
    u = total_matrix(uniform_config(1, R5050, R5050))
    inp = FermionOccupation(up=(1, 0), down=(0, 0))
    assert fermion_amplitude(u, inp, FermionOccupation(up=(0, 0), down=(1, 0))) == 0


def test_fermion_outputs_normalize():
    rng = np.random.default_rng(14)
    for L, n_up, n_down in ((1, 1, 1), (2, 2, 1), (3, 2, 0)):
        u = total_matrix(random_config(rng, L))
        inp_up = [1] * n_up + [0] * (2 * L - n_up)
        inp_down = [1] * n_down + [0] * (2 * L - n_down)
        inp = FermionOccupation(up=tuple(inp_up), down=tuple(inp_down))
        total = sum(
            abs(fermion_amplitude(u, inp, out)) ** 2
            for out in fermion_output_basis(2 * L, n_up, n_down)
        )
        assert total == pytest.approx(1, abs=1e-10)


def test_fermion_output_basis_count():
    outs = list(fermion_output_basis(4, 2, 1))
    assert len(outs) == math.comb(4, 2) * math.comb(4, 1)
