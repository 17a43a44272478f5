import math

import numpy as np
import pytest
from conftest import LN2, maximally_mixed, plus_state, projector_state

from qreality import (
    DimsSpec,
    MonitoringMap,
    apply_dephasing,
    apply_dilation,
    apply_monitoring,
    build_dilation,
    complementarity_ledger,
    computational_basis,
    dilated_channel_output,
    fourier_basis,
    partial_trace,
    random_observable,
    random_state,
    trace_distance,
    tripartite_ssa_experiment,
    von_neumann_entropy,
)

SZ = computational_basis(2)
SX = fourier_basis(2)


def test_dilation_unitary_and_ancilla_size():
    for eps in (0.0, 0.3, 1.0):
        for dims in (DimsSpec((2,)), DimsSpec((3,)), DimsSpec((2, 2))):
            target = len(dims) - 1
            obs = computational_basis(dims[target], target)
            dil = build_dilation(MonitoringMap(obs, eps), dims)
            assert dil.ancilla_dim == dims[target] + 1
            u = dil.unitary
            assert np.abs(u.conj().T @ u - np.eye(u.shape[0])).max() < 1e-12


def test_dilation_identity_channel():
    rng = np.random.default_rng(0)
    dil = build_dilation(MonitoringMap(SZ, 0.0), DimsSpec((2,)))
    for _ in range(20):
        rho = random_state(DimsSpec((2,)), rng, rank=2)
        out = dilated_channel_output(dil, rho)
        assert np.abs(out.matrix - rho.matrix).max() < 1e-12


def test_dilation_projective_limit():
    rng = np.random.default_rng(1)
    dil = build_dilation(MonitoringMap(SZ, 1.0), DimsSpec((2,)))
    for _ in range(20):
        rho = random_state(DimsSpec((2,)), rng, rank=2)
        out = dilated_channel_output(dil, rho)
        dephased = apply_dephasing(SZ, rho)
        assert np.abs(out.matrix - dephased.matrix).max() < 1e-12


def test_dilation_half_intensity_spectrum():
    dil = build_dilation(MonitoringMap(SZ, 0.5), DimsSpec((2,)))
    out = dilated_channel_output(dil, plus_state())
    assert np.abs(out.eigenvalues - np.array([0.25, 0.75])).max() < 1e-12


def test_dilation_matches_channel_on_many_states():
    rng = np.random.default_rng(2)
    dims = DimsSpec((2, 2))
    obs = random_observable(2, 1, rng)
    m = MonitoringMap(obs, 0.62)
    dil = build_dilation(m, dims)
    worst = 0.0
    for _ in range(100):
        rho = random_state(dims, rng, rank=int(rng.integers(1, 5)))
        out = dilated_channel_output(dil, rho)
        direct = apply_monitoring(m, rho)
        worst = max(worst, float(np.abs(out.matrix - direct.matrix).max()))
    assert worst < 1e-10


def test_dilation_preserves_global_entropy():
    rng = np.random.default_rng(3)
    dims = DimsSpec((2,))
    for _ in range(10):
        rho = random_state(dims, rng, rank=2)
        dil = build_dilation(MonitoringMap(SZ, float(rng.uniform())), dims)
        joint = apply_dilation(dil, rho)
        assert abs(von_neumann_entropy(joint) - von_neumann_entropy(rho)) < 1e-10


def test_complementarity_ledger_balanced_qubit():
    ledger = complementarity_ledger(MonitoringMap(SZ, 0.5), plus_state())
    expected = -(0.75 * math.log(0.75) + 0.25 * math.log(0.25))
    assert abs(ledger.delta_I_S + expected) < 1e-10
    assert abs(ledger.delta_R_A - expected) < 1e-10
    assert abs(ledger.entanglement_E - expected) < 1e-10


def test_complementarity_ledger_fixed_points():
    # a dephasing-invariant input passes through unchanged: no reality gain,
    # no system information loss; the ancilla may still record the outcome
    # distribution, so the X-side deltas cancel pairwise instead of vanishing
    rng = np.random.default_rng(4)
    fixed = apply_dephasing(SZ, random_state(DimsSpec((2,)), rng, rank=2))
    ledger = complementarity_ledger(MonitoringMap(SZ, 0.8), fixed)
    assert abs(ledger.delta_irreality_A) < 1e-10
    assert abs(ledger.delta_R_A) < 1e-10
    assert abs(ledger.delta_I_S) < 1e-10
    assert abs(ledger.delta_mutual_SX + ledger.delta_I_X) < 1e-10

    mixed = complementarity_ledger(MonitoringMap(SZ, 0.6), maximally_mixed(2))
    assert abs(mixed.delta_R_A) < 1e-10
    assert abs(mixed.delta_I_S) < 1e-10

    # at zero intensity the ancilla is genuinely untouched
    untouched = complementarity_ledger(MonitoringMap(SZ, 0.0), fixed)
    for value in (
        untouched.delta_mutual_SX,
        untouched.delta_I_X,
        untouched.delta_irreality_A,
        untouched.delta_I_S,
        untouched.delta_R_A,
    ):
        assert abs(value) < 1e-10


def test_complementarity_zero_sums_on_mixed_inputs():
    rng = np.random.default_rng(5)
    dims = DimsSpec((2, 2))
    for _ in range(60):
        target = int(rng.integers(2))
        obs = random_observable(2, target, rng)
        eps = float(rng.uniform())
        rho = random_state(dims, rng, rank=int(rng.integers(2, 5)))
        ledger = complementarity_ledger(MonitoringMap(obs, eps), rho)
        assert abs(ledger.delta_mutual_SX + ledger.delta_I_X + ledger.delta_irreality_A) < 1e-10
        assert abs(ledger.delta_I_S + ledger.delta_R_A) < 1e-10


def test_complementarity_pure_input_reality_equals_entanglement():
    rng = np.random.default_rng(6)
    dims = DimsSpec((2, 2))
    for _ in range(60):
        target = int(rng.integers(2))
        obs = random_observable(2, target, rng)
        eps = float(rng.uniform())
        rho = random_state(dims, rng, rank=1)
        ledger = complementarity_ledger(MonitoringMap(obs, eps), rho)
        assert abs(ledger.delta_R_A - ledger.entanglement_E) < 1e-10


def test_tripartite_identities_and_ssa():
    rng = np.random.default_rng(7)
    dims = DimsSpec((2, 2))
    for _ in range(30):
        obs_a = random_observable(2, 0, rng)
        obs_ap = random_observable(2, 0, rng)
        rho = random_state(dims, rng, rank=int(rng.integers(1, 5)))
        eps, delta = float(rng.uniform()), float(rng.uniform())
        rep = tripartite_ssa_experiment(obs_a, eps, obs_ap, delta, rho)
        assert rep.ssa_slack > -1e-9
        assert rep.joint_entropy_gap < 1e-10
        assert rep.reduced_state_gap < 1e-10
        assert rep.sx_entropy_gap < 1e-10
        assert rep.delta_R_incompatible > -1e-9


def test_tripartite_no_second_monitoring():
    rng = np.random.default_rng(8)
    rho = random_state(DimsSpec((2, 2)), rng, rank=3)
    rep = tripartite_ssa_experiment(SZ, 0.0, SX, 0.5, rho)
    assert abs(rep.ssa_slack) < 1e-10
    assert abs(rep.delta_R_incompatible) < 1e-10
    # the system-X reduction is a product with the untouched ready ancilla
    assert abs(rep.entropy_sx - rep.entropy_system) < 1e-10


def test_tripartite_reality_state_input():
    rng = np.random.default_rng(9)
    obs_ap = computational_basis(2, 0)
    rho = apply_dephasing(obs_ap, random_state(DimsSpec((2, 2)), rng, rank=4))
    rep = tripartite_ssa_experiment(SX, 0.7, obs_ap, 0.4, rho)
    assert abs(rep.delta_R_incompatible) < 1e-10
    assert rep.ssa_slack > -1e-9


def test_tripartite_product_structure_at_zero_intensity():
    rng = np.random.default_rng(10)
    rho = random_state(DimsSpec((2,)), rng, rank=2)
    dil = build_dilation(MonitoringMap(SZ, 0.0), DimsSpec((2,)))
    joint = apply_dilation(dil, rho)
    reduced = partial_trace(joint, (0,))
    ancilla = partial_trace(joint, (1,))
    product = np.kron(reduced.matrix, ancilla.matrix)
    assert np.abs(joint.matrix - product).max() < 1e-12
    assert trace_distance(reduced, rho) < 1e-12
