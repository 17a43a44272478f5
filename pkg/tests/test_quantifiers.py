import math

import numpy as np
import pytest
from conftest import LN2, bell_state, maximally_mixed, plus_state, projector_state, qubit

from qreality import (
    DimsSpec,
    InvalidBipartition,
    MonitoringMap,
    NotARealityState,
    NotUnbiased,
    apply_dephasing,
    apply_monitoring,
    computational_basis,
    fourier_basis,
    generated_irreality,
    information,
    information_ledger,
    irreality,
    irreality_decomposition,
    monotonicity_check,
    random_observable,
    random_state,
    random_unitary,
    reality_change,
    tensor,
    validate_state,
    von_neumann_entropy,
)

SZ = computational_basis(2)
SX = fourier_basis(2)
SPLIT = ((0,), (1,))


def test_information_examples():
    pure4 = projector_state([1, 0, 0, 0], (2, 2))
    assert abs(information(pure4) - math.log(4)) < 1e-12
    assert abs(information(maximally_mixed(4, (2, 2)))) < 1e-12
    # oracle: ln 2 - (-(0.75 ln 0.75 + 0.25 ln 0.25)) = 0.130812035941137
    rho = qubit([0.75, 0], [0, 0.25])
    assert abs(information(rho) - 0.130812035941137) < 1e-12


def test_information_unitary_invariant():
    rng = np.random.default_rng(0)
    dims = DimsSpec((2, 2))
    for _ in range(10):
        rho = random_state(dims, rng, rank=3)
        u = random_unitary(4, rng)
        rotated = validate_state(u @ rho.matrix @ u.conj().T, dims)
        assert abs(information(rotated) - information(rho)) < 1e-10


def test_ledger_bell_state():
    ledger = information_ledger(bell_state(), SPLIT)
    assert abs(ledger.total_I - 2 * LN2) < 1e-12
    assert abs(ledger.local_I[0]) < 1e-12
    assert abs(ledger.local_I[1]) < 1e-12
    assert abs(ledger.mutual_I - 2 * LN2) < 1e-12


def test_ledger_product_of_pure_qubits():
    rho = tensor(plus_state(), projector_state([1, 0], (2,)))
    ledger = information_ledger(rho, SPLIT)
    assert abs(ledger.total_I - 2 * LN2) < 1e-12
    assert abs(ledger.mutual_I) < 1e-12


def test_ledger_maximally_mixed():
    ledger = information_ledger(maximally_mixed(4, (2, 2)), SPLIT)
    for term in (ledger.total_I, ledger.mutual_I, *ledger.local_I, ledger.conditional_I):
        assert abs(term) < 1e-12


def test_ledger_identities_on_random_states():
    rng = np.random.default_rng(1)
    dims = DimsSpec((2, 3))
    for _ in range(50):
        rho = random_state(dims, rng, rank=int(rng.integers(1, 7)))
        ledger = information_ledger(rho, SPLIT)
        assert abs(ledger.total_I - (ledger.local_I[0] + ledger.local_I[1] + ledger.mutual_I)) < 1e-10
        assert abs(ledger.total_I - (ledger.local_I[1] + ledger.conditional_I)) < 1e-10


def test_ledger_total_conserved_under_global_unitary():
    rng = np.random.default_rng(2)
    dims = DimsSpec((2, 2))
    for _ in range(10):
        rho = random_state(dims, rng, rank=2)
        u = random_unitary(4, rng)
        rotated = validate_state(u @ rho.matrix @ u.conj().T, dims)
        before = information_ledger(rho, SPLIT).total_I
        after = information_ledger(rotated, SPLIT).total_I
        assert abs(before - after) < 1e-10


def test_ledger_invalid_bipartition():
    with pytest.raises(InvalidBipartition):
        information_ledger(bell_state(), ((0,), (0,)))
    with pytest.raises(InvalidBipartition):
        information_ledger(bell_state(), ((0, 1), ()))


def test_irreality_examples():
    assert abs(irreality(SZ, plus_state()) - LN2) < 1e-12
    assert abs(irreality(SZ, projector_state([1, 0], (2,)))) < 1e-12
    obs = computational_basis(2, 0)
    assert abs(irreality(obs, bell_state()) - LN2) < 1e-12


def test_irreality_nonnegative_and_zero_iff_invariant():
    rng = np.random.default_rng(3)
    dims = DimsSpec((2, 2))
    for _ in range(30):
        target = int(rng.integers(2))
        obs = random_observable(2, target, rng)
        rho = random_state(dims, rng, rank=int(rng.integers(1, 5)))
        assert irreality(obs, rho) > -1e-9
        fixed = apply_dephasing(obs, rho)
        assert abs(irreality(obs, fixed)) < 1e-10


def test_irreality_invariant_under_remote_unitary():
    rng = np.random.default_rng(4)
    dims = DimsSpec((2, 2))
    obs = computational_basis(2, 0)
    for _ in range(10):
        rho = random_state(dims, rng, rank=3)
        u_b = np.kron(np.eye(2), random_unitary(2, rng))
        rotated = validate_state(u_b @ rho.matrix @ u_b.conj().T, dims)
        assert abs(irreality(obs, rotated) - irreality(obs, rho)) < 1e-10


def test_decomposition_bell_state():
    obs = computational_basis(2, 0)
    breakdown = irreality_decomposition(obs, bell_state(), SPLIT)
    assert abs(breakdown.irreality - LN2) < 1e-12
    assert abs(breakdown.local_irreality) < 1e-12
    assert abs(breakdown.discord_like - LN2) < 1e-12


def test_decomposition_product_state_has_no_discord():
    rho = tensor(plus_state(), maximally_mixed(2))
    obs = computational_basis(2, 0)
    breakdown = irreality_decomposition(obs, rho, SPLIT)
    assert abs(breakdown.irreality - LN2) < 1e-12
    assert abs(breakdown.local_irreality - LN2) < 1e-12
    assert abs(breakdown.discord_like) < 1e-12


def test_decomposition_reality_state_all_zero():
    rng = np.random.default_rng(5)
    obs = computational_basis(2, 0)
    rho = apply_dephasing(obs, random_state(DimsSpec((2, 2)), rng, rank=4))
    breakdown = irreality_decomposition(obs, rho, SPLIT)
    assert abs(breakdown.irreality) < 1e-10
    assert abs(breakdown.local_irreality) < 1e-10
    assert abs(breakdown.discord_like) < 1e-10


def test_decomposition_sum_rule_random():
    rng = np.random.default_rng(6)
    dims = DimsSpec((2, 3))
    for _ in range(40):
        obs = random_observable(2, 0, rng)
        rho = random_state(dims, rng, rank=int(rng.integers(1, 7)))
        b = irreality_decomposition(obs, rho, SPLIT)
        assert abs(b.irreality - (b.local_irreality + b.discord_like)) < 1e-10
        assert b.local_irreality > -1e-9
        assert b.discord_like > -1e-9


def test_decomposition_requires_target_in_first_block():
    obs = computational_basis(2, 1)
    with pytest.raises(InvalidBipartition):
        irreality_decomposition(obs, bell_state(), SPLIT)


def test_reality_change_balanced_qubit():
    report = reality_change(SZ, 0.5, plus_state())
    # oracle: eigenvalues {0.75, 0.25}, binary entropy H(0.25)
    expected = -(0.75 * math.log(0.75) + 0.25 * math.log(0.25))
    assert abs(report.delta_R - expected) < 1e-12
    assert abs(report.lower_bound - 0.5 * LN2) < 1e-12
    assert abs(report.tau - 0.5) < 1e-12
    assert abs(report.fannes_bound - expected) < 1e-12  # ln(d-1)=0 saturates here
    assert abs(report.simple_estimate - 2 * math.sqrt(0.25 / math.e)) < 1e-12


def test_reality_change_saturates_at_full_intensity():
    obs = computational_basis(2, 0)
    report = reality_change(obs, 1.0, bell_state())
    assert abs(report.delta_R - LN2) < 1e-12
    assert abs(report.delta_R - irreality(obs, bell_state())) < 1e-12


def test_reality_change_zero_on_reality_state():
    rng = np.random.default_rng(7)
    obs = computational_basis(2, 0)
    fixed = apply_dephasing(obs, random_state(DimsSpec((2, 2)), rng, rank=3))
    for eps in (0.0, 0.4, 1.0):
        assert abs(reality_change(obs, eps, fixed).delta_R) < 1e-10


def test_reality_change_two_routes_agree():
    rng = np.random.default_rng(8)
    dims = DimsSpec((2, 2))
    for _ in range(30):
        target = int(rng.integers(2))
        obs = random_observable(2, target, rng)
        rho = random_state(dims, rng, rank=int(rng.integers(1, 5)))
        eps = float(rng.uniform())
        report = reality_change(obs, eps, rho)
        monitored = apply_monitoring(MonitoringMap(obs, eps), rho)
        entropy_route = von_neumann_entropy(monitored) - von_neumann_entropy(rho)
        assert abs(report.delta_R - entropy_route) < 1e-10


def test_reality_change_bounds_hold_on_samples():
    rng = np.random.default_rng(9)
    for dims in (DimsSpec((2,)), DimsSpec((3,)), DimsSpec((2, 2))):
        for _ in range(60):
            target = int(rng.integers(len(dims)))
            obs = random_observable(dims[target], target, rng)
            rho = random_state(dims, rng, rank=int(rng.integers(1, dims.total + 1)))
            eps = float(rng.uniform())
            r = reality_change(obs, eps, rho)
            assert r.delta_R > -1e-9
            assert r.delta_R >= r.lower_bound - 1e-9
            assert r.delta_R <= r.fannes_bound + 1e-9
            if r.tau > 1e-12:
                assert r.simple_estimate >= r.fannes_bound - 1e-9


def test_generated_irreality_qubit_mub_case():
    value, bound = generated_irreality(SX, SZ, 0, 0.5, maximally_mixed(2))
    h_quarter = -(0.25 * math.log(0.25) + 0.75 * math.log(0.75))
    assert abs(value - (LN2 - h_quarter)) < 1e-12
    assert abs(value - 0.130812035941137) < 1e-10
    assert abs(bound - h_quarter) < 1e-12
    assert value <= bound + 1e-9


def test_generated_irreality_zero_intensity():
    value, _ = generated_irreality(SX, SZ, 0, 0.0, maximally_mixed(2))
    assert abs(value) < 1e-12


def test_generated_irreality_monitoring_counterpart_is_zero():
    monitored = apply_monitoring(MonitoringMap(SX, 0.5), maximally_mixed(2))
    assert abs(irreality(SZ, monitored)) < 1e-12


def test_generated_irreality_requires_reality_state():
    with pytest.raises(NotARealityState):
        generated_irreality(SX, SZ, 0, 0.5, plus_state())


def test_generated_irreality_requires_unbiased_pair():
    rng = np.random.default_rng(10)
    tilted = random_observable(2, 0, rng)
    with pytest.raises(NotUnbiased):
        generated_irreality(tilted, SZ, 0, 0.5, maximally_mixed(2))


def test_generated_irreality_bipartite_reality_state():
    # reality state of A' with a correlated passive factor
    rng = np.random.default_rng(11)
    obs_ap = computational_basis(2, 0)
    obs_a = fourier_basis(2, 0)
    rho = apply_dephasing(obs_ap, random_state(DimsSpec((2, 2)), rng, rank=4))
    value, bound = generated_irreality(obs_a, obs_ap, 0, 0.7, rho)
    assert value > -1e-9
    assert value <= bound + 1e-9
    monitored = apply_monitoring(MonitoringMap(obs_a, 0.7), rho)
    assert abs(irreality(obs_ap, monitored)) < 1e-10


def test_monotonicity_fixed_point_equality():
    before, after = monotonicity_check(SZ, SX, 0.7, plus_state())
    assert abs(before - LN2) < 1e-12
    assert abs(after - LN2) < 1e-12


def test_monotonicity_full_dephasing_establishes_reality():
    before, after = monotonicity_check(SZ, SZ, 1.0, plus_state())
    assert abs(before - LN2) < 1e-12
    assert abs(after) < 1e-12


def test_monotonicity_random_sweep():
    rng = np.random.default_rng(12)
    dims = DimsSpec((2, 2))
    for _ in range(300):
        obs_a = random_observable(2, 0, rng)
        target = int(rng.integers(2))
        obs_o = random_observable(2, target, rng)
        rho = random_state(dims, rng, rank=int(rng.integers(1, 5)))
        eps = float(rng.uniform())
        before, after = monotonicity_check(obs_a, obs_o, eps, rho)
        assert before >= after - 1e-9
