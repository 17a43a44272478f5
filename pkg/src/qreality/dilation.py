"""Unitary realizations of monitoring on system plus finite ancilla.

A monitoring of intensity eps has the operator-sum form with one branch per
eigenprojector plus an identity branch, so an ancilla of dimension d_A + 1
suffices: stack the Kraus operators into an isometry, complete its column
space to a unitary, and the partial trace over the ancilla reproduces the
channel exactly for every input.  Which completion is chosen is irrelevant;
all quantities of interest depend only on states evolved from the fixed
ancilla ready state.

On top of the dilation this module evaluates the information bookkeeping of
the system-ancilla dynamics (a zero-sum exchange between shared plus ancilla
information and the irreality of the monitored observable) and the
three-party entropy experiment behind the monotonicity of irreality.
"""

import math
from dataclasses import dataclass

import numpy as np

from .channels import MonitoringMap, apply_monitoring, monitoring_branch_operators
from .quantifiers import irreality
from .states import (
    DEFAULT_TOLERANCES,
    DensityMatrix,
    DimsSpec,
    ObservableSpec,
    ToleranceConfig,
    embed_operator,
    partial_trace,
    trace_distance,
    validate_state,
    von_neumann_entropy,
)


@dataclass(frozen=True, eq=False)
class DilationUnitary:
    """Unitary on system (x) ancilla realizing a monitoring from a ready state."""

    unitary: np.ndarray
    ancilla_dim: int
    ready_index: int
    source_map: MonitoringMap
    system_dims: DimsSpec


@dataclass(frozen=True)
class ComplementarityLedger:
    """Zero-sum bookkeeping of one monitoring realized as a dilation.

    delta_mutual_SX + delta_I_X + delta_irreality_A = 0 and
    delta_I_S + delta_R_A = 0.  ``entanglement_E`` is the ancilla entropy
    after the interaction; for a pure system input it equals the
    system-ancilla entanglement entropy and coincides with delta_R_A.
    """

    delta_mutual_SX: float
    delta_I_X: float
    delta_irreality_A: float
    delta_I_S: float
    delta_R_A: float
    entanglement_E: float


@dataclass(frozen=True)
class TripartiteSSAReport:
    """Entropies of the two-ancilla experiment and the derived inequalities.

    ``ssa_slack`` is S(SX) + S(SY) - S(SXY) - S(S), nonnegative by strong
    subadditivity.  The companion gap fields measure exact properties of
    the construction: the joint entropy equals the input entropy, the
    system reduction equals the composed monitorings, and S(SX) equals the
    entropy after the first monitoring alone.  ``delta_R_incompatible`` is
    the reality change of the second observable under monitoring of the
    first, computed from the maps, and is nonnegative.
    """

    entropy_joint: float
    entropy_system: float
    entropy_sx: float
    entropy_sy: float
    ssa_slack: float
    joint_entropy_gap: float
    reduced_state_gap: float
    sx_entropy_gap: float
    delta_R_incompatible: float


def build_dilation(
    m: MonitoringMap,
    system_dims: DimsSpec,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> DilationUnitary:
    """Complete the Kraus isometry of a monitoring to a full unitary.

    The ancilla has one level per Kraus branch (d_A + 1 in total) and the
    ready state is the first basis vector.  Columns outside the ready
    sector are an orthonormal basis of the isometry's orthogonal
    complement, obtained from its singular vectors, so the construction is
    deterministic.
    """
    d_s = system_dims.total
    kraus = [
        embed_operator(k, system_dims, m.observable.target_index)
        for k in monitoring_branch_operators(m)
    ]
    d_x = len(kraus)
    ready = 0
    isometry = np.zeros((d_s * d_x, d_s), dtype=complex)
    for i, k in enumerate(kraus):
        e_i = np.zeros((d_x, 1), dtype=complex)
        e_i[i, 0] = 1.0
        isometry += np.kron(k, e_i)
    u_cols, _, _ = np.linalg.svd(isometry)
    complement = u_cols[:, d_s:]
    unitary = np.zeros((d_s * d_x, d_s * d_x), dtype=complex)
    unitary[:, ready : d_s * d_x : d_x] = isometry
    spare = [s * d_x + x for s in range(d_s) for x in range(d_x) if x != ready]
    unitary[:, spare] = complement
    return DilationUnitary(unitary, d_x, ready, m, system_dims)


def joint_dims(dilation: DilationUnitary) -> DimsSpec:
    return dilation.system_dims.concat(DimsSpec((dilation.ancilla_dim,)))


def apply_dilation(
    dilation: DilationUnitary,
    rho_system: DensityMatrix,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> DensityMatrix:
    """Evolve rho (x) |ready><ready| under the dilation unitary."""
    ready = np.zeros((dilation.ancilla_dim, dilation.ancilla_dim), dtype=complex)
    ready[dilation.ready_index, dilation.ready_index] = 1.0
    joint0 = np.kron(rho_system.matrix, ready)
    u = dilation.unitary
    return validate_state(u @ joint0 @ u.conj().T, joint_dims(dilation), tol)


def dilated_channel_output(
    dilation: DilationUnitary,
    rho_system: DensityMatrix,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> DensityMatrix:
    """Partial trace of the evolved joint state over the ancilla; equals the
    monitoring channel applied directly."""
    joint = apply_dilation(dilation, rho_system, tol)
    return partial_trace(joint, range(len(dilation.system_dims)), tol)


def complementarity_ledger(
    m: MonitoringMap,
    rho_system: DensityMatrix,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> ComplementarityLedger:
    """Run one monitoring through its dilation and account for every term.

    Information gained by the ancilla plus information newly shared with it
    is paid for, exactly, by the drop in the monitored observable's
    irreality; equivalently the system's information loss equals the
    observable's reality gain.
    """
    dilation = build_dilation(m, rho_system.dims, tol)
    n_sys = len(rho_system.dims)
    d_x = dilation.ancilla_dim
    joint_t = apply_dilation(dilation, rho_system, tol)
    rho_s_t = partial_trace(joint_t, range(n_sys), tol)
    rho_x_t = partial_trace(joint_t, (n_sys,), tol)

    s_s0 = von_neumann_entropy(rho_system, tol)
    s_st = von_neumann_entropy(rho_s_t, tol)
    s_xt = von_neumann_entropy(rho_x_t, tol)
    s_joint_t = von_neumann_entropy(joint_t, tol)
    # at t=0 the ancilla is pure and uncorrelated
    mutual_0 = 0.0
    mutual_t = s_st + s_xt - s_joint_t
    delta_mutual = mutual_t - mutual_0
    delta_i_x = (math.log(d_x) - s_xt) - math.log(d_x)
    delta_irr = irreality(m.observable, rho_s_t, tol) - irreality(m.observable, rho_system, tol)
    delta_i_s = s_s0 - s_st
    return ComplementarityLedger(
        delta_mutual_SX=delta_mutual,
        delta_I_X=delta_i_x,
        delta_irreality_A=delta_irr,
        delta_I_S=delta_i_s,
        delta_R_A=-delta_irr,
        entanglement_E=s_xt,
    )


def _operator_on_outer_factors(u: np.ndarray, d_s: int, d_mid: int, d_last: int) -> np.ndarray:
    """Lift a unitary on (S, last) to (S, mid, last) with identity in the middle."""
    lifted = np.kron(u, np.eye(d_mid, dtype=complex))
    shape = (d_s, d_last, d_mid, d_s, d_last, d_mid)
    lifted = lifted.reshape(shape).transpose(0, 2, 1, 3, 5, 4)
    d = d_s * d_mid * d_last
    return lifted.reshape(d, d)


def tripartite_ssa_experiment(
    obs_A: ObservableSpec,
    eps: float,
    obs_Aprime: ObservableSpec,
    delta: float,
    rho: DensityMatrix,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> TripartiteSSAReport:
    """Dilate two monitorings in sequence and check strong subadditivity.

    The second observable is monitored first (intensity delta, ancilla Y),
    then the first one (intensity eps, ancilla X); the joint space is
    ordered system, X, Y.  Strong subadditivity of the four entropies forces
    the reality of the second observable to grow under monitoring of the
    first, which is also evaluated directly from the maps.
    """
    dil_y = build_dilation(MonitoringMap(obs_Aprime, delta), rho.dims, tol)
    dil_x = build_dilation(MonitoringMap(obs_A, eps), rho.dims, tol)
    d_s = rho.dims.total
    d_x = dil_x.ancilla_dim
    d_y = dil_y.ancilla_dim

    dims_sxy = rho.dims.concat(DimsSpec((d_x,))).concat(DimsSpec((d_y,)))
    ready_x = np.zeros((d_x, d_x), dtype=complex)
    ready_x[dil_x.ready_index, dil_x.ready_index] = 1.0
    ready_y = np.zeros((d_y, d_y), dtype=complex)
    ready_y[dil_y.ready_index, dil_y.ready_index] = 1.0
    joint0 = np.kron(np.kron(rho.matrix, ready_x), ready_y)

    u_sy = _operator_on_outer_factors(dil_y.unitary, d_s, d_x, d_y)
    u_sx = np.kron(dil_x.unitary, np.eye(d_y, dtype=complex))
    evolved = u_sx @ (u_sy @ joint0 @ u_sy.conj().T) @ u_sx.conj().T
    joint = validate_state(evolved, dims_sxy, tol)

    n_sys = len(rho.dims)
    rho_s = partial_trace(joint, range(n_sys), tol)
    rho_sx = partial_trace(joint, tuple(range(n_sys)) + (n_sys,), tol)
    rho_sy = partial_trace(joint, tuple(range(n_sys)) + (n_sys + 1,), tol)

    s_joint = von_neumann_entropy(joint, tol)
    s_s = von_neumann_entropy(rho_s, tol)
    s_sx = von_neumann_entropy(rho_sx, tol)
    s_sy = von_neumann_entropy(rho_sy, tol)

    first = apply_monitoring(MonitoringMap(obs_Aprime, delta), rho, tol)
    composed = apply_monitoring(MonitoringMap(obs_A, eps), first, tol)
    before = irreality(obs_Aprime, rho, tol)
    after = irreality(
        obs_Aprime, apply_monitoring(MonitoringMap(obs_A, eps), rho, tol), tol
    )

    return TripartiteSSAReport(
        entropy_joint=s_joint,
        entropy_system=s_s,
        entropy_sx=s_sx,
        entropy_sy=s_sy,
        ssa_slack=s_sx + s_sy - s_joint - s_s,
        joint_entropy_gap=abs(s_joint - von_neumann_entropy(rho, tol)),
        reduced_state_gap=trace_distance(rho_s, composed),
        sx_entropy_gap=abs(s_sx - von_neumann_entropy(first, tol)),
        delta_R_incompatible=before - after,
    )
