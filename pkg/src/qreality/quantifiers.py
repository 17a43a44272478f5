"""Entropic quantifiers: information ledgers, irreality, and reality change.

Conventions, all in nats:

* information of a state on a d-dimensional space:  I(rho) = ln d - S(rho)
* irreality of an observable A for a preparation:   J(A|rho) = S(Phi_A(rho)) - S(rho)
* reality change under a channel:                   dR = -dJ

Irreality is nonnegative and vanishes exactly on the dephasing-invariant
"reality states".  It splits into a local part, computed on the reduced
state, plus a discord-like drop of the mutual information (no basis
minimization is performed).
"""

import math
from dataclasses import dataclass

import numpy as np

from .channels import MonitoringMap, RevealedMeasurement, apply_dephasing, apply_monitoring, apply_weak_collapse
from .errors import InvalidBipartition, NotARealityState, NotUnbiased
from .states import (
    DEFAULT_TOLERANCES,
    DensityMatrix,
    ObservableSpec,
    ToleranceConfig,
    binary_entropy,
    partial_trace,
    trace_distance,
    von_neumann_entropy,
)

Bipartition = tuple[tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True)
class InformationLedger:
    """Total information split into local and shared parts for a bipartition.

    total_I = local_I[0] + local_I[1] + mutual_I and, equivalently,
    total_I = local_I[1] + conditional_I, where conditional_I is the
    information of the first block given access to the second.
    """

    total_I: float
    local_I: tuple[float, float]
    mutual_I: float
    conditional_I: float


@dataclass(frozen=True)
class IrrealityBreakdown:
    """irreality = local_irreality + discord_like, all nonnegative."""

    irreality: float
    local_irreality: float
    discord_like: float


@dataclass(frozen=True)
class RealityChangeReport:
    """Reality change of a monitored observable with its two-sided bounds.

    lower_bound = eps * J(A|rho); fannes_bound is the entropy-continuity
    bound eps*tau*ln(d-1) + H(eps*tau) evaluated at tau, the trace distance
    between the preparation and its dephased version; simple_estimate is the
    looser closed form d*sqrt(eps*tau/e) dominating the fannes bound.
    """

    delta_R: float
    lower_bound: float
    tau: float
    fannes_bound: float
    simple_estimate: float


def information(rho: DensityMatrix, tol: ToleranceConfig = DEFAULT_TOLERANCES) -> float:
    """I(rho) = ln d - S(rho); zero for the maximally mixed state."""
    return math.log(rho.total) - von_neumann_entropy(rho, tol)


def _check_bipartition(bipartition: Bipartition, n: int) -> Bipartition:
    try:
        first, second = bipartition
        first = tuple(int(i) for i in first)
        second = tuple(int(i) for i in second)
    except (TypeError, ValueError) as exc:
        raise InvalidBipartition(f"expected two index blocks, got {bipartition!r}") from exc
    if not first or not second:
        raise InvalidBipartition("both blocks must be nonempty")
    if sorted(first + second) != list(range(n)):
        raise InvalidBipartition(
            f"blocks {first} and {second} do not partition the {n} subsystems"
        )
    return first, second


def information_ledger(
    rho: DensityMatrix,
    bipartition: Bipartition,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> InformationLedger:
    """Information bookkeeping across a bipartition.

    Both decompositions (local + mutual, and marginal + conditional) are
    exact identities of the entropies involved; a global unitary changes
    none of the total.
    """
    first, second = _check_bipartition(bipartition, len(rho.dims))
    rho_a = partial_trace(rho, first, tol)
    rho_b = partial_trace(rho, second, tol)
    s = von_neumann_entropy(rho, tol)
    s_a = von_neumann_entropy(rho_a, tol)
    s_b = von_neumann_entropy(rho_b, tol)
    total = math.log(rho.total) - s
    local_a = math.log(rho_a.total) - s_a
    local_b = math.log(rho_b.total) - s_b
    mutual = s_a + s_b - s
    conditional = math.log(rho_a.total) - (s - s_b)
    return InformationLedger(total, (local_a, local_b), mutual, conditional)


def irreality(
    obs: ObservableSpec, rho: DensityMatrix, tol: ToleranceConfig = DEFAULT_TOLERANCES
) -> float:
    """J(A|rho) = S(Phi_A(rho)) - S(rho); zero iff rho is already dephased."""
    dephased = apply_dephasing(obs, rho, tol)
    return von_neumann_entropy(dephased, tol) - von_neumann_entropy(rho, tol)


def irreality_decomposition(
    obs: ObservableSpec,
    rho: DensityMatrix,
    bipartition: Bipartition,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> IrrealityBreakdown:
    """Split J(A|rho) into the local irreality of the reduced state plus the
    mutual-information drop caused by the dephasing."""
    first, second = _check_bipartition(bipartition, len(rho.dims))
    if obs.target_index not in first:
        raise InvalidBipartition(
            f"observable targets subsystem {obs.target_index}, "
            f"which is not in the first block {first}"
        )
    total = irreality(obs, rho, tol)
    rho_a = partial_trace(rho, first, tol)
    local_obs = ObservableSpec(
        first.index(obs.target_index), obs.eigenvalues, obs.eigenbasis
    )
    local = irreality(local_obs, rho_a, tol)
    dephased = apply_dephasing(obs, rho, tol)
    mutual_before = information_ledger(rho, bipartition, tol).mutual_I
    mutual_after = information_ledger(dephased, bipartition, tol).mutual_I
    return IrrealityBreakdown(total, local, mutual_before - mutual_after)


def reality_change(
    obs: ObservableSpec,
    eps: float,
    rho: DensityMatrix,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> RealityChangeReport:
    """Reality gain of an observable under a monitoring of intensity eps.

    dR = J(A|rho) - J(A|monitored rho), which also equals the entropy
    increase of the state.  It is bounded below by eps*J(A|rho) and above
    by the entropy-continuity bound at trace distance eps*tau.
    """
    monitored = apply_monitoring(MonitoringMap(obs, eps), rho, tol)
    before = irreality(obs, rho, tol)
    after = irreality(obs, monitored, tol)
    tau = trace_distance(apply_dephasing(obs, rho, tol), rho)
    d = rho.total
    t = min(max(eps * tau, 0.0), 1.0)
    fannes = t * math.log(d - 1) + binary_entropy(t, tol)
    simple = d * math.sqrt(eps * tau / math.e)
    return RealityChangeReport(before - after, eps * before, tau, fannes, simple)


def _check_unbiased(a: ObservableSpec, b: ObservableSpec, tol: ToleranceConfig):
    if a.dim != b.dim or a.target_index != b.target_index:
        raise NotUnbiased("observables must act on the same subsystem")
    overlaps = np.abs(a.eigenbasis.conj().T @ b.eigenbasis) ** 2
    dev = float(np.abs(overlaps - 1.0 / a.dim).max())
    if dev > tol.tol_ortho:
        raise NotUnbiased(f"max | |<a|a'>|^2 - 1/d | = {dev:.3e}")


def generated_irreality(
    obs_A: ObservableSpec,
    obs_Aprime: ObservableSpec,
    outcome: int,
    eps: float,
    rho_reality: DensityMatrix,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> tuple[float, float]:
    """Irreality of A' created by a revealed measurement of the mutually
    unbiased observable A on a reality state of A'.

    Returns the generated irreality and its upper bound
    eps*t*ln(d-1) + H(eps*t) with t = 1 - 1/d_A.  The unrevealed
    counterpart (a monitoring of A) leaves the irreality of A' at zero;
    only knowing the outcome creates any.
    """
    _check_unbiased(obs_A, obs_Aprime, tol)
    dephased = apply_dephasing(obs_Aprime, rho_reality, tol)
    gap = trace_distance(dephased, rho_reality)
    if gap > tol.tol_ineq_slack:
        raise NotARealityState(
            f"input is {gap:.3e} away from its dephased version in trace distance"
        )
    post = apply_weak_collapse(RevealedMeasurement(obs_A, outcome, eps), rho_reality, tol)
    value = irreality(obs_Aprime, post, tol)
    t = eps * (1.0 - 1.0 / obs_A.dim)
    d = rho_reality.total
    bound = t * math.log(d - 1) + binary_entropy(t, tol)
    return value, bound


def monotonicity_check(
    obs_A: ObservableSpec,
    obs_O: ObservableSpec,
    eps: float,
    rho: DensityMatrix,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> tuple[float, float]:
    """Irreality of A before and after a monitoring of O (any subsystem).

    Monitoring never increases irreality, so before >= after up to
    numerical slack; equivalently the reality of A never decreases.
    """
    before = irreality(obs_A, rho, tol)
    after = irreality(obs_A, apply_monitoring(MonitoringMap(obs_O, eps), rho, tol), tol)
    return before, after
