"""Measurement maps as composable channel descriptors.

Four families act on a designated subsystem of a composite state:

* full dephasing  Phi(rho)   = sum_a P_a rho P_a
* projective collapse on outcome a, with probability p_a = Tr(P_a rho)
* revealed collapse of intensity eps:  (1-eps) rho + eps * collapse
* monitoring of intensity eps:         (1-eps) rho + eps * Phi(rho)

Descriptors are immutable; applying one never mutates its input, so the
algebraic laws (composition, iteration, limits) can be checked both as
intensity arithmetic and at the state level.  Intensities admit the closed
endpoints 0 and 1; both limits are well defined.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, ZeroProbabilityOutcome
from .states import (
    DEFAULT_TOLERANCES,
    DensityMatrix,
    ObservableSpec,
    ToleranceConfig,
    validate_state,
)


@dataclass(frozen=True)
class DephasingMap:
    """Unrevealed projective measurement of one observable."""

    observable: ObservableSpec


@dataclass(frozen=True)
class RevealedMeasurement:
    """Measurement of tunable intensity whose outcome is known."""

    observable: ObservableSpec
    outcome: int
    intensity: float

    def __post_init__(self):
        if not 0 <= self.outcome < self.observable.dim:
            raise ValueError(f"outcome {self.outcome} out of range for dim {self.observable.dim}")
        if not 0.0 <= self.intensity <= 1.0:
            raise ValueError(f"intensity must lie in [0, 1], got {self.intensity}")


@dataclass(frozen=True)
class MonitoringMap:
    """Unrevealed measurement of tunable intensity."""

    observable: ObservableSpec
    intensity: float

    def __post_init__(self):
        if not 0.0 <= self.intensity <= 1.0:
            raise ValueError(f"intensity must lie in [0, 1], got {self.intensity}")


def _as_observable(phi) -> ObservableSpec:
    return phi.observable if isinstance(phi, DephasingMap) else phi


def _check_target(obs: ObservableSpec, rho: DensityMatrix):
    if obs.target_index >= len(rho.dims):
        raise DimensionMismatch(
            f"observable targets subsystem {obs.target_index} of {len(rho.dims)}"
        )
    if rho.dims[obs.target_index] != obs.dim:
        raise DimensionMismatch(
            f"observable dimension {obs.dim} does not match subsystem "
            f"dimension {rho.dims[obs.target_index]}"
        )


def _factor_shape(dims, target_index: int) -> tuple[int, int, int]:
    pre = 1
    for d in dims.dims[:target_index]:
        pre *= d
    post = 1
    for d in dims.dims[target_index + 1 :]:
        post *= d
    return pre, dims[target_index], post


def dephase_matrix(matrix: np.ndarray, dims, obs: ObservableSpec) -> np.ndarray:
    """Zero all off-diagonal blocks of ``matrix`` in the observable eigenbasis.

    Works on the raw array so channel compositions can defer validation to
    the final result.
    """
    pre, dt, post = _factor_shape(dims, obs.target_index)
    shaped = matrix.reshape(pre, dt, post, pre, dt, post)
    v = obs.eigenbasis
    rotated = np.einsum("ba,pbqrcs,cd->paqrds", v.conj(), shaped, v, optimize=True)
    rotated *= np.eye(dt)[np.newaxis, :, np.newaxis, np.newaxis, :, np.newaxis]
    out = np.einsum("ab,pbqrcs,dc->paqrds", v, rotated, v.conj(), optimize=True)
    return out.reshape(matrix.shape)


def apply_dephasing(
    phi, rho: DensityMatrix, tol: ToleranceConfig = DEFAULT_TOLERANCES
) -> DensityMatrix:
    """Apply the dephasing map; idempotent and trace preserving.

    Accepts either a DephasingMap or a bare ObservableSpec.
    """
    obs = _as_observable(phi)
    _check_target(obs, rho)
    return validate_state(dephase_matrix(rho.matrix, rho.dims, obs), rho.dims, tol)


def outcome_probability(obs: ObservableSpec, outcome: int, rho: DensityMatrix) -> float:
    """p_a = Tr(P_a rho) for the embedded eigenprojector."""
    _check_target(obs, rho)
    pre, dt, post = _factor_shape(rho.dims, obs.target_index)
    shaped = rho.matrix.reshape(pre, dt, post, pre, dt, post)
    v = obs.eigenbasis[:, outcome]
    return float(np.einsum("b,pbqpcq,c->", v.conj(), shaped, v, optimize=True).real)


def apply_collapse(
    obs: ObservableSpec,
    outcome: int,
    rho: DensityMatrix,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> tuple[DensityMatrix, float]:
    """Project onto one eigenvalue and renormalize.

    Returns the post-measurement state together with the outcome probability.
    The target factor of the result is exactly the rank-1 eigenprojector, so
    repeating the same collapse is the identity on the output.
    """
    _check_target(obs, rho)
    p = outcome_probability(obs, outcome, rho)
    if p <= tol.tol_trace:
        raise ZeroProbabilityOutcome(
            f"outcome {outcome} has probability {p:.3e} <= {tol.tol_trace:.1e}"
        )
    pre, dt, post = _factor_shape(rho.dims, obs.target_index)
    shaped = rho.matrix.reshape(pre, dt, post, pre, dt, post)
    v = obs.eigenbasis[:, outcome]
    block = np.einsum("b,pbqrcs,c->pqrs", v.conj(), shaped, v, optimize=True)
    proj = np.outer(v, v.conj())
    collapsed = np.einsum("pqrs,bc->pbqrcs", block, proj, optimize=True)
    out = collapsed.reshape(rho.matrix.shape) / p
    return validate_state(out, rho.dims, tol), p


def apply_weak_collapse(
    m: RevealedMeasurement, rho: DensityMatrix, tol: ToleranceConfig = DEFAULT_TOLERANCES
) -> DensityMatrix:
    """(1-eps) rho + eps * collapse; eps=0 returns rho, eps=1 the collapse."""
    collapsed, _ = apply_collapse(m.observable, m.outcome, rho, tol)
    out = (1.0 - m.intensity) * rho.matrix + m.intensity * collapsed.matrix
    return validate_state(out, rho.dims, tol)


def compose_weak_collapses(eps: float, delta: float) -> float:
    """Effective intensity of two nested intensity-eps and intensity-delta
    applications with the same outcome: eps + delta - eps*delta.

    The same arithmetic governs composing two monitorings of one observable.
    """
    for x in (eps, delta):
        if not 0.0 <= x <= 1.0:
            raise ValueError(f"intensity must lie in [0, 1], got {x}")
    return eps + delta - eps * delta


def weak_collapse_difference(
    eps: float,
    delta: float,
    obs: ObservableSpec,
    outcome: int,
    rho: DensityMatrix,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> np.ndarray:
    """Matrix difference between two revealed measurements of the same
    outcome, equal to (eps - delta) * (collapse(rho) - rho)."""
    a = apply_weak_collapse(RevealedMeasurement(obs, outcome, eps), rho, tol)
    b = apply_weak_collapse(RevealedMeasurement(obs, outcome, delta), rho, tol)
    return a.matrix - b.matrix


def apply_monitoring(
    m: MonitoringMap, rho: DensityMatrix, tol: ToleranceConfig = DEFAULT_TOLERANCES
) -> DensityMatrix:
    """(1-eps) rho + eps Phi(rho).

    In the observable eigenbasis every off-diagonal block is damped by
    exactly (1-eps); dephasing of the same observable absorbs the map.
    """
    obs = m.observable
    _check_target(obs, rho)
    out = (1.0 - m.intensity) * rho.matrix + m.intensity * dephase_matrix(
        rho.matrix, rho.dims, obs
    )
    return validate_state(out, rho.dims, tol)


def monitoring_branch_operators(m: MonitoringMap) -> list[np.ndarray]:
    """The full d+1 branch layout sqrt(1-eps)*identity, sqrt(eps)*projector_a.

    Vanishing branches at the endpoint intensities are kept, so the list
    length never depends on eps; the dilation ancilla is sized from it.
    """
    eps = m.intensity
    d = m.observable.dim
    ops = [np.sqrt(1.0 - eps) * np.eye(d, dtype=complex)]
    for a in range(d):
        ops.append(np.sqrt(eps) * m.observable.projector(a))
    return ops


def monitoring_kraus(m: MonitoringMap) -> list[np.ndarray]:
    """Operator-sum form on the target subsystem.

    K_0 = sqrt(1-eps) * identity and one sqrt(eps) * eigenprojector per
    outcome, satisfying sum(K^dag K) = identity.  Identically vanishing
    operators are dropped: eps=0 leaves the bare identity and eps=1 the
    projective set.
    """
    ops = monitoring_branch_operators(m)
    if m.intensity == 0.0:
        return ops[:1]
    if m.intensity == 1.0:
        return ops[1:]
    return ops


def unrevealed_average(
    obs: ObservableSpec,
    eps: float,
    rho: DensityMatrix,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> DensityMatrix:
    """Outcome-averaged revealed measurement, sum_a p_a C^eps_a(rho).

    Accumulates the unnormalized branch p_a * C^eps_a(rho) directly, so
    zero-probability outcomes contribute exactly nothing instead of raising.
    """
    _check_target(obs, rho)
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"intensity must lie in [0, 1], got {eps}")
    pre, dt, post = _factor_shape(rho.dims, obs.target_index)
    shaped = rho.matrix.reshape(pre, dt, post, pre, dt, post)
    out = np.zeros_like(rho.matrix)
    for a in range(dt):
        v = obs.eigenbasis[:, a]
        p = float(np.einsum("b,pbqpcq,c->", v.conj(), shaped, v, optimize=True).real)
        block = np.einsum("b,pbqrcs,c->pqrs", v.conj(), shaped, v, optimize=True)
        proj = np.outer(v, v.conj())
        branch = np.einsum("pqrs,bc->pbqrcs", block, proj, optimize=True).reshape(out.shape)
        out += (1.0 - eps) * p * rho.matrix + eps * branch
    return validate_state(out, rho.dims, tol)


def iterate_monitoring(m: MonitoringMap, n: int) -> MonitoringMap:
    """n successive monitorings collapse to one of intensity 1 - (1-eps)^n."""
    if n < 1:
        raise ValueError(f"iteration count must be >= 1, got {n}")
    return MonitoringMap(m.observable, 1.0 - (1.0 - m.intensity) ** n)


def monitoring_difference(
    eps: float,
    delta: float,
    obs: ObservableSpec,
    rho: DensityMatrix,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> np.ndarray:
    """Matrix difference between two monitorings of the same observable,
    equal to (eps - delta) * (Phi(rho) - rho).

    A consequence: the trace distance from the input scales linearly in the
    intensity, T(monitored, rho) = eps * T(Phi(rho), rho).
    """
    a = apply_monitoring(MonitoringMap(obs, eps), rho, tol)
    b = apply_monitoring(MonitoringMap(obs, delta), rho, tol)
    return a.matrix - b.matrix
