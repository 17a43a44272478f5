"""Worked scenarios exercising the channels and quantifiers end to end.

Each scenario builds concrete states, evaluates the relevant identities and
inequalities, and returns a ScenarioResult whose assertions carry a short
anchor label, the measured and expected values, the slack, and the verdict.
Scenario runs are deterministic; assertions are reproducible bit for bit for
a fixed tolerance set.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .channels import apply_dephasing
from .errors import DegenerateGram, PacketTooWide
from .quantifiers import information_ledger, irreality
from .states import (
    DEFAULT_TOLERANCES,
    DensityMatrix,
    DimsSpec,
    PureState,
    ToleranceConfig,
    computational_basis,
    partial_trace,
    pure_to_density,
    shannon_entropy,
    validate_pure_state,
    validate_state,
    von_neumann_entropy,
)

DEGENERATE_OVERLAP_MARGIN = 1e-12
TAIL_MASS_THRESHOLD = 1e-12


@dataclass(frozen=True)
class Assertion:
    """One named check inside a scenario.

    ``kind`` is "identity" (measured must match expected within tolerance),
    "lower" (measured must not fall below expected) or "upper" (measured
    must not exceed expected).  ``slack`` is the signed margin; identities
    use tolerance minus the absolute deviation.
    """

    assertion_id: str
    anchor: str
    kind: str
    measured: float
    expected: float
    slack: float
    tolerance: float
    passed: bool


def identity_check(
    assertion_id: str, anchor: str, measured: float, expected: float, tolerance: float
) -> Assertion:
    gap = abs(measured - expected)
    return Assertion(
        assertion_id, anchor, "identity", float(measured), float(expected),
        float(tolerance - gap), float(tolerance), gap <= tolerance,
    )


def lower_bound_check(
    assertion_id: str, anchor: str, measured: float, bound: float, slack_tol: float
) -> Assertion:
    slack = measured - bound
    return Assertion(
        assertion_id, anchor, "lower", float(measured), float(bound),
        float(slack), float(slack_tol), slack >= -slack_tol,
    )


def upper_bound_check(
    assertion_id: str, anchor: str, measured: float, bound: float, slack_tol: float
) -> Assertion:
    slack = bound - measured
    return Assertion(
        assertion_id, anchor, "upper", float(measured), float(bound),
        float(slack), float(slack_tol), slack >= -slack_tol,
    )


@dataclass(frozen=True)
class ScenarioResult:
    name: str
    values: dict = field(default_factory=dict)
    assertions: tuple = ()

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.assertions)


# ---------------------------------------------------------------------------
# two-qubit information flow
# ---------------------------------------------------------------------------

def two_qubit_information_flow(tol: ToleranceConfig = DEFAULT_TOLERANCES) -> ScenarioResult:
    """Local information turning into shared information under a unitary.

    A product state of one definite qubit and one balanced qubit is driven
    to a maximally entangled state.  The total information 2 ln 2 is
    conserved; initially it is entirely local, afterwards entirely shared.
    """
    dims = DimsSpec((2, 2))
    psi0 = np.array([1.0, 1.0, 0.0, 0.0], dtype=complex) / np.sqrt(2.0)
    # |a, b> -> |a xor b, b>: flips the first qubit when the second is set
    u = np.zeros((4, 4), dtype=complex)
    u[0, 0] = u[3, 1] = u[2, 2] = u[1, 3] = 1.0
    psi_t = u @ psi0
    rho0 = pure_to_density(validate_pure_state(psi0, dims, tol))
    rho_t = validate_state(u @ rho0.matrix @ u.conj().T, dims, tol)
    unitary_gap = float(np.abs(rho_t.matrix - np.outer(psi_t, psi_t.conj())).max())

    split = ((0,), (1,))
    ledger0 = information_ledger(rho0, split, tol)
    ledger_t = information_ledger(rho_t, split, tol)
    ln2 = math.log(2.0)
    half = partial_trace(rho_t, (0,), tol)

    assertions = (
        identity_check(
            "total_information_conserved",
            "information-conservation",
            max(abs(ledger0.total_I - 2 * ln2), abs(ledger_t.total_I - 2 * ln2)),
            0.0,
            tol.tol_identity,
        ),
        identity_check(
            "information_initially_local",
            "local-information-start",
            max(
                abs(ledger0.mutual_I),
                abs(ledger0.local_I[0] - ln2),
                abs(ledger0.local_I[1] - ln2),
            ),
            0.0,
            tol.tol_identity,
        ),
        identity_check(
            "information_finally_shared",
            "shared-information-end",
            max(
                abs(ledger_t.mutual_I - 2 * ln2),
                abs(ledger_t.local_I[0]),
                abs(ledger_t.local_I[1]),
            ),
            0.0,
            tol.tol_identity,
        ),
    )
    values = {
        "total_I_initial": ledger0.total_I,
        "total_I_final": ledger_t.total_I,
        "mutual_I_initial": ledger0.mutual_I,
        "mutual_I_final": ledger_t.mutual_I,
        "local_I_initial_first": ledger0.local_I[0],
        "local_I_initial_second": ledger0.local_I[1],
        "local_I_final_first": ledger_t.local_I[0],
        "local_I_final_second": ledger_t.local_I[1],
        "final_reduction_entropy": von_neumann_entropy(half, tol),
        "unitary_image_gap": unitary_gap,
    }
    return ScenarioResult("two_qubit_information_flow", values, assertions)


# ---------------------------------------------------------------------------
# elastic scattering with conserved momentum
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScatteringParams:
    """Elastic particle-molecule scattering with Gaussian packets.

    ``xi`` is the mass ratio of particle to molecule and ``velocity_ratio``
    the initial particle speed in units of the common velocity spread.
    """

    xi: float
    velocity_ratio: float

    def __post_init__(self):
        if self.xi <= 0 or self.velocity_ratio <= 0:
            raise ValueError("xi and velocity_ratio must be strictly positive")


def scattering_overlaps(p: ScatteringParams) -> tuple[float, float]:
    """Overlaps of the unscattered and scattered packets for each subsystem.

    Both lie in (0, 1] and shrink monotonically as the velocity ratio grows.
    """
    o_part = math.exp(-0.5 * (p.velocity_ratio / (1.0 + p.xi)) ** 2)
    o_mol = math.exp(-0.5 * (p.xi * p.velocity_ratio / (1.0 + p.xi)) ** 2)
    return o_part, o_mol


def _gram_frame(overlap: float) -> np.ndarray:
    """Two unit vectors in the plane with the requested real inner product,
    as columns of the symmetric square root of [[1, o], [o, 1]]."""
    a = (math.sqrt(1.0 + overlap) + math.sqrt(1.0 - overlap)) / 2.0
    b = (math.sqrt(1.0 + overlap) - math.sqrt(1.0 - overlap)) / 2.0
    return np.array([[a, b], [b, a]], dtype=complex)


def scattering_state(
    p: ScatteringParams, tol: ToleranceConfig = DEFAULT_TOLERANCES
) -> tuple[DensityMatrix, float, float]:
    """Joint post-scattering state in the two-branch frames.

    Each subsystem's pair of nonorthogonal packets is embedded into a
    2-dimensional orthonormal frame through the Gram square root; the two
    equal-weight branches are then superposed and normalized.  Returns the
    joint state, the entanglement of the bipartition, and the irreality of
    the branch-label observable on the particle's reduced state.

    The entanglement is reported as the purity-based entropy of a
    reduction, -ln Tr(rho_part^2), an entanglement monotone for the pure
    joint state that vanishes in the heavy-molecule regime and reaches
    ln 2 for orthogonal branches.
    """
    o_part, o_mol = scattering_overlaps(p)
    for name, o in (("particle", o_part), ("molecule", o_mol)):
        if o >= 1.0 - DEGENERATE_OVERLAP_MARGIN:
            raise DegenerateGram(
                f"{name} branch overlap {o:.17g} leaves no distinguishable branches"
            )
    frame_p = _gram_frame(o_part)
    frame_m = _gram_frame(o_mol)
    psi = np.kron(frame_p[:, 0], frame_m[:, 0]) + np.kron(frame_p[:, 1], frame_m[:, 1])
    psi = psi / np.linalg.norm(psi)
    dims = DimsSpec((2, 2))
    rho = pure_to_density(validate_pure_state(psi, dims, tol))
    rho_part = partial_trace(rho, (0,), tol)
    purity = float(np.clip((rho_part.eigenvalues**2).sum(), 0.0, 1.0))
    entanglement = -math.log(purity)
    label = computational_basis(2, 0)
    local_irr = irreality(label, rho_part, tol)
    return rho, entanglement, local_irr


# ---------------------------------------------------------------------------
# detector-array measurement model
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DetectorArraySpec:
    """One-excitation detector array reading out a displaced spin-packet pair.

    The particle's packet (standard deviation ``packet_width_sites`` of the
    site distribution) is shifted by ``+- shift_sites`` depending on the
    spin component with amplitudes ``alpha`` and ``beta``; site indexing is
    periodic over ``n_sites``.
    """

    n_sites: int = 32
    packet_width_sites: float = 2.0
    shift_sites: int = 8
    alpha: complex = 1.0 / math.sqrt(2.0)
    beta: complex = 1.0 / math.sqrt(2.0)

    def __post_init__(self):
        if self.n_sites < 4:
            raise ValueError("need at least 4 sites")
        if self.shift_sites < 1:
            raise ValueError("shift must be at least one site")
        if self.packet_width_sites < 0:
            raise ValueError("packet width must be nonnegative")
        norm_dev = abs(abs(self.alpha) ** 2 + abs(self.beta) ** 2 - 1.0)
        if norm_dev > DEFAULT_TOLERANCES.tol_norm:
            raise ValueError(f"|alpha|^2 + |beta|^2 differs from 1 by {norm_dev:.3e}")


def _packet_weights(spec: DetectorArraySpec) -> np.ndarray:
    """Normalized packet amplitudes on the periodic grid, centered mid-grid.

    Raises PacketTooWide when the mass beyond the grid window exceeds the
    truncation threshold, since periodic wrap-around would then alias a
    non-negligible part of the packet.
    """
    n = spec.n_sites
    sigma = max(spec.packet_width_sites, 1e-9)
    extended = np.arange(-5 * n, 5 * n + 1, dtype=float)
    amp = np.exp(-(extended**2) / (4.0 * sigma**2))
    mass = amp**2
    half = (n - 1) // 2
    tail = float(mass[np.abs(extended) > half].sum() / mass.sum())
    if tail > TAIL_MASS_THRESHOLD:
        raise PacketTooWide(
            f"tail mass {tail:.3e} beyond half-width {half} exceeds {TAIL_MASS_THRESHOLD:.0e}"
        )
    center = n // 2
    offsets = (np.arange(n) - center + n // 2) % n - n // 2
    weights = np.exp(-(offsets.astype(float) ** 2) / (4.0 * sigma**2))
    return weights / np.linalg.norm(weights)


def detector_array_state(
    spec: DetectorArraySpec, tol: ToleranceConfig = DEFAULT_TOLERANCES
) -> PureState:
    """Correlated spin-position-apparatus state after the array has fired.

    Spin up rides the packet shifted up and excites the detector at the
    particle's site; spin down rides the packet shifted down.  The
    apparatus lives in the one-excitation sector, dimension ``n_sites``.
    """
    n = spec.n_sites
    weights = _packet_weights(spec)
    dims = DimsSpec((2, n, n))
    vec = np.zeros((2, n, n), dtype=complex)
    for k in range(n):
        up = (k + spec.shift_sites) % n
        down = (k - spec.shift_sites) % n
        vec[0, up, up] += spec.alpha * weights[k]
        vec[1, down, down] += spec.beta * weights[k]
    flat = vec.reshape(-1)
    flat = flat / np.linalg.norm(flat)
    return validate_pure_state(flat, dims, tol)


def _apparatus_outcomes(
    spec: DetectorArraySpec, tol: ToleranceConfig
) -> tuple[DensityMatrix, DensityMatrix, np.ndarray]:
    """Joint state, apparatus reduction and detector-site distribution."""
    sigma_as = pure_to_density(detector_array_state(spec, tol))
    rho_app = partial_trace(sigma_as, (2,), tol)
    p = np.clip(np.diag(rho_app.matrix).real, 0.0, 1.0)
    return sigma_as, rho_app, p


def apparatus_reality_check(
    spec: DetectorArraySpec, tol: ToleranceConfig = DEFAULT_TOLERANCES
) -> ScenarioResult:
    """The apparatus reduction is an incoherent mixture of detector states.

    Tracing out spin and position cancels every off-diagonal element in the
    one-excitation basis exactly, so the detector-site observable is fully
    real: its irreality vanishes and the diagonal weights are the two
    displaced copies of the packet distribution.
    """
    sigma_as, rho_app, p = _apparatus_outcomes(spec, tol)
    n = spec.n_sites
    off_diag = rho_app.matrix - np.diag(np.diag(rho_app.matrix))
    max_off = float(np.abs(off_diag).max())

    label = computational_basis(n, 0)
    label_irreality = irreality(label, rho_app, tol)

    weights = _packet_weights(spec)
    expected_diag = np.empty(n)
    for j in range(n):
        expected_diag[j] = (
            abs(spec.alpha) ** 2 * weights[(j - spec.shift_sites) % n] ** 2
            + abs(spec.beta) ** 2 * weights[(j + spec.shift_sites) % n] ** 2
        )
    weight_gap = float(np.abs(np.diag(rho_app.matrix).real - expected_diag).max())

    assertions = (
        identity_check(
            "apparatus_diagonal", "apparatus-diagonality", max_off, 0.0, tol.tol_identity
        ),
        identity_check(
            "apparatus_label_irreality",
            "established-apparatus-reality",
            label_irreality,
            0.0,
            tol.tol_identity,
        ),
        identity_check(
            "apparatus_diagonal_weights",
            "displaced-packet-mixture",
            weight_gap,
            0.0,
            tol.tol_identity,
        ),
    )
    values = {
        "max_off_diagonal": max_off,
        "label_irreality": label_irreality,
        "apparatus_entropy": von_neumann_entropy(rho_app, tol),
        "outcome_entropy": shannon_entropy(p / p.sum(), tol),
    }
    return ScenarioResult("apparatus_reality_check", values, assertions)


def measurement_entropy_bookkeeping(
    spec: DetectorArraySpec, tol: ToleranceConfig = DEFAULT_TOLERANCES
) -> ScenarioResult:
    """Entropy accounting of reading the array, seen from inside and outside.

    The unread measurement dephases the joint state in the detector basis;
    its entropy splits exactly into the outcome entropy plus the average
    entropy of the conditional system states.  Reading the outcomes gives
    the same information on average as the unread description, while the
    external observer's ignorance grows and the internal one's shrinks.
    """
    n = spec.n_sites
    sigma_as, rho_app, p = _apparatus_outcomes(spec, tol)
    d_system = 2 * n

    detector_obs = computational_basis(n, 2)
    dephased = apply_dephasing(detector_obs, sigma_as, tol)
    s_dephased = von_neumann_entropy(dephased, tol)
    s_joint = von_neumann_entropy(sigma_as, tol)

    rho_app_obs = computational_basis(n, 0)
    s_app_dephased = von_neumann_entropy(apply_dephasing(rho_app_obs, rho_app, tol), tol)

    # conditional system states: detector j fires only with the particle at
    # site j, so each conditional is read off one apparatus-diagonal block
    shaped = sigma_as.matrix.reshape(2, n, n, 2, n, n)
    avg_conditional_entropy = 0.0
    conditional_purity_defect = 0.0
    for j in range(n):
        if p[j] <= tol.eig_zero_floor:
            continue
        block = shaped[:, :, j, :, :, j].reshape(d_system, d_system) / p[j]
        cond = validate_state(block, DimsSpec((2, n)), tol)
        s_cond = von_neumann_entropy(cond, tol)
        avg_conditional_entropy += p[j] * s_cond
        conditional_purity_defect = max(conditional_purity_defect, s_cond)

    h_outcomes = shannon_entropy(p / p.sum(), tol)
    avg_information = math.log(d_system) - avg_conditional_entropy
    conditional_information = math.log(d_system) - (s_dephased - s_app_dephased)

    delta_s = s_dephased - s_joint
    delta_s_bar = avg_conditional_entropy - s_joint

    assertions = (
        identity_check(
            "joint_entropy_theorem",
            "block-diagonal-entropy-split",
            s_dephased,
            h_outcomes + avg_conditional_entropy,
            tol.tol_identity,
        ),
        identity_check(
            "average_information_equality",
            "read-vs-unread-information",
            avg_information,
            conditional_information,
            tol.tol_identity,
        ),
        identity_check(
            "entropy_bookkeeping",
            "outcome-entropy-ledger",
            delta_s,
            h_outcomes + delta_s_bar,
            tol.tol_identity,
        ),
        lower_bound_check(
            "external_entropy_increase",
            "unread-ignorance-grows",
            delta_s,
            0.0,
            tol.tol_ineq_slack,
        ),
        upper_bound_check(
            "internal_entropy_decrease",
            "read-ignorance-shrinks",
            delta_s_bar,
            0.0,
            tol.tol_ineq_slack,
        ),
    )
    values = {
        "outcome_entropy": h_outcomes,
        "average_conditional_entropy": avg_conditional_entropy,
        "average_information": avg_information,
        "conditional_information": conditional_information,
        "delta_S": delta_s,
        "delta_S_bar": delta_s_bar,
        "max_conditional_entropy": conditional_purity_defect,
    }
    return ScenarioResult("measurement_entropy_bookkeeping", values, assertions)
