"""Command-line runner for scenarios, randomized property suites and sweeps.

Reports are deterministic for a fixed config and seed: rows are ordered by
scenario then assertion id (sample indices are zero padded), and numbers are
serialized with 12 significant digits.  Exit codes: 0 when every assertion
passes, 1 when any fails, 2 for configuration errors.
"""

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field, fields

import numpy as np

from . import scenarios as sc
from .channels import (
    MonitoringMap,
    RevealedMeasurement,
    apply_dephasing,
    apply_monitoring,
    apply_weak_collapse,
    compose_weak_collapses,
    iterate_monitoring,
    monitoring_kraus,
    outcome_probability,
    unrevealed_average,
)
from .dilation import complementarity_ledger, tripartite_ssa_experiment
from .errors import ConfigParseError, UnknownScenario
from .quantifiers import (
    generated_irreality,
    information_ledger,
    irreality,
    irreality_decomposition,
    monotonicity_check,
    reality_change,
)
from .states import (
    DEFAULT_TOLERANCES,
    DimsSpec,
    ToleranceConfig,
    binary_entropy,
    computational_basis,
    embed_operator,
    fourier_basis,
    random_observable,
    random_state,
    validate_state,
)

_TOLERANCE_KEYS = {f.name for f in fields(ToleranceConfig)}


@dataclass(frozen=True)
class RunConfig:
    scenario: str
    seed: int = 7
    samples: int = 200
    dims: tuple[int, ...] = (2, 2)
    epsilon: tuple[float, ...] = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0)
    tolerances: dict = field(default_factory=dict)
    output: str | None = None
    format: str = "csv"


@dataclass(frozen=True)
class ReportRow:
    scenario: str
    assertion_id: str
    paper_anchor: str
    measured: float
    expected: float
    slack: float
    passed: bool


def build_config(data: dict) -> RunConfig:
    """Validate a flat key/value mapping into a RunConfig."""
    known = {f.name for f in fields(RunConfig)}
    for key in data:
        if key not in known:
            raise ConfigParseError(f"unknown config field {key!r}")
    if "scenario" not in data or not isinstance(data["scenario"], str):
        raise ConfigParseError("config field 'scenario' (string) is required")
    out = {"scenario": data["scenario"]}
    if "seed" in data:
        if not isinstance(data["seed"], int) or data["seed"] < 0:
            raise ConfigParseError("config field 'seed' must be a nonnegative integer")
        out["seed"] = data["seed"]
    if "samples" in data:
        if not isinstance(data["samples"], int) or data["samples"] < 1:
            raise ConfigParseError("config field 'samples' must be a positive integer")
        out["samples"] = data["samples"]
    if "dims" in data:
        dims = data["dims"]
        if (
            not isinstance(dims, (list, tuple))
            or not dims
            or not all(isinstance(d, int) and d >= 2 for d in dims)
        ):
            raise ConfigParseError("config field 'dims' must be a list of integers >= 2")
        out["dims"] = tuple(dims)
    if "epsilon" in data:
        eps = data["epsilon"]
        if not isinstance(eps, (list, tuple)) or not eps:
            raise ConfigParseError("config field 'epsilon' must be a nonempty list")
        for x in eps:
            if not isinstance(x, (int, float)) or not 0.0 <= float(x) <= 1.0:
                raise ConfigParseError(
                    f"config field 'epsilon' entries must lie in [0, 1], got {x!r}"
                )
        out["epsilon"] = tuple(float(x) for x in eps)
    if "tolerances" in data:
        tols = data["tolerances"]
        if not isinstance(tols, dict):
            raise ConfigParseError("config field 'tolerances' must be a mapping")
        for key, value in tols.items():
            if key not in _TOLERANCE_KEYS:
                raise ConfigParseError(f"unknown tolerance {key!r}")
            if not isinstance(value, (int, float)) or value < 0:
                raise ConfigParseError(f"tolerance {key!r} must be a nonnegative number")
        out["tolerances"] = {k: float(v) for k, v in tols.items()}
    if "output" in data:
        if data["output"] is not None and not isinstance(data["output"], str):
            raise ConfigParseError("config field 'output' must be a path string")
        out["output"] = data["output"]
    if "format" in data:
        if data["format"] not in ("csv", "structured"):
            raise ConfigParseError("config field 'format' must be 'csv' or 'structured'")
        out["format"] = data["format"]
    return RunConfig(**out)


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def render_csv(rows: list[ReportRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["scenario", "assertion_id", "paper_anchor", "measured", "expected", "slack", "pass"])
    for r in rows:
        writer.writerow(
            [r.scenario, r.assertion_id, r.paper_anchor,
             _fmt(r.measured), _fmt(r.expected), _fmt(r.slack),
             "true" if r.passed else "false"]
        )
    return buf.getvalue()


def render_structured(rows: list[ReportRow]) -> str:
    payload = [
        {
            "scenario": r.scenario,
            "assertion_id": r.assertion_id,
            "paper_anchor": r.paper_anchor,
            "measured": float(_fmt(r.measured)),
            "expected": float(_fmt(r.expected)),
            "slack": float(_fmt(r.slack)),
            "pass": r.passed,
        }
        for r in rows
    ]
    return json.dumps({"rows": payload}, indent=2, sort_keys=True) + "\n"


def _rows_from_result(result: sc.ScenarioResult, scenario: str | None = None) -> list[ReportRow]:
    name = scenario if scenario is not None else result.name
    return [
        ReportRow(name, a.assertion_id, a.anchor, a.measured, a.expected, a.slack, a.passed)
        for a in result.assertions
    ]


def _max_gap(a, b) -> float:
    return float(np.abs(a - b).max())


# ---------------------------------------------------------------------------
# randomized property suites
# ---------------------------------------------------------------------------

def map_algebra_suite(
    dims: DimsSpec, samples: int, seed: int, tol: ToleranceConfig = DEFAULT_TOLERANCES
) -> list[ReportRow]:
    """Per sample: idempotence, absorption, composition, iteration,
    outcome averaging and the operator-sum form, each as a max-deviation row."""
    rng = np.random.default_rng(seed)
    rows = []
    name = "map_algebra_suite"

    def add(law: str, index: int, gap: float):
        rows.append(
            ReportRow(name, f"{law}[{index:05d}]", law.replace("_", "-"),
                      gap, 0.0, tol.tol_identity - gap, gap <= tol.tol_identity)
        )

    for i in range(samples):
        target = int(rng.integers(len(dims)))
        obs = random_observable(dims[target], target, rng)
        rho = random_state(dims, rng, rank=int(rng.integers(1, dims.total + 1)), tol=tol)
        eps = float(rng.uniform())
        delta = float(rng.uniform())

        dephased = apply_dephasing(obs, rho, tol)
        add("dephasing_idempotent", i, _max_gap(apply_dephasing(obs, dephased, tol).matrix, dephased.matrix))

        m = MonitoringMap(obs, eps)
        monitored = apply_monitoring(m, rho, tol)
        absorb = max(
            _max_gap(apply_dephasing(obs, monitored, tol).matrix, dephased.matrix),
            _max_gap(apply_monitoring(m, dephased, tol).matrix, dephased.matrix),
        )
        add("monitoring_absorbed_by_dephasing", i, absorb)

        probs = [outcome_probability(obs, a, rho) for a in range(obs.dim)]
        outcome = int(np.argmax(probs))
        nested = apply_weak_collapse(
            RevealedMeasurement(obs, outcome, eps),
            apply_weak_collapse(RevealedMeasurement(obs, outcome, delta), rho, tol),
            tol,
        )
        merged = apply_weak_collapse(
            RevealedMeasurement(obs, outcome, compose_weak_collapses(eps, delta)), rho, tol
        )
        add("collapse_composition", i, _max_gap(nested.matrix, merged.matrix))

        repeated = rho
        for _ in range(3):
            repeated = apply_monitoring(m, repeated, tol)
        add(
            "monitoring_iteration",
            i,
            _max_gap(repeated.matrix, apply_monitoring(iterate_monitoring(m, 3), rho, tol).matrix),
        )

        add(
            "unrevealed_average_is_monitoring",
            i,
            _max_gap(unrevealed_average(obs, eps, rho, tol).matrix, monitored.matrix),
        )

        ops = monitoring_kraus(m)
        completeness = _max_gap(
            sum(k.conj().T @ k for k in ops), np.eye(obs.dim, dtype=complex)
        )
        lifted = [embed_operator(k, rho.dims, target) for k in ops]
        channel = sum(k @ rho.matrix @ k.conj().T for k in lifted)
        add("kraus_operator_sum", i, max(completeness, _max_gap(channel, monitored.matrix)))
    return rows


def reality_bounds_suite(
    dims: DimsSpec, samples: int, seed: int, tol: ToleranceConfig = DEFAULT_TOLERANCES
) -> list[ReportRow]:
    """Two inequality rows per sample: the concavity lower bound and the
    entropy-continuity upper bound on the reality change."""
    rng = np.random.default_rng(seed)
    rows = []
    name = "reality_bounds_suite"
    for i in range(samples):
        target = int(rng.integers(len(dims)))
        obs = random_observable(dims[target], target, rng)
        rho = random_state(dims, rng, rank=int(rng.integers(1, dims.total + 1)), tol=tol)
        eps = float(rng.uniform())
        report = reality_change(obs, eps, rho, tol)
        lower = sc.lower_bound_check(
            f"reality_gain_lower[{i:05d}]", "concavity-lower-bound",
            report.delta_R, report.lower_bound, tol.tol_ineq_slack,
        )
        upper = sc.upper_bound_check(
            f"reality_gain_upper[{i:05d}]", "entropy-continuity-upper-bound",
            report.delta_R, report.fannes_bound, tol.tol_ineq_slack,
        )
        for a in (lower, upper):
            rows.append(ReportRow(name, a.assertion_id, a.anchor, a.measured, a.expected, a.slack, a.passed))
    return rows


def monotonicity_suite(
    dims: DimsSpec, samples: int, seed: int, tol: ToleranceConfig = DEFAULT_TOLERANCES
) -> list[ReportRow]:
    """Irreality of a fixed-subsystem observable never grows when any
    subsystem is monitored."""
    rng = np.random.default_rng(seed)
    rows = []
    name = "monotonicity_suite"
    for i in range(samples):
        obs_a = random_observable(dims[0], 0, rng)
        target = int(rng.integers(len(dims)))
        obs_o = random_observable(dims[target], target, rng)
        rho = random_state(dims, rng, rank=int(rng.integers(1, dims.total + 1)), tol=tol)
        eps = float(rng.uniform())
        before, after = monotonicity_check(obs_a, obs_o, eps, rho, tol)
        a = sc.lower_bound_check(
            f"irreality_monotone[{i:05d}]", "monitoring-never-raises-irreality",
            before, after, tol.tol_ineq_slack,
        )
        rows.append(ReportRow(name, a.assertion_id, a.anchor, a.measured, a.expected, a.slack, a.passed))
    return rows


def ssa_suite(
    dims: DimsSpec, samples: int, seed: int, tol: ToleranceConfig = DEFAULT_TOLERANCES
) -> list[ReportRow]:
    """Dilated two-monitoring experiment: strong subadditivity plus the
    construction identities, per random input state."""
    rng = np.random.default_rng(seed)
    rows = []
    name = "ssa_suite"
    for i in range(samples):
        target = int(rng.integers(len(dims)))
        obs_a = random_observable(dims[target], target, rng)
        obs_ap = random_observable(dims[target], target, rng)
        rho = random_state(dims, rng, rank=int(rng.integers(1, dims.total + 1)), tol=tol)
        eps = float(rng.uniform())
        delta = float(rng.uniform())
        report = tripartite_ssa_experiment(obs_a, eps, obs_ap, delta, rho, tol)
        checks = (
            sc.lower_bound_check(
                f"ssa_slack[{i:05d}]", "strong-subadditivity",
                report.ssa_slack, 0.0, tol.tol_ineq_slack,
            ),
            sc.identity_check(
                f"ssa_joint_entropy[{i:05d}]", "unitary-entropy-conservation",
                report.joint_entropy_gap, 0.0, tol.tol_identity,
            ),
            sc.identity_check(
                f"ssa_reduced_state[{i:05d}]", "composed-monitoring-reduction",
                report.reduced_state_gap, 0.0, tol.tol_identity,
            ),
            sc.identity_check(
                f"ssa_sx_entropy[{i:05d}]", "first-monitoring-entropy",
                report.sx_entropy_gap, 0.0, tol.tol_identity,
            ),
            sc.lower_bound_check(
                f"ssa_reality_gain[{i:05d}]", "incompatible-reality-gain",
                report.delta_R_incompatible, 0.0, tol.tol_ineq_slack,
            ),
        )
        for a in checks:
            rows.append(ReportRow(name, a.assertion_id, a.anchor, a.measured, a.expected, a.slack, a.passed))
    return rows


def complementarity_suite(
    dims: DimsSpec, samples: int, seed: int, tol: ToleranceConfig = DEFAULT_TOLERANCES
) -> list[ReportRow]:
    """Ledger zero-sums on mixed inputs and the pure-input identity between
    reality gain and entanglement."""
    rng = np.random.default_rng(seed)
    rows = []
    name = "complementarity_suite"
    for i in range(samples):
        target = int(rng.integers(len(dims)))
        obs = random_observable(dims[target], target, rng)
        eps = float(rng.uniform())
        mixed = random_state(dims, rng, rank=int(rng.integers(2, dims.total + 1)), tol=tol)
        ledger = complementarity_ledger(MonitoringMap(obs, eps), mixed, tol)
        checks = [
            sc.identity_check(
                f"ledger_zero_sum_information[{i:05d}]", "information-irreality-exchange",
                ledger.delta_mutual_SX + ledger.delta_I_X + ledger.delta_irreality_A,
                0.0, tol.tol_identity,
            ),
            sc.identity_check(
                f"ledger_zero_sum_reality[{i:05d}]", "information-reality-exchange",
                ledger.delta_I_S + ledger.delta_R_A, 0.0, tol.tol_identity,
            ),
        ]
        pure = random_state(dims, rng, rank=1, tol=tol)
        pure_ledger = complementarity_ledger(MonitoringMap(obs, eps), pure, tol)
        checks.append(
            sc.identity_check(
                f"pure_reality_equals_entanglement[{i:05d}]", "reality-gain-is-entanglement",
                pure_ledger.delta_R_A, pure_ledger.entanglement_E, tol.tol_identity,
            )
        )
        for a in checks:
            rows.append(ReportRow(name, a.assertion_id, a.anchor, a.measured, a.expected, a.slack, a.passed))
    return rows


def ledger_suite(
    dims: DimsSpec, samples: int, seed: int, tol: ToleranceConfig = DEFAULT_TOLERANCES
) -> list[ReportRow]:
    """Information-ledger identities and the irreality decomposition."""
    if len(dims) < 2:
        raise ConfigParseError("ledger_suite needs at least two subsystems in 'dims'")
    rng = np.random.default_rng(seed)
    rows = []
    name = "ledger_suite"
    for i in range(samples):
        cut = int(rng.integers(1, len(dims)))
        split = (tuple(range(cut)), tuple(range(cut, len(dims))))
        target = int(rng.integers(cut))
        obs = random_observable(dims[target], target, rng)
        rho = random_state(dims, rng, rank=int(rng.integers(1, dims.total + 1)), tol=tol)
        ledger = information_ledger(rho, split, tol)
        breakdown = irreality_decomposition(obs, rho, split, tol)
        checks = (
            sc.identity_check(
                f"information_split[{i:05d}]", "local-plus-shared-information",
                ledger.total_I, ledger.local_I[0] + ledger.local_I[1] + ledger.mutual_I,
                tol.tol_identity,
            ),
            sc.identity_check(
                f"information_conditional[{i:05d}]", "marginal-plus-conditional-information",
                ledger.total_I, ledger.local_I[1] + ledger.conditional_I,
                tol.tol_identity,
            ),
            sc.identity_check(
                f"irreality_split[{i:05d}]", "local-plus-discord-irreality",
                breakdown.irreality, breakdown.local_irreality + breakdown.discord_like,
                tol.tol_identity,
            ),
        )
        for a in checks:
            rows.append(ReportRow(name, a.assertion_id, a.anchor, a.measured, a.expected, a.slack, a.passed))
    return rows


# ---------------------------------------------------------------------------
# epsilon sweep
# ---------------------------------------------------------------------------

def sweep_epsilon(config: RunConfig, tol: ToleranceConfig = DEFAULT_TOLERANCES) -> list[ReportRow]:
    """Reality change of a balanced qubit under monitoring, per intensity.

    For this preparation the reality gain has the closed form H(eps/2), the
    dephasing distance is 1/2, and the gain saturates the concavity bound
    at full intensity; the column is nondecreasing in the intensity.
    """
    name = "reality_sweep"
    dims = DimsSpec((2,))
    plus = validate_state(np.full((2, 2), 0.5, dtype=complex), dims, tol)
    obs = computational_basis(2, 0)
    grid = sorted(config.epsilon)
    rows = []
    previous = None
    for i, eps in enumerate(grid):
        report = reality_change(obs, eps, plus, tol)
        ledger = complementarity_ledger(MonitoringMap(obs, eps), plus, tol)
        checks = [
            sc.identity_check(
                f"delta_r_closed_form[{i:02d}]", "balanced-qubit-closed-form",
                report.delta_R, binary_entropy(eps / 2.0, tol), tol.tol_identity,
            ),
            sc.lower_bound_check(
                f"delta_r_lower[{i:02d}]", "concavity-lower-bound",
                report.delta_R, report.lower_bound, tol.tol_ineq_slack,
            ),
            sc.upper_bound_check(
                f"delta_r_fannes[{i:02d}]", "entropy-continuity-upper-bound",
                report.delta_R, report.fannes_bound, tol.tol_ineq_slack,
            ),
            sc.identity_check(
                f"ledger_zero_sum_information[{i:02d}]", "information-irreality-exchange",
                ledger.delta_mutual_SX + ledger.delta_I_X + ledger.delta_irreality_A,
                0.0, tol.tol_identity,
            ),
            sc.identity_check(
                f"ledger_zero_sum_reality[{i:02d}]", "information-reality-exchange",
                ledger.delta_I_S + ledger.delta_R_A, 0.0, tol.tol_identity,
            ),
        ]
        if previous is not None:
            checks.append(
                sc.lower_bound_check(
                    f"delta_r_monotone[{i:02d}]", "gain-monotone-in-intensity",
                    report.delta_R, previous, tol.tol_ineq_slack,
                )
            )
        previous = report.delta_R
        for a in checks:
            rows.append(ReportRow(name, a.assertion_id, a.anchor, a.measured, a.expected, a.slack, a.passed))
    return rows


# ---------------------------------------------------------------------------
# named deterministic scenarios
# ---------------------------------------------------------------------------

def _run_two_qubit_flow(config: RunConfig, tol: ToleranceConfig) -> list[ReportRow]:
    return _rows_from_result(sc.two_qubit_information_flow(tol))


def _run_scattering_particle_like(config: RunConfig, tol: ToleranceConfig) -> list[ReportRow]:
    params = sc.ScatteringParams(xi=1.0, velocity_ratio=10.0)
    o_part, o_mol = sc.scattering_overlaps(params)
    _, entanglement, local_irr = sc.scattering_state(params, tol)
    expected_overlap = math.exp(-12.5)
    name = "scattering_particle_like"
    checks = (
        sc.identity_check("overlap_particle", "packet-overlap-closed-form",
                          o_part, expected_overlap, 1e-9 * expected_overlap),
        sc.identity_check("overlap_molecule", "packet-overlap-closed-form",
                          o_mol, expected_overlap, 1e-9 * expected_overlap),
        sc.identity_check("entanglement_maximal", "orthogonal-branch-entanglement",
                          entanglement, math.log(2.0), 1e-3),
        sc.identity_check("local_irreality_absent", "mixture-without-coherence",
                          local_irr, 0.0, 1e-3),
    )
    return [ReportRow(name, a.assertion_id, a.anchor, a.measured, a.expected, a.slack, a.passed) for a in checks]


def _run_scattering_superposition_like(config: RunConfig, tol: ToleranceConfig) -> list[ReportRow]:
    params = sc.ScatteringParams(xi=0.01, velocity_ratio=10.0)
    _, entanglement, local_irr = sc.scattering_state(params, tol)
    name = "scattering_superposition_like"
    checks = (
        sc.upper_bound_check("entanglement_small", "frustrated-conservation-no-entanglement",
                             entanglement, 0.01, tol.tol_ineq_slack),
        sc.lower_bound_check("local_irreality_large", "local-superposition-created",
                             local_irr, 0.67, tol.tol_ineq_slack),
    )
    return [ReportRow(name, a.assertion_id, a.anchor, a.measured, a.expected, a.slack, a.passed) for a in checks]


def _run_detector_array(config: RunConfig, tol: ToleranceConfig) -> list[ReportRow]:
    spec = sc.DetectorArraySpec()
    rows = _rows_from_result(sc.apparatus_reality_check(spec, tol), "detector_array")
    rows += _rows_from_result(sc.measurement_entropy_bookkeeping(spec, tol), "detector_array")
    return rows


def _run_irreality_generation(config: RunConfig, tol: ToleranceConfig) -> list[ReportRow]:
    dims = DimsSpec((2,))
    maximally_mixed = validate_state(np.eye(2, dtype=complex) / 2.0, dims, tol)
    obs_a = fourier_basis(2, 0)
    obs_ap = computational_basis(2, 0)
    value, bound = generated_irreality(obs_a, obs_ap, 0, 0.5, maximally_mixed, tol)
    monitored = apply_monitoring(MonitoringMap(obs_a, 0.5), maximally_mixed, tol)
    unrevealed = irreality(obs_ap, monitored, tol)
    expected_value = math.log(2.0) - binary_entropy(0.25, tol)
    name = "irreality_generation_qubit"
    checks = (
        sc.identity_check("revealed_generates_irreality", "revealed-measurement-creates-irreality",
                          value, expected_value, tol.tol_identity),
        sc.identity_check("generation_bound_value", "generation-upper-bound",
                          bound, binary_entropy(0.25, tol), tol.tol_identity),
        sc.upper_bound_check("generated_below_bound", "generation-upper-bound",
                             value, bound, tol.tol_ineq_slack),
        sc.identity_check("unrevealed_generates_nothing", "monitoring-preserves-unbiased-reality",
                          unrevealed, 0.0, 1e-12),
    )
    return [ReportRow(name, a.assertion_id, a.anchor, a.measured, a.expected, a.slack, a.passed) for a in checks]


def _suite_runner(fn):
    def runner(config: RunConfig, tol: ToleranceConfig) -> list[ReportRow]:
        return fn(DimsSpec(config.dims), config.samples, config.seed, tol)

    return runner


REGISTRY = {
    "two_qubit_information_flow": _run_two_qubit_flow,
    "scattering_particle_like": _run_scattering_particle_like,
    "scattering_superposition_like": _run_scattering_superposition_like,
    "detector_array": _run_detector_array,
    "irreality_generation_qubit": _run_irreality_generation,
    "reality_sweep": sweep_epsilon,
    "map_algebra_suite": _suite_runner(map_algebra_suite),
    "reality_bounds_suite": _suite_runner(reality_bounds_suite),
    "monotonicity_suite": _suite_runner(monotonicity_suite),
    "ssa_suite": _suite_runner(ssa_suite),
    "complementarity_suite": _suite_runner(complementarity_suite),
    "ledger_suite": _suite_runner(ledger_suite),
}


def run(config: RunConfig) -> int:
    """Execute one scenario or suite and write the report; 0 iff all pass."""
    if config.scenario not in REGISTRY:
        known = ", ".join(sorted(REGISTRY))
        raise UnknownScenario(f"unknown scenario {config.scenario!r}; known: {known}")
    tol = DEFAULT_TOLERANCES.with_overrides(**config.tolerances)
    rows = REGISTRY[config.scenario](config, tol)
    rows.sort(key=lambda r: (r.scenario, r.assertion_id))
    text = render_csv(rows) if config.format == "csv" else render_structured(rows)
    if config.output:
        with open(config.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if all(r.passed for r in rows) else 1


def _parse_tolerance_flags(entries) -> dict:
    out = {}
    for entry in entries or ():
        key, sep, value = entry.partition("=")
        if not sep:
            raise ConfigParseError(f"--tolerance expects KEY=VALUE, got {entry!r}")
        try:
            out[key] = float(value)
        except ValueError as exc:
            raise ConfigParseError(f"tolerance {key!r} has non-numeric value {value!r}") from exc
    return out


def _load_config_file(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigParseError(f"cannot read config {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigParseError(
            f"config {path!r} is not valid JSON: {exc.msg} at line {exc.lineno} column {exc.colno}"
        ) from exc
    if not isinstance(data, dict):
        raise ConfigParseError(f"config {path!r} must hold a flat JSON object")
    return data


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="qreality",
        description="Run measurement-reality scenarios and property suites.",
    )
    parser.add_argument("--config", help="JSON config file with RunConfig fields")
    parser.add_argument("--scenario", help="scenario or suite name")
    parser.add_argument("--seed", type=int, help="root seed for randomized suites")
    parser.add_argument("--samples", type=int, help="sample count for randomized suites")
    parser.add_argument("--epsilon", help="comma-separated intensities in [0, 1]")
    parser.add_argument("--tolerance", action="append", metavar="KEY=VAL",
                        help="tolerance override, repeatable")
    parser.add_argument("--output", help="report file path (default: stdout)")
    parser.add_argument("--format", choices=("csv", "structured"), help="report format")
    args = parser.parse_args(argv)

    try:
        data = _load_config_file(args.config) if args.config else {}
        if args.scenario is not None:
            data["scenario"] = args.scenario
        if args.seed is not None:
            data["seed"] = args.seed
        if args.samples is not None:
            data["samples"] = args.samples
        if args.epsilon is not None:
            try:
                data["epsilon"] = [float(x) for x in args.epsilon.split(",") if x.strip()]
            except ValueError as exc:
                raise ConfigParseError(f"--epsilon expects comma-separated numbers: {exc}") from exc
        if args.tolerance:
            merged = dict(data.get("tolerances", {}))
            merged.update(_parse_tolerance_flags(args.tolerance))
            data["tolerances"] = merged
        if args.output is not None:
            data["output"] = args.output
        if args.format is not None:
            data["format"] = args.format
        config = build_config(data)
        return run(config)
    except (ConfigParseError, UnknownScenario) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
