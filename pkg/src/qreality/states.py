"""Dense linear algebra over composite finite-dimensional quantum systems.

States are complex numpy matrices tagged with an ordered tuple of subsystem
dimensions.  Every operation is a pure function over immutable values;
randomized constructors take an explicit seed or generator, so nothing here
keeps global mutable state.

Entropies are in nats (natural logarithm) throughout.
"""

from dataclasses import dataclass, fields, replace

import numpy as np

from .errors import (
    DimensionMismatch,
    DimensionOverflow,
    InvalidRank,
    InvalidSubsystemIndex,
    NotADistribution,
    NotHermitian,
    NotPositive,
    TraceNotOne,
)

MAX_TOTAL_DIMENSION = 4096


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical tolerances for validation, identity checks and inequalities.

    ``eig_zero_floor`` is the eigenvalue cutoff below which ``x ln x`` is
    treated as zero when computing entropies.
    """

    tol_herm: float = 1e-10
    tol_trace: float = 1e-10
    tol_psd: float = 1e-9
    tol_norm: float = 1e-10
    tol_ortho: float = 1e-10
    tol_identity: float = 1e-10
    tol_ineq_slack: float = 1e-9
    eig_zero_floor: float = 1e-12

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) < 0:
                raise ValueError(f"tolerance {f.name} must be nonnegative")
        if self.eig_zero_floor > self.tol_psd:
            raise ValueError("eig_zero_floor must not exceed tol_psd")

    def with_overrides(self, **kwargs) -> "ToleranceConfig":
        return replace(self, **kwargs)


DEFAULT_TOLERANCES = ToleranceConfig()


@dataclass(frozen=True)
class DimsSpec:
    """Ordered list of subsystem dimensions of a composite Hilbert space."""

    dims: tuple[int, ...]
    max_total: int = MAX_TOTAL_DIMENSION

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "dims", dims)
        if not dims:
            raise ValueError("dims must be nonempty")
        if any(d < 2 for d in dims):
            raise ValueError(f"every subsystem dimension must be >= 2, got {dims}")
        if self.total > self.max_total:
            raise DimensionOverflow(
                f"total dimension {self.total} exceeds maximum {self.max_total}"
            )

    @property
    def total(self) -> int:
        total = 1
        for d in self.dims:
            total *= d
        return total

    def __len__(self) -> int:
        return len(self.dims)

    def __getitem__(self, i: int) -> int:
        return self.dims[i]

    def __iter__(self):
        return iter(self.dims)

    def concat(self, other: "DimsSpec") -> "DimsSpec":
        return DimsSpec(self.dims + other.dims, max(self.max_total, other.max_total))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite matrix on a composite space.

    ``eigenvalues`` carries the ascending spectrum obtained while validating,
    so entropy evaluations never repeat the eigendecomposition.
    """

    matrix: np.ndarray
    dims: DimsSpec
    eigenvalues: np.ndarray

    @property
    def total(self) -> int:
        return self.dims.total


@dataclass(frozen=True, eq=False)
class PureState:
    """Unit vector on a composite space."""

    vector: np.ndarray
    dims: DimsSpec


@dataclass(frozen=True, eq=False)
class ObservableSpec:
    """Nondegenerate observable on one subsystem: an orthonormal eigenbasis
    (column k of ``eigenbasis`` is the k-th eigenvector) plus real eigenvalues."""

    target_index: int
    eigenvalues: np.ndarray
    eigenbasis: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenbasis.shape[0]

    def projector(self, outcome: int) -> np.ndarray:
        v = self.eigenbasis[:, outcome]
        return np.outer(v, v.conj())


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def validate_state(
    m, dims: DimsSpec, tol: ToleranceConfig = DEFAULT_TOLERANCES
) -> DensityMatrix:
    """Check the density-matrix invariants and return the symmetrized state.

    The matrix is replaced by ``(m + m^dag)/2`` after the Hermiticity check,
    which removes antisymmetric round-off before the spectral tests.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] != dims.total:
        raise DimensionMismatch(f"expected a {dims.total}x{dims.total} matrix, got {m.shape}")
    herm_dev = float(np.abs(m - m.conj().T).max())
    if herm_dev > tol.tol_herm:
        raise NotHermitian(herm_dev)
    sym = (m + m.conj().T) / 2.0
    trace_dev = float(abs(sym.trace().real - 1.0))
    if trace_dev > tol.tol_trace:
        raise TraceNotOne(trace_dev)
    eigenvalues = np.linalg.eigvalsh(sym)
    if eigenvalues[0] < -tol.tol_psd:
        raise NotPositive(-float(eigenvalues[0]))
    return DensityMatrix(_readonly(sym), dims, _readonly(eigenvalues))


def validate_pure_state(
    v, dims: DimsSpec, tol: ToleranceConfig = DEFAULT_TOLERANCES
) -> PureState:
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.size != dims.total:
        raise DimensionMismatch(f"expected a vector of length {dims.total}, got {v.size}")
    norm_dev = float(abs(np.linalg.norm(v) - 1.0))
    if norm_dev > tol.tol_norm:
        raise ValueError(f"vector norm differs from 1 by {norm_dev:.3e}")
    return PureState(_readonly(v.copy()), dims)


def pure_to_density(psi: PureState) -> DensityMatrix:
    """Rank-1 projector of a pure state.

    The spectrum of a projector is known exactly, so no eigendecomposition
    is run; this matters for large scenario states.
    """
    v = psi.vector / np.linalg.norm(psi.vector)
    eigenvalues = np.zeros(psi.dims.total)
    eigenvalues[-1] = 1.0
    return DensityMatrix(_readonly(np.outer(v, v.conj())), psi.dims, _readonly(eigenvalues))


def observable(
    eigenbasis,
    eigenvalues=None,
    target_index: int = 0,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> ObservableSpec:
    """Validate an eigenbasis matrix (columns = eigenvectors) into an observable."""
    basis = np.asarray(eigenbasis, dtype=complex)
    if basis.ndim != 2 or basis.shape[0] != basis.shape[1] or basis.shape[0] < 2:
        raise ValueError(f"eigenbasis must be a square matrix of side >= 2, got {basis.shape}")
    d = basis.shape[0]
    gram_dev = float(np.abs(basis.conj().T @ basis - np.eye(d)).max())
    if gram_dev > tol.tol_ortho:
        raise ValueError(f"eigenbasis is not orthonormal: max |G - I| = {gram_dev:.3e}")
    if eigenvalues is None:
        eigenvalues = np.arange(d, dtype=float)
    eigenvalues = np.asarray(eigenvalues)
    if eigenvalues.shape != (d,):
        raise ValueError(f"expected {d} eigenvalues, got shape {eigenvalues.shape}")
    if np.iscomplexobj(eigenvalues):
        if float(np.abs(eigenvalues.imag).max()) > tol.tol_ortho:
            raise ValueError("eigenvalues must be real")
        eigenvalues = eigenvalues.real
    if target_index < 0:
        raise ValueError("target_index must be nonnegative")
    return ObservableSpec(target_index, _readonly(eigenvalues.astype(float)), _readonly(basis.copy()))


def computational_basis(d: int, target_index: int = 0) -> ObservableSpec:
    """Observable whose eigenbasis is the standard basis, eigenvalues 0..d-1."""
    return observable(np.eye(d, dtype=complex), np.arange(d, dtype=float), target_index)


def fourier_basis(d: int, target_index: int = 0) -> ObservableSpec:
    """Observable with eigenvectors v_k[j] = exp(2 pi i jk/d)/sqrt(d).

    Mutually unbiased with respect to the standard basis: every squared
    overlap equals 1/d.
    """
    if d < 2:
        raise ValueError("dimension must be >= 2")
    j = np.arange(d)
    basis = np.exp(2j * np.pi * np.outer(j, j) / d) / np.sqrt(d)
    return observable(basis, np.arange(d, dtype=float), target_index)


def tensor(
    a: DensityMatrix, b: DensityMatrix, tol: ToleranceConfig = DEFAULT_TOLERANCES
) -> DensityMatrix:
    """Kronecker product state; dims are concatenated.

    The spectrum of a Kronecker product is the product spectrum, so the
    output carries exact eigenvalues without a fresh decomposition.
    """
    dims = a.dims.concat(b.dims)
    matrix = np.kron(a.matrix, b.matrix)
    eigenvalues = np.sort(np.outer(a.eigenvalues, b.eigenvalues).ravel())
    return DensityMatrix(_readonly(matrix), dims, _readonly(eigenvalues))


def partial_trace(
    rho: DensityMatrix, keep, tol: ToleranceConfig = DEFAULT_TOLERANCES
) -> DensityMatrix:
    """Reduced state over the kept subsystems, in their original order."""
    n = len(rho.dims)
    keep = tuple(int(k) for k in keep)
    if not keep:
        raise InvalidSubsystemIndex("keep set must be nonempty")
    if len(set(keep)) != len(keep):
        raise InvalidSubsystemIndex(f"repeated subsystem index in {keep}")
    if any(k < 0 or k >= n for k in keep):
        raise InvalidSubsystemIndex(f"subsystem index out of range in {keep}")
    keep = tuple(sorted(keep))
    if keep == tuple(range(n)):
        return rho
    traced = tuple(i for i in range(n) if i not in keep)
    shaped = rho.matrix.reshape(rho.dims.dims + rho.dims.dims)
    order = keep + traced + tuple(n + i for i in keep) + tuple(n + i for i in traced)
    shaped = shaped.transpose(order)
    d_keep = 1
    for k in keep:
        d_keep *= rho.dims[k]
    d_traced = rho.dims.total // d_keep
    shaped = shaped.reshape(d_keep, d_traced, d_keep, d_traced)
    reduced = np.einsum("itjt->ij", shaped)
    return validate_state(reduced, DimsSpec(tuple(rho.dims[k] for k in keep)), tol)


def embed_operator(op: np.ndarray, dims: DimsSpec, target_index: int) -> np.ndarray:
    """Extend an operator on one subsystem by identities on all others."""
    if target_index < 0 or target_index >= len(dims):
        raise DimensionMismatch(f"target index {target_index} out of range for {dims.dims}")
    op = np.asarray(op, dtype=complex)
    if op.shape != (dims[target_index], dims[target_index]):
        raise DimensionMismatch(
            f"operator shape {op.shape} does not match subsystem dimension {dims[target_index]}"
        )
    pre = 1
    for d in dims.dims[:target_index]:
        pre *= d
    post = 1
    for d in dims.dims[target_index + 1 :]:
        post *= d
    return np.kron(np.kron(np.eye(pre, dtype=complex), op), np.eye(post, dtype=complex))


def von_neumann_entropy(
    rho: DensityMatrix, tol: ToleranceConfig = DEFAULT_TOLERANCES
) -> float:
    """S(rho) = -sum(lam ln lam) in nats, over eigenvalues clamped to [0, 1].

    Eigenvalues at or below ``eig_zero_floor`` contribute zero, which keeps
    round-off from injecting NaNs through ln of a negative number.
    """
    lam = np.clip(rho.eigenvalues, 0.0, 1.0)
    lam = lam[lam > tol.eig_zero_floor]
    return max(float(-(lam * np.log(lam)).sum()), 0.0)


def shannon_entropy(p, tol: ToleranceConfig = DEFAULT_TOLERANCES) -> float:
    """H(p) = -sum(p ln p) in nats, with 0 ln 0 = 0."""
    p = np.asarray(p, dtype=float).reshape(-1)
    if p.size == 0:
        raise NotADistribution("empty probability vector")
    if float(p.min()) < -tol.tol_trace:
        raise NotADistribution(f"negative entry {p.min():.3e}")
    sum_dev = float(abs(p.sum() - 1.0))
    if sum_dev > tol.tol_trace:
        raise NotADistribution(f"entries sum to 1 {sum_dev:+.3e}")
    p = np.clip(p, 0.0, 1.0)
    p = p[p > 0.0]
    return max(float(-(p * np.log(p)).sum()), 0.0)


def binary_entropy(t: float, tol: ToleranceConfig = DEFAULT_TOLERANCES) -> float:
    """Shannon entropy of the distribution (t, 1-t)."""
    return shannon_entropy(np.array([t, 1.0 - t]), tol)


def trace_distance(a: DensityMatrix, b: DensityMatrix) -> float:
    """T(a, b) = half the sum of absolute eigenvalues of (a - b); in [0, 1]."""
    if a.dims.dims != b.dims.dims:
        raise DimensionMismatch(f"dims differ: {a.dims.dims} vs {b.dims.dims}")
    diff = a.matrix - b.matrix
    # canonical overall sign, so both argument orders feed the
    # eigendecomposition the same matrix and symmetry holds bitwise
    nonzero = diff.ravel()[diff.ravel() != 0]
    if nonzero.size:
        lead = nonzero[0]
        if lead.real < 0 or (lead.real == 0 and lead.imag < 0):
            diff = -diff
    w = np.linalg.eigvalsh(diff)
    return float(np.abs(w).sum() / 2.0)


def random_unitary(d: int, seed=None) -> np.ndarray:
    """Haar-distributed unitary: QR of a complex Gaussian matrix with the
    R diagonal phases folded back in."""
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases[np.newaxis, :]


def random_pure_state(dims: DimsSpec, seed=None) -> PureState:
    """Haar-uniform unit vector on the composite space."""
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(dims.total) + 1j * rng.standard_normal(dims.total)
    return PureState(_readonly(v / np.linalg.norm(v)), dims)


def random_state(
    dims: DimsSpec, seed=None, rank: int = 1, tol: ToleranceConfig = DEFAULT_TOLERANCES
) -> DensityMatrix:
    """Random state, deterministic under the seed.

    ``rank=1`` gives the projector of a Haar-uniform vector; larger ranks
    trace a Haar-uniform pure state on ``dims (x) [rank]`` over the ancilla,
    which samples full support on the rank-``rank`` mixed states.
    """
    if rank < 1 or rank > dims.total:
        raise InvalidRank(f"rank must be in [1, {dims.total}], got {rank}")
    rng = np.random.default_rng(seed)
    v = rng.standard_normal((dims.total, rank)) + 1j * rng.standard_normal((dims.total, rank))
    v /= np.linalg.norm(v)
    return validate_state(v @ v.conj().T, dims, tol)


def random_observable(d: int, target_index: int = 0, seed=None) -> ObservableSpec:
    """Observable with a Haar-random eigenbasis and eigenvalues 0..d-1."""
    return observable(random_unitary(d, seed), np.arange(d, dtype=float), target_index)
