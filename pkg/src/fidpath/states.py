"""Density matrices, pure states, sampling ensembles, and purifications.

States are immutable value types wrapping read-only ndarrays.  Sampling is
fully deterministic: every draw takes an explicit 64-bit seed and derives
per-item generators through ``rng_from(seed, *path)``, so identical
specifications reproduce bit-identical output regardless of how work is
split across workers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DimensionMismatch, InvalidSpec, InvalidState, LambdaOutOfRange

#: Trace deviation allowed at construction.
TRACE_TOL = 1e-8

#: Norm deviation allowed for pure state vectors.
NORM_TOL = 1e-10

ENSEMBLES = ("haar_pure", "ginibre_full_rank", "ginibre_rank_k", "pure_pair_with_overlap")


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.complex128)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, positive semi-definite, unit-trace operator.

    Direct construction runs full validation; see ``density_from_matrix``.
    """

    mat: np.ndarray

    def __post_init__(self):
        validated = density_from_matrix(self.mat)
        object.__setattr__(self, "mat", validated.mat)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def __eq__(self, other) -> bool:
        return isinstance(other, DensityMatrix) and np.array_equal(self.mat, other.mat)


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized complex vector."""

    vec: np.ndarray

    def __eq__(self, other) -> bool:
        return isinstance(other, PureState) and np.array_equal(self.vec, other.vec)

    def __post_init__(self):
        vec = np.ascontiguousarray(self.vec, dtype=np.complex128)
        if vec.ndim != 1 or vec.size == 0:
            raise InvalidState(f"pure state must be a nonempty vector, got shape {vec.shape}")
        if not np.all(np.isfinite(vec)):
            raise InvalidState("pure state has non-finite entries")
        norm = float(np.linalg.norm(vec))
        if abs(norm - 1.0) > NORM_TOL:
            raise InvalidState(f"norm {norm!r} deviates from 1 beyond {NORM_TOL}")
        object.__setattr__(self, "vec", _freeze(vec))

    @property
    def dim(self) -> int:
        return self.vec.shape[0]

    def density(self) -> DensityMatrix:
        """Rank-1 projector |psi><psi|."""
        return _trusted_density(np.outer(self.vec, self.vec.conj()))

    def overlap(self, other: "PureState") -> float:
        """|<self|other>|."""
        return float(abs(np.vdot(self.vec, other.vec)))


def _trusted_density(mat: np.ndarray) -> DensityMatrix:
    # Internal path for matrices Hermitian/PSD/unit-trace by construction.
    dm = DensityMatrix.__new__(DensityMatrix)
    object.__setattr__(dm, "mat", _freeze(mat))
    return dm


def density_from_matrix(
    m: np.ndarray,
    herm_tol: float = linalg.HERM_TOL,
    psd_floor: float = linalg.PSD_FLOOR,
    trace_tol: float = TRACE_TOL,
) -> DensityMatrix:
    """Validate a matrix as a density operator.

    Checks squareness, finiteness, Hermiticity (within ``herm_tol``),
    positivity (eigenvalues above ``psd_floor``) and unit trace (within
    ``trace_tol``).  The returned state is symmetrized, has negative rounding
    noise clamped to zero, and is renormalized to trace exactly 1.
    Violations raise ``InvalidState`` naming the failed invariant.
    """
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise InvalidState(f"square matrix required, got shape {m.shape}")
    m = np.ascontiguousarray(m, dtype=np.complex128)
    if not np.all(np.isfinite(m)):
        raise InvalidState("non-finite entries")
    gap = linalg.asymmetry(m)
    if gap > herm_tol:
        raise InvalidState(f"hermiticity: asymmetry {gap:.3e} exceeds {herm_tol:.3e}")
    m = linalg.hermitize(m)
    w, v = np.linalg.eigh(m)
    if float(w[0]) < psd_floor:
        raise InvalidState(f"positivity: eigenvalue {float(w[0]):.3e} below {psd_floor:.3e}")
    tr = float(np.sum(w))
    if abs(tr - 1.0) > trace_tol:
        raise InvalidState(f"trace: {tr!r} deviates from 1 beyond {trace_tol}")
    w = np.clip(w, 0.0, None)
    w /= np.sum(w)
    return _trusted_density(linalg.hermitize((v * w) @ v.conj().T))


def mix(rho: DensityMatrix, sigma: DensityMatrix, lam: float) -> DensityMatrix:
    """Affine mixture lam*rho + (1-lam)*sigma."""
    if rho.dim != sigma.dim:
        raise DimensionMismatch(f"dims {rho.dim} and {sigma.dim} differ")
    if not 0.0 <= lam <= 1.0:
        raise LambdaOutOfRange(f"lambda {lam!r} outside [0, 1]")
    return _trusted_density(lam * rho.mat + (1.0 - lam) * sigma.mat)


def _pin_phase(vec: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    # Make the first non-negligible component real nonnegative.
    for x in vec:
        if abs(x) > tol:
            return vec * (x.conjugate() / abs(x))
    return vec


def purify(rho: DensityMatrix) -> PureState:
    """Canonical purification on the doubled space.

    The vector is built from the columns of sqrt(rho) against a fixed
    reference basis on the second factor, so the partial trace over that
    factor reproduces ``rho``.  The global phase is pinned (first
    non-negligible component real nonnegative).
    """
    s = linalg.psd_sqrt(rho.mat)
    vec = s.reshape(rho.dim * rho.dim)
    vec = _pin_phase(vec / np.linalg.norm(vec))
    return PureState(vec)


def partial_trace_second(psi: PureState, dim: int) -> np.ndarray:
    """Trace out the second factor of a state on a dim*dim product space."""
    if psi.dim != dim * dim:
        raise DimensionMismatch(f"vector of length {psi.dim} is not on a {dim}x{dim} product space")
    c = psi.vec.reshape(dim, dim)
    return c @ c.conj().T


def optimal_purifications(rho: DensityMatrix, sigma: DensityMatrix) -> tuple[PureState, PureState]:
    """Purifications whose overlap attains the fidelity.

    ``rho`` is purified canonically; the purification of ``sigma`` is rotated
    on the second factor by the unitary factor of the polar decomposition of
    sqrt(sigma) @ sqrt(rho) (obtained from its SVD, which fixes the null-space
    completion deterministically).  The overlap |<Psi|Phi>| then equals
    F(rho, sigma) up to eigensolver accuracy.
    """
    if rho.dim != sigma.dim:
        raise DimensionMismatch(f"dims {rho.dim} and {sigma.dim} differ")
    s_rho = linalg.psd_sqrt(rho.mat)
    s_sigma = linalg.psd_sqrt(sigma.mat)
    p, _, qh = np.linalg.svd(s_sigma @ s_rho)
    align = p @ qh
    psi = _pin_phase(s_rho.reshape(-1))
    phi = _pin_phase((s_sigma @ align).reshape(-1))
    psi = psi / np.linalg.norm(psi)
    phi = phi / np.linalg.norm(phi)
    return PureState(psi), PureState(phi)


@dataclass(frozen=True)
class SampleSpec:
    """Deterministic sampling request.

    ``ensemble`` is one of ``haar_pure`` (one Haar-random pure state),
    ``ginibre_full_rank`` / ``ginibre_rank_k`` (random density matrix
    G G†/tr(G G†) with G a d×d or d×k complex standard-normal matrix), or
    ``pure_pair_with_overlap`` (pair of pure states with overlap pinned to
    ``r``, in a Haar-random basis).
    """

    dim: int
    ensemble: str
    seed: int
    k: int | None = None
    r: float | None = None

    def __post_init__(self):
        if self.dim < 1:
            raise InvalidSpec(f"dim must be positive, got {self.dim}")
        if self.ensemble not in ENSEMBLES:
            raise InvalidSpec(f"unknown ensemble {self.ensemble!r}; expected one of {ENSEMBLES}")
        if self.ensemble == "ginibre_rank_k":
            if self.k is None or not 1 <= self.k <= self.dim:
                raise InvalidSpec(f"rank k={self.k!r} outside [1, {self.dim}]")
        if self.ensemble == "pure_pair_with_overlap":
            if self.dim < 2:
                raise InvalidSpec("overlap pairs need dim >= 2")
            if self.r is None or not 0.0 <= self.r <= 1.0:
                raise InvalidSpec(f"overlap r={self.r!r} outside [0, 1]")


def rng_from(seed: int, *path: int) -> np.random.Generator:
    """Derived generator for a sampling stream.

    Stream splitting rule: the generator for item ``i`` (and any deeper path)
    is seeded from the tuple ``(seed, *path)`` via ``numpy.random.SeedSequence``,
    so streams are independent and reproducible for any work partition.
    """
    return np.random.default_rng(np.random.SeedSequence((int(seed),) + tuple(int(p) for p in path)))


def complex_normal(rng: np.random.Generator, shape) -> np.ndarray:
    """I.i.d. complex entries with independent N(0,1) real and imaginary parts."""
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def haar_state(dim: int, rng: np.random.Generator) -> PureState:
    v = complex_normal(rng, dim)
    return PureState(v / np.linalg.norm(v))


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    # QR of a Ginibre matrix with the R-diagonal phase fixed gives Haar measure.
    q, r = np.linalg.qr(complex_normal(rng, (dim, dim)))
    diag = np.diagonal(r).copy()
    diag /= np.abs(diag)
    return q * diag


def ginibre_density(dim: int, rank: int, rng: np.random.Generator) -> DensityMatrix:
    g = complex_normal(rng, (dim, rank))
    m = g @ g.conj().T
    return _trusted_density(m / np.trace(m).real)


def overlap_pair(dim: int, r: float, rng: np.random.Generator) -> tuple[PureState, PureState]:
    psi = np.zeros(dim, dtype=np.complex128)
    phi = np.zeros(dim, dtype=np.complex128)
    psi[0] = 1.0
    phi[0] = r
    phi[1] = np.sqrt(max(0.0, 1.0 - r * r))
    u = haar_unitary(dim, rng)
    return PureState(u @ psi), PureState(u @ phi)


def sample(spec: SampleSpec):
    """Draw from the ensemble named by ``spec``; deterministic in ``spec.seed``.

    Returns a ``DensityMatrix`` for the Ginibre ensembles, a ``PureState``
    for ``haar_pure``, and a ``(PureState, PureState)`` pair for
    ``pure_pair_with_overlap``.
    """
    rng = rng_from(spec.seed)
    if spec.ensemble == "haar_pure":
        return haar_state(spec.dim, rng)
    if spec.ensemble == "ginibre_full_rank":
        return ginibre_density(spec.dim, spec.dim, rng)
    if spec.ensemble == "ginibre_rank_k":
        return ginibre_density(spec.dim, spec.k, rng)
    return overlap_pair(spec.dim, spec.r, rng)
