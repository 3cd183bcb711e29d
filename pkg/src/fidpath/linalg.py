"""Dense complex Hermitian linear algebra.

Everything here is spectral: ``eigh`` is the single primitive and all matrix
functions (square root, inverse square root on the support, trace norm) are
obtained by mapping eigenvalues.  Matrices are plain ``(d, d)`` complex
ndarrays; dimensions are desk-scale (d up to a few hundred), so dense
LAPACK-backed decompositions are the right tool.

All functions are pure and thread-safe.  Tolerances are keyword parameters
with the defaults below.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonHermitian, NotPSD, NumericalFailure

#: Max-entry asymmetry allowed before a matrix is rejected as non-Hermitian.
HERM_TOL = 1e-8

#: Eigenvalues above this floor (but below zero) are treated as rounding noise.
PSD_FLOOR = -1e-9

#: Relative factor for the support cutoff: rank_tol = RANK_TOL_REL * lmax * d.
RANK_TOL_REL = 1e-10


@dataclass(frozen=True)
class HermitianEigen:
    """Eigendecomposition of a Hermitian matrix.

    ``eigenvalues`` are ascending; ``eigenvectors`` holds the corresponding
    eigenvectors as columns, so ``V @ diag(w) @ V.conj().T`` reconstructs the
    input.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def hermitize(a: np.ndarray) -> np.ndarray:
    """Return the Hermitian part (A + A†)/2."""
    return (a + a.conj().T) / 2


def asymmetry(a: np.ndarray) -> float:
    """Max-entry norm of A - A†."""
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def _check_hermitian(a: np.ndarray, herm_tol: float) -> np.ndarray:
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NonHermitian(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NonHermitian("matrix contains non-finite entries")
    gap = asymmetry(a)
    if gap > herm_tol:
        raise NonHermitian(f"asymmetry {gap:.3e} exceeds tolerance {herm_tol:.3e}")
    return a


def eigh(a: np.ndarray, herm_tol: float = HERM_TOL) -> HermitianEigen:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    The input is symmetrized as (A + A†)/2 before decomposition; asymmetry
    beyond ``herm_tol`` (max-entry norm) raises ``NonHermitian``.
    """
    a = _check_hermitian(a, herm_tol)
    try:
        w, v = np.linalg.eigh(hermitize(a))
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK rarely fails
        raise NumericalFailure(f"eigendecomposition did not converge: {exc}") from exc
    return HermitianEigen(eigenvalues=w, eigenvectors=v)


def _spectral_map(eig: HermitianEigen, fw: np.ndarray) -> np.ndarray:
    v = eig.eigenvectors
    return hermitize((v * fw) @ v.conj().T)


def psd_sqrt(a: np.ndarray, herm_tol: float = HERM_TOL, psd_floor: float = PSD_FLOOR) -> np.ndarray:
    """Square root of a Hermitian PSD matrix via spectral mapping.

    Eigenvalues in [psd_floor, 0) are clamped to 0; anything below the floor
    raises ``NotPSD``.
    """
    eig = eigh(a, herm_tol=herm_tol)
    wmin = float(eig.eigenvalues[0]) if eig.eigenvalues.size else 0.0
    if wmin < psd_floor:
        raise NotPSD(f"minimum eigenvalue {wmin:.3e} below floor {psd_floor:.3e}")
    return _spectral_map(eig, np.sqrt(np.clip(eig.eigenvalues, 0.0, None)))


def pinv_sqrt(
    a: np.ndarray,
    rank_tol: float | None = None,
    herm_tol: float = HERM_TOL,
    psd_floor: float = PSD_FLOOR,
) -> tuple[np.ndarray, np.ndarray]:
    """Inverse square root of a PSD matrix on its support.

    Eigenvalues at or below ``rank_tol`` (default ``RANK_TOL_REL * lmax * d``,
    a scale-aware cutoff) are treated as exact zeros and excluded from the
    inversion.  Returns ``(A^{-1/2} on support, projector onto support)``.
    """
    eig = eigh(a, herm_tol=herm_tol)
    w = eig.eigenvalues
    wmin = float(w[0]) if w.size else 0.0
    if wmin < psd_floor:
        raise NotPSD(f"minimum eigenvalue {wmin:.3e} below floor {psd_floor:.3e}")
    if rank_tol is None:
        lmax = float(w[-1]) if w.size else 0.0
        rank_tol = RANK_TOL_REL * max(lmax, 0.0) * a.shape[0]
    support = w > rank_tol
    inv_sqrt_w = np.zeros_like(w)
    inv_sqrt_w[support] = 1.0 / np.sqrt(w[support])
    isq = _spectral_map(eig, inv_sqrt_w)
    proj = _spectral_map(eig, support.astype(np.float64))
    return isq, proj


def trace_norm(a: np.ndarray, herm_tol: float = HERM_TOL) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    a = _check_hermitian(a, herm_tol)
    w = np.linalg.eigvalsh(hermitize(a))
    return float(np.sum(np.abs(w)))


def max_eigenvalue(a: np.ndarray, herm_tol: float = HERM_TOL) -> float:
    """Largest eigenvalue of a Hermitian matrix."""
    a = _check_hermitian(a, herm_tol)
    w = np.linalg.eigvalsh(hermitize(a))
    return float(w[-1])
