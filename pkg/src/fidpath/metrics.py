"""State-distance measures: fidelity, trace distance, Bures distance, and the
max-relative entropy.

Conventions:

* Fidelity is the trace form ``F = tr sqrt(sqrt(rho) sigma sqrt(rho))``
  (not its square), so ``F in [0, 1]`` with 1 iff the states coincide.
* The Bures distance used here is ``B = sqrt(1 - F^2)``.  Note this differs
  from the other common normalization ``sqrt(2(1 - F))``; the bound
  evaluators in :mod:`fidpath.bounds` rely on this convention.
* ``smax`` is the natural-log max-relative entropy, ``ln`` of the least
  ``lam`` with ``rho <= lam * sigma``; it is ``+inf`` whenever the support of
  ``rho`` leaks outside the support of ``sigma``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DimensionMismatch, NumericalFailure, OutOfRange
from .states import DensityMatrix

#: Allowed disagreement between the two internal fidelity formulas.
FIDELITY_CROSSCHECK_TOL = 1e-8

#: Trace-norm mass of rho outside supp(sigma) above which lambda0 = +inf.
SUPPORT_TOL = 1e-8


def _check_dims(rho: DensityMatrix, sigma: DensityMatrix) -> None:
    if rho.dim != sigma.dim:
        raise DimensionMismatch(f"dims {rho.dim} and {sigma.dim} differ")


def fidelity(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Fidelity F(rho, sigma), clamped to [0, 1].

    Evaluated two independent ways — the trace of the PSD square root of
    sqrt(rho) sigma sqrt(rho), and the nuclear norm (sum of singular values)
    of sqrt(sigma) sqrt(rho) — and the first is returned after asserting the
    two agree within ``FIDELITY_CROSSCHECK_TOL``.
    """
    _check_dims(rho, sigma)
    s_rho = linalg.psd_sqrt(rho.mat)
    inner = linalg.psd_sqrt(linalg.hermitize(s_rho @ sigma.mat @ s_rho))
    f_trace = float(np.trace(inner).real)
    s_sigma = linalg.psd_sqrt(sigma.mat)
    f_nuclear = float(np.sum(np.linalg.svd(s_sigma @ s_rho, compute_uv=False)))
    if abs(f_trace - f_nuclear) > FIDELITY_CROSSCHECK_TOL:
        raise NumericalFailure(
            f"fidelity formulas disagree: {f_trace!r} vs {f_nuclear!r}"
        )
    return min(max(f_trace, 0.0), 1.0)


def fidelity_pure_path(r: float, lam: float) -> float:
    """Closed-form fidelity between a pure state and its mixture with another
    pure state of overlap ``r``: sqrt(lam + (1-lam) r^2)."""
    if not 0.0 <= r <= 1.0:
        raise OutOfRange(f"overlap r={r!r} outside [0, 1]")
    if not 0.0 <= lam <= 1.0:
        raise OutOfRange(f"lambda {lam!r} outside [0, 1]")
    return math.sqrt(lam + (1.0 - lam) * r * r)


def trace_distance(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Half the trace norm of rho - sigma; lies in [0, 1]."""
    _check_dims(rho, sigma)
    return 0.5 * linalg.trace_norm(rho.mat - sigma.mat)


def bures_distance(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """sqrt(1 - F^2) with the fidelity clamped to [0, 1]; lies in [0, 1]."""
    f = fidelity(rho, sigma)
    return math.sqrt(max(0.0, 1.0 - f * f))


@dataclass(frozen=True)
class SMaxResult:
    """Max-relative entropy evaluation.

    ``lambda0`` is the least lam with rho <= lam*sigma (+inf when infeasible)
    and ``smax = ln(lambda0)``.  ``support_violation`` is the trace-norm mass
    of rho projected outside the support of sigma; ``lambda0`` is finite iff
    it stays at or below ``SUPPORT_TOL``.  ``product_norm`` records the
    max-entry norm of rho @ sigma: an infinite ``lambda0`` with a nonzero
    product marks pairs where support leakage, not orthogonality, is the
    cause.
    """

    lambda0: float
    smax: float
    support_violation: float
    product_norm: float


def smax(rho: DensityMatrix, sigma: DensityMatrix, support_tol: float = SUPPORT_TOL) -> SMaxResult:
    """Max-relative entropy of ``rho`` with respect to ``sigma``.

    Finite case: ``lambda0`` is the maximum eigenvalue of
    ``sigma^{-1/2} rho sigma^{-1/2}`` with the inverse square root taken on
    the support of sigma.
    """
    _check_dims(rho, sigma)
    isq, proj = linalg.pinv_sqrt(sigma.mat)
    complement = np.eye(rho.dim) - proj
    violation = linalg.trace_norm(linalg.hermitize(complement @ rho.mat @ complement))
    product_norm = float(np.max(np.abs(rho.mat @ sigma.mat)))
    if violation > support_tol:
        return SMaxResult(
            lambda0=math.inf, smax=math.inf,
            support_violation=violation, product_norm=product_norm,
        )
    lam0 = linalg.max_eigenvalue(linalg.hermitize(isq @ rho.mat @ isq))
    return SMaxResult(
        lambda0=lam0, smax=math.log(lam0),
        support_violation=violation, product_norm=product_norm,
    )
