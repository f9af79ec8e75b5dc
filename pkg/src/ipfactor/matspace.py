"""Dense complex matrix primitives.

Matrices are plain ``numpy`` arrays of shape ``(n, n)``; the helpers in
this module validate them and provide the spectral computations used by
the rest of the package (Hermitian eigendecomposition, the smallest root
of a definite pencil, and a logarithm with purely imaginary entries for
matrices satisfying ``C @ conj(C) = I``).
"""
from __future__ import annotations

import numpy as np
import scipy.linalg

from .config import tolerances
from .exceptions import (
    BranchCutError,
    DimensionError,
    NotHermitianError,
    NotPositiveError,
)


def as_cmat(M, name: str = "matrix") -> np.ndarray:
    """Return ``M`` as a finite square complex array, or raise."""
    arr = np.asarray(M, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise DimensionError(f"{name} must be a non-empty square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def as_cvec(x, name: str = "vector") -> np.ndarray:
    arr = np.asarray(x, dtype=complex).reshape(-1)
    if arr.size < 1:
        raise DimensionError(f"{name} must be non-empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def adjoint(M) -> np.ndarray:
    """Conjugate transpose."""
    return np.conj(np.asarray(M)).T


def trace(M) -> complex:
    return complex(np.trace(np.asarray(M)))


def hs_inner(X, Y) -> complex:
    """Trace pairing ``trace(Y^* X)``: linear in ``X``, conjugate-linear in ``Y``."""
    X = np.asarray(X)
    Y = np.asarray(Y)
    if X.shape != Y.shape:
        raise DimensionError(f"shape mismatch {X.shape} vs {Y.shape}")
    # trace(Y^* X) = sum_ij conj(Y_ij) X_ij
    return complex(np.vdot(Y, X))


def fro(M) -> float:
    return float(np.linalg.norm(M))


def hermitian_defect(H) -> float:
    """Relative Hermitian defect ``||H - H^*||_F / max(1, ||H||_F)``."""
    H = np.asarray(H)
    return fro(H - adjoint(H)) / max(1.0, fro(H))


def is_hermitian(H, tol: float | None = None) -> bool:
    tol = tolerances().tol_herm if tol is None else tol
    return hermitian_defect(H) <= tol


def hermitian_part(H) -> np.ndarray:
    H = np.asarray(H)
    return (H + adjoint(H)) / 2


def check_hermitian(H, name: str = "matrix") -> np.ndarray:
    """Validate and return the exactly-Hermitian part of ``H``."""
    H = as_cmat(H, name)
    defect = hermitian_defect(H)
    if defect > tolerances().tol_herm:
        raise NotHermitianError(f"{name} is not Hermitian (relative defect {defect:.3g})")
    return hermitian_part(H)


def min_eig(H) -> float:
    """Smallest eigenvalue of the Hermitian part of ``H``."""
    return float(np.linalg.eigvalsh(hermitian_part(H))[0])


def positivity_threshold(H) -> float:
    """The margin a Hermitian matrix must clear to count as positive."""
    return tolerances().pos_margin * max(1.0, float(np.linalg.norm(H, 2)))


def is_positive(H) -> bool:
    H = np.asarray(H)
    return is_hermitian(H) and min_eig(H) > positivity_threshold(H)


def positive_margin(H) -> float:
    """``min_eig(H) - threshold``; positive iff ``H`` counts as positive definite."""
    return min_eig(H) - positivity_threshold(H)


def check_positive(H, name: str = "matrix") -> np.ndarray:
    H = check_hermitian(H, name)
    lam = min_eig(H)
    if lam <= positivity_threshold(H):
        raise NotPositiveError(f"{name} is not positive definite (min eigenvalue {lam:.3g})")
    return H


def normalize_phase(v: np.ndarray) -> np.ndarray:
    """Unit Euclidean norm, first non-negligible component real and positive."""
    v = np.asarray(v, dtype=complex)
    v = v / np.linalg.norm(v)
    big = np.flatnonzero(np.abs(v) > 1e-12 * np.abs(v).max())
    lead = v[big[0]]
    return v * (abs(lead) / lead)


def herm_eig(H, tol: float | None = None):
    """Spectral decomposition ``H = V diag(lam) V^*`` of a Hermitian matrix.

    Eigenvalues are returned in ascending order.  Each eigenvector is
    phase-normalised (see :func:`normalize_phase`) and, within a cluster of
    eigenvalues equal to ``tol``, eigenvectors are ordered lexicographically
    by (real, imag) of their components so the output is deterministic.
    """
    H = check_hermitian(H, "H")
    lam, V = np.linalg.eigh(H)
    V = np.column_stack([normalize_phase(V[:, k]) for k in range(V.shape[1])])
    tol = 1e-12 * max(1.0, float(np.abs(lam).max())) if tol is None else tol
    order = list(range(len(lam)))
    start = 0
    while start < len(lam):
        stop = start + 1
        while stop < len(lam) and lam[stop] - lam[start] <= tol:
            stop += 1
        if stop - start > 1:
            block = order[start:stop]
            block.sort(key=lambda k: tuple(np.round(np.column_stack([V[:, k].real, V[:, k].imag]).ravel(), 12)))
            order[start:stop] = block
        start = stop
    return lam[order], V[:, order]


def pencil_min(P, Q):
    """Smallest root ``t0`` of ``det(P - t Q) = 0`` for positive definite ``Q``.

    Returns ``(t0, y0)`` where ``y0`` spans the kernel of ``P - t0 Q``
    (unit norm, phase-normalised).  When ``P`` is positive as well,
    ``t0 > 0`` and ``P - t Q`` is positive for every ``t`` in ``[0, t0)``.
    """
    P = check_hermitian(P, "P")
    Q = check_positive(Q, "Q")
    if P.shape != Q.shape:
        raise DimensionError(f"pencil shapes differ: {P.shape} vs {Q.shape}")
    lam, Y = scipy.linalg.eigh(P, Q)
    t0 = float(lam[0])
    y0 = normalize_phase(Y[:, 0])
    return t0, y0


def pencil_max(P, Q) -> float:
    """Largest root of ``det(P - t Q) = 0`` for positive definite ``Q``."""
    P = check_hermitian(P, "P")
    Q = check_positive(Q, "Q")
    return float(scipy.linalg.eigh(P, Q, eigvals_only=True)[-1])


def mat_exp(M) -> np.ndarray:
    """Matrix exponential (Pade scaling and squaring)."""
    return scipy.linalg.expm(as_cmat(M))


def _branch_log(C: np.ndarray, phi: float) -> np.ndarray:
    # primary log whose cut is the ray arg = phi + pi
    n = C.shape[0]
    rot = np.exp(-1j * phi)
    L = scipy.linalg.logm(rot * C)
    return L + 1j * phi * np.eye(n)


def _angle_to_cut(eigs: np.ndarray, phi: float) -> float:
    theta = np.angle(eigs) - (phi + np.pi)
    return float(np.min(np.abs(np.angle(np.exp(1j * theta)))))


def log_unit_conj(C) -> np.ndarray:
    """Logarithm with purely imaginary entries of ``C`` with ``C conj(C) = I``.

    The spectrum of such a ``C`` is closed under ``z -> z / |z|^2`` (same
    argument), so any primary logarithm whose cut avoids the spectrum
    satisfies ``Log(C) + conj(Log(C)) = 0``.  Cuts along ``arg = pi + phi``
    are scanned for ``phi = k pi / m``; the first one clearing every
    eigenvalue by the configured angular distance is used and the result
    is verified afterwards.

    Raises :class:`BranchCutError` if no cut is admissible or the
    round trip / skew check fails.
    """
    tol = tolerances()
    C = as_cmat(C, "C")
    m = C.shape[0]
    defect = fro(C @ np.conj(C) - np.eye(m))
    if defect > tol.involution * m:
        raise BranchCutError(f"C conj(C) != I (defect {defect:.3g})")
    eigs = np.linalg.eigvals(C)
    if np.min(np.abs(eigs)) < 1e-12:
        raise BranchCutError("C is singular")
    for k in range(2 * m):
        phi = k * np.pi / m
        if _angle_to_cut(eigs, phi) <= tol.branch_clearance:
            continue
        L = _branch_log(C, phi)
        if not np.all(np.isfinite(L)):
            continue
        skew = fro(L + np.conj(L))
        if skew > tol.skew_log * max(1.0, fro(L)):
            continue
        L = 1j * L.imag
        if fro(mat_exp(L) - C) > 1e-8 * max(1.0, fro(C)):
            continue
        return L
    raise BranchCutError("no branch cut yields a purely imaginary logarithm")
