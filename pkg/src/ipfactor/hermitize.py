"""Hermitian operator sums for self-adjoint maps.

A self-adjoint map ``X -> sum_j E_j X F_j`` with independent ``E``- and
``F``-sets satisfies ``E_k^* = sum_j conj(c_kj) E_j`` for a matrix ``C``
with ``C conj(C) = I``.  A square root ``D`` of ``C`` with
``D conj(D) = I`` then mixes the terms into Hermitian pairs

    A_k = sum_j conj(d_kj) E_j,    B_k = sum_i d_ik F_i

without changing the number of terms.  :func:`hermitize_doubling` is the
cheaper alternative that splits every term into its Hermitian and
skew-Hermitian parts, at the cost of up to twice as many terms.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import tolerances
from .exceptions import BranchCutError, DecompositionError, NotSelfAdjointError
from .matspace import fro, hermitian_defect, log_unit_conj, mat_exp
from .superop import (
    OpSum,
    independence_ratio,
    is_independent,
    is_self_adjoint,
    map_scale,
    max_unit_deviation,
    reduce,
    vec,
)


@dataclass(frozen=True)
class ConjInvolution:
    """Coefficients ``c`` with ``E_k^* = sum_j conj(c[k, j]) E_j``."""

    c: np.ndarray

    @property
    def m(self) -> int:
        return self.c.shape[0]

    @property
    def defect(self) -> float:
        return fro(self.c @ np.conj(self.c) - np.eye(self.m))


@dataclass(frozen=True)
class ConjSqrt:
    """``d`` with ``d @ d = c`` and ``d @ conj(d) = I``."""

    d: np.ndarray
    c: np.ndarray

    @property
    def m(self) -> int:
        return self.d.shape[0]

    @property
    def square_defect(self) -> float:
        return fro(self.d @ self.d - self.c)

    @property
    def unit_defect(self) -> float:
        return fro(self.d @ np.conj(self.d) - np.eye(self.m))


def compute_c(S: OpSum) -> ConjInvolution:
    """Solve for the conjugate involution of a reduced self-adjoint sum.

    Least squares is used rather than an exact solve; the residual doubles
    as a diagnostic (a large one means the input is not self-adjoint or not
    reduced).  The same ``C`` is cross-checked on the ``F`` side, where
    ``F_k^* = sum_i c[i, k] F_i`` must hold.
    """
    tol = tolerances()
    m, n = S.m, S.dim
    if m == 0:
        raise DecompositionError("zero map has no conjugate involution")
    G = S.E.reshape(m, n * n).T  # columns are the flattened E_j
    targets = np.conj(S.E).transpose(0, 2, 1).reshape(m, n * n).T
    coef, *_ = np.linalg.lstsq(G, targets, rcond=None)
    resid = np.linalg.norm(G @ coef - targets, axis=0)
    norms = np.linalg.norm(targets, axis=0)
    worst = float(np.max(resid / np.maximum(norms, 1e-300)))
    if worst > tol.closure:
        raise DecompositionError(
            f"adjoints of E are not in span(E) (relative residual {worst:.3g}); "
            "input is not self-adjoint or not reduced"
        )
    c = np.conj(coef).T
    C = ConjInvolution(c)
    if C.defect > tol.involution * m:
        raise DecompositionError(f"C conj(C) != I (defect {C.defect:.3g})")
    Hf = S.F.reshape(m, n * n).T
    f_targets = np.conj(S.F).transpose(0, 2, 1).reshape(m, n * n).T
    f_resid = np.linalg.norm(Hf @ c - f_targets, axis=0) / np.maximum(
        np.linalg.norm(f_targets, axis=0), 1e-300
    )
    if float(f_resid.max()) > 1e-7:
        raise DecompositionError(f"F-side relation fails (relative residual {f_resid.max():.3g})")
    return C


def conj_sqrt(C: ConjInvolution | np.ndarray) -> ConjSqrt:
    """``D = exp(Log(C) / 2)`` with a purely imaginary logarithm.

    Since ``conj(Log C) = -Log C`` we get ``conj(D) = exp(-Log(C) / 2)``,
    so ``D conj(D) = I`` and ``D^2 = C``.  Square roots of this kind are
    not unique; this construction is the one used throughout.

    Raises :class:`BranchCutError` when no suitable logarithm exists.
    """
    c = C.c if isinstance(C, ConjInvolution) else np.asarray(C, dtype=complex)
    L = log_unit_conj(c)
    d = mat_exp(L / 2)
    root = ConjSqrt(d=d, c=c)
    scale = max(1.0, fro(c))
    if root.square_defect > tolerances().conj_sqrt * scale:
        raise BranchCutError(f"D^2 != C (defect {root.square_defect:.3g})")
    if root.unit_defect > tolerances().conj_sqrt * root.m:
        raise BranchCutError(f"D conj(D) != I (defect {root.unit_defect:.3g})")
    return root


def balance_pairs(A: np.ndarray, B: np.ndarray):
    """Rescale each pair so that ``||A_k||_F = ||B_k||_F`` (map unchanged)."""
    na = np.linalg.norm(A.reshape(A.shape[0], -1), axis=1)
    nb = np.linalg.norm(B.reshape(B.shape[0], -1), axis=1)
    ok = (na > 0) & (nb > 0)
    r = np.ones_like(na)
    r[ok] = np.sqrt(nb[ok] / na[ok])
    return A * r[:, None, None], B / r[:, None, None]


def _check_output(S: OpSum, H: OpSum, what: str) -> None:
    res = max_unit_deviation(S, H)
    if res > tolerances().residual * map_scale(S):
        raise DecompositionError(f"{what}: result differs from input map (residual {res:.3g})")


def hermitize(S: OpSum) -> OpSum:
    """Hermitian pairs for a reduced self-adjoint operator sum, same length.

    Raises :class:`BranchCutError` if the conjugate square root cannot be
    formed (callers then use :func:`hermitize_doubling`), and
    :class:`DecompositionError` if the input violates the preconditions.
    """
    ok, defect = is_self_adjoint(S)
    if not ok:
        raise NotSelfAdjointError(f"map is not self-adjoint (defect {defect:.3g})")
    if not (is_independent(S.E) and is_independent(S.F)):
        raise DecompositionError("operator sum is not reduced; call reduce() first")
    C = compute_c(S)
    D = conj_sqrt(C).d
    A = np.einsum("kj,jab->kab", np.conj(D), S.E)
    B = np.einsum("ik,iab->kab", D, S.F)
    worst = max(max(hermitian_defect(a) for a in A), max(hermitian_defect(b) for b in B))
    if worst > tolerances().closure:
        raise DecompositionError(f"mixed terms are not Hermitian (defect {worst:.3g})")
    A = (A + np.conj(A).transpose(0, 2, 1)) / 2
    B = (B + np.conj(B).transpose(0, 2, 1)) / 2
    A, B = balance_pairs(A, B)
    H = OpSum(A, B)
    _check_output(S, H, "hermitize")
    if not (is_independent(A) and is_independent(B)):
        raise DecompositionError(
            f"Hermitian terms are dependent (ratios {independence_ratio(A):.3g}, {independence_ratio(B):.3g})"
        )
    return H


def hermitian_basis(n: int) -> np.ndarray:
    """Orthonormal (trace pairing) basis of the real space of Hermitian n x n matrices."""
    basis = []
    for j in range(n):
        G = np.zeros((n, n), dtype=complex)
        G[j, j] = 1
        basis.append(G)
    s = 1 / np.sqrt(2)
    for j in range(n):
        for k in range(j + 1, n):
            G = np.zeros((n, n), dtype=complex)
            G[j, k] = G[k, j] = s
            basis.append(G)
            G = np.zeros((n, n), dtype=complex)
            G[j, k] = 1j * s
            G[k, j] = -1j * s
            basis.append(G)
    return np.stack(basis)


def hermitian_coordinates(H: np.ndarray) -> np.ndarray:
    """Real coordinates of Hermitian matrices ``H`` (shape ``(m, n, n)``)."""
    n = H.shape[-1]
    G = hermitian_basis(n)
    return np.einsum("bij,mij->mb", np.conj(G), H).real


def reduce_hermitian(S: OpSum, cutoff: float | None = None) -> OpSum:
    """Minimal operator sum with Hermitian pairs, for Hermitian-pair input.

    Works in real coordinates: the map is ``sum_{b,c} T[b, c] G_b (.) G_c``
    for a real matrix ``T``; its SVD yields Hermitian, independent pairs.
    """
    cutoff = tolerances().svd_cutoff if cutoff is None else cutoff
    n = S.dim
    if S.m == 0:
        return S
    a = hermitian_coordinates(S.E)
    b = hermitian_coordinates(S.F)
    T = a.T @ b
    U, s, Vt = np.linalg.svd(T)
    if s[0] == 0:
        return OpSum.from_pairs([], n)
    keep = s > cutoff * s[0]
    root = np.sqrt(s[keep])
    G = hermitian_basis(n)
    A = np.einsum("bk,bij->kij", U[:, keep] * root, G)
    B = np.einsum("kb,bij->kij", Vt[keep] * root[:, None], G)
    return OpSum(A, B)


def hermitize_doubling(S: OpSum) -> OpSum:
    """Hermitian pairs by splitting each term into Hermitian/skew parts.

    For a self-adjoint map ``A(X) = (sum E X F + E^* X F^*) / 2``, which
    equals

        sum_j ((E_j + E_j^*)/2) X ((F_j + F_j^*)/2)
            + ((E_j - E_j^*)/(-2i)) X ((F_j - F_j^*)/(2i)).

    The ``2m`` terms are then reduced (keeping pairs Hermitian) to drop
    vanishing or dependent ones.
    """
    ok, defect = is_self_adjoint(S)
    if not ok:
        raise NotSelfAdjointError(f"map is not self-adjoint (defect {defect:.3g})")
    Es = np.conj(S.E).transpose(0, 2, 1)
    Fs = np.conj(S.F).transpose(0, 2, 1)
    A = np.concatenate([(S.E + Es) / 2, (S.E - Es) / (-2j)])
    B = np.concatenate([(S.F + Fs) / 2, (S.F - Fs) / 2j])
    H = reduce_hermitian(OpSum(A, B))
    _check_output(S, H, "hermitize_doubling")
    return H


def hermitian_form(S: OpSum) -> tuple[OpSum, str]:
    """Reduce, then hermitize; fall back to doubling if the square root fails.

    Returns ``(opsum, route)`` with ``route`` either ``"conj_sqrt"`` or
    ``"doubling"``.
    """
    R = reduce(S)
    if R.m == 0:
        return R, "conj_sqrt"
    try:
        return hermitize(R), "conj_sqrt"
    except BranchCutError:
        return hermitize_doubling(R), "doubling"
