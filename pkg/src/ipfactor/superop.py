"""Linear maps on ``M_n(C)`` and their representations.

Two representations are used:

* :class:`OpSum` -- an operator sum ``X -> sum_i E_i X F_i``;
* a *supermatrix* -- the ``n^2 x n^2`` array ``M`` with
  ``vec(A(X)) = M @ vec(X)``.

``vec`` is column stacking throughout (``X[:, 0]`` first, then
``X[:, 1]``, ...), so that ``vec(E X F) = kron(F.T, E) @ vec(X)``.  Mixing
conventions is the classic bug in this area; every index formula below is
stated against this one and covered by round-trip tests.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence, Union

import numpy as np

from .config import tolerances
from .exceptions import DimensionError, NotSelfAdjointError
from .matspace import adjoint, as_cmat, fro, hs_inner


def vec(X) -> np.ndarray:
    """Column-stacking vectorisation."""
    return np.asarray(X).reshape(-1, order="F")


def unvec(v, n: int | None = None) -> np.ndarray:
    v = np.asarray(v).reshape(-1)
    if n is None:
        n = int(round(np.sqrt(v.size)))
    if n * n != v.size:
        raise DimensionError(f"cannot unvec a length-{v.size} vector into a square matrix")
    return v.reshape(n, n, order="F")


def matrix_units(n: int) -> Iterator[np.ndarray]:
    """All ``n^2`` matrix units, in vec order."""
    for k in range(n * n):
        U = np.zeros(n * n, dtype=complex)
        U[k] = 1
        yield unvec(U, n)


@dataclass(frozen=True)
class OpSum:
    """The map ``X -> sum_i E[i] @ X @ F[i]``.

    ``E`` and ``F`` are stacked arrays of shape ``(m, n, n)``.  ``m = 0``
    represents the zero map.
    """

    E: np.ndarray
    F: np.ndarray

    def __post_init__(self):
        E = np.asarray(self.E, dtype=complex)
        F = np.asarray(self.F, dtype=complex)
        if E.ndim != 3 or E.shape != F.shape or E.shape[1] != E.shape[2] or E.shape[1] < 1:
            raise DimensionError(f"bad operator-sum shapes {E.shape} / {F.shape}")
        if not (np.all(np.isfinite(E)) and np.all(np.isfinite(F))):
            raise ValueError("operator sum has non-finite entries")
        object.__setattr__(self, "E", E)
        object.__setattr__(self, "F", F)

    @classmethod
    def from_pairs(cls, pairs: Sequence, n: int | None = None) -> "OpSum":
        pairs = list(pairs)
        if not pairs:
            if n is None:
                raise DimensionError("dimension required for an empty operator sum")
            return cls(np.zeros((0, n, n)), np.zeros((0, n, n)))
        E = np.stack([as_cmat(e, "E") for e, _ in pairs])
        F = np.stack([as_cmat(f, "F") for _, f in pairs])
        return cls(E, F)

    @property
    def m(self) -> int:
        return self.E.shape[0]

    @property
    def dim(self) -> int:
        return self.E.shape[1]

    @property
    def is_zero(self) -> bool:
        return self.m == 0

    @property
    def pairs(self) -> list:
        return list(zip(self.E, self.F))

    def __len__(self) -> int:
        return self.m

    def __iter__(self):
        return iter(self.pairs)

    def __add__(self, other: "OpSum") -> "OpSum":
        if other.dim != self.dim:
            raise DimensionError("dimension mismatch")
        return OpSum(np.concatenate([self.E, other.E]), np.concatenate([self.F, other.F]))


MapLike = Union[OpSum, np.ndarray]


def _dim_of(S: MapLike) -> int:
    if isinstance(S, OpSum):
        return S.dim
    N = np.asarray(S).shape[0]
    n = int(round(np.sqrt(N)))
    if n * n != N or np.asarray(S).shape != (N, N):
        raise DimensionError(f"supermatrix must be n^2 x n^2, got {np.asarray(S).shape}")
    return n


def apply(S: MapLike, X) -> np.ndarray:
    """Evaluate the map on ``X``."""
    X = as_cmat(X, "X")
    n = _dim_of(S)
    if X.shape != (n, n):
        raise DimensionError(f"map acts on {n}x{n} matrices, got {X.shape}")
    if isinstance(S, OpSum):
        return np.einsum("mij,jk,mkl->il", S.E, X, S.F)
    return unvec(np.asarray(S) @ vec(X), n)


def to_supermat(S: MapLike) -> np.ndarray:
    """Representing matrix under column stacking: ``sum_i kron(F_i^T, E_i)``."""
    if not isinstance(S, OpSum):
        M = np.asarray(S, dtype=complex)
        _dim_of(M)
        return M
    n = S.dim
    M = np.zeros((n * n, n * n), dtype=complex)
    for E, F in S:
        M += np.kron(F.T, E)
    return M


def realign(M) -> np.ndarray:
    """Realignment ``R[i n + j, k n + l] = M[k n + i, l n + j]`` (0-based).

    For a single term ``kron(F^T, E)`` this is the rank-one matrix
    ``outer(E.ravel(), F.T.ravel())`` (row-major ravel), so the rank of the
    realignment is the minimal number of operator-sum terms.
    """
    M = np.asarray(M)
    n = _dim_of(M)
    # M4[k, i, l, j] = M[k n + i, l n + j]
    M4 = M.reshape(n, n, n, n)
    return M4.transpose(1, 3, 0, 2).reshape(n * n, n * n)


def realignment_rank(S: MapLike, cutoff: float | None = None) -> int:
    cutoff = tolerances().svd_cutoff if cutoff is None else cutoff
    s = np.linalg.svd(realign(to_supermat(S)), compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > cutoff * s[0]))


def from_supermat(M, cutoff: float | None = None) -> OpSum:
    """Minimal operator sum for a supermatrix.

    Each singular triple ``(sigma, u, v)`` of the realignment above the
    cutoff gives one pair; the weight ``sqrt(sigma)`` is split evenly so
    that ``||E_i||_F = ||F_i||_F``.  The resulting ``E``-set and ``F``-set
    are orthogonal, hence linearly independent.
    """
    cutoff = tolerances().svd_cutoff if cutoff is None else cutoff
    M = np.asarray(M, dtype=complex)
    n = _dim_of(M)
    U, s, Vh = np.linalg.svd(realign(M))
    if s[0] == 0:
        return OpSum.from_pairs([], n)
    keep = s > cutoff * s[0]
    root = np.sqrt(s[keep])
    # R = sum sigma u v^H = sum outer(E.ravel(), F.T.ravel())
    E = (U[:, keep] * root).T.reshape(-1, n, n)
    Ft = (Vh[keep].T * root).T.reshape(-1, n, n)  # rows of Vh are v^H = conj(v)^T
    F = Ft.transpose(0, 2, 1)
    return OpSum(E, F)


def reduce(S: OpSum) -> OpSum:
    """Equivalent operator sum with linearly independent ``E``- and ``F``-sets."""
    return from_supermat(to_supermat(S))


def adjoint_superop(S: OpSum) -> OpSum:
    """Adjoint under the trace pairing: ``Y -> sum_j E_j^* Y F_j^*``."""
    return OpSum(np.conj(S.E).transpose(0, 2, 1), np.conj(S.F).transpose(0, 2, 1))


def self_adjoint_defect(S: MapLike) -> float:
    M = to_supermat(S)
    return fro(M - adjoint(M)) / max(1.0, fro(M))


def is_self_adjoint(S: MapLike) -> tuple[bool, float]:
    """Whether ``<A X, Y> = <X, A Y>`` for all ``X, Y``; returns ``(flag, defect)``."""
    defect = self_adjoint_defect(S)
    return defect <= tolerances().self_adjoint, defect


def map_scale(S: MapLike) -> float:
    """``max(1, ||M||_2)``: the scale relative tolerances are measured against."""
    return max(1.0, float(np.linalg.norm(to_supermat(S), 2)))


def definiteness(S: MapLike):
    """Spectrum data of a self-adjoint map: ``(min_eig, eigenvector as matrix)``."""
    ok, defect = is_self_adjoint(S)
    if not ok:
        raise NotSelfAdjointError(f"map is not self-adjoint (defect {defect:.3g})")
    M = to_supermat(S)
    lam, V = np.linalg.eigh((M + adjoint(M)) / 2)
    return float(lam[0]), unvec(V[:, 0], _dim_of(M))


def is_positive_definite(S: MapLike) -> tuple[bool, float]:
    """Whether ``<A X, X> > 0`` for every nonzero ``X``; returns ``(flag, min_eig)``.

    Raises :class:`NotSelfAdjointError` for maps that are not self-adjoint.
    """
    lam, _ = definiteness(S)
    M = to_supermat(S)
    return lam > 1e-10 * float(np.linalg.norm(M, 2)), lam


def violating_matrix(S: MapLike) -> np.ndarray:
    """A unit-norm ``X`` minimising ``<A X, X>`` (negative when not definite)."""
    return definiteness(S)[1]


def asymmetry_witness(S: MapLike) -> np.ndarray:
    """A unit-norm ``X`` maximising ``|Im <A X, X>|``.

    For a map that is not self-adjoint the returned ``X`` has a non-real
    quadratic value, so the form is not conjugate-symmetric.
    """
    M = to_supermat(S)
    K = (M - adjoint(M)) / 2j
    lam, V = np.linalg.eigh(K)
    k = int(np.argmax(np.abs(lam)))
    return unvec(V[:, k], _dim_of(M))


def rank_one_pairing(S: OpSum, x, y) -> complex:
    """``sum_i (x^* E_i x)(y^* F_i y)``, which equals ``<A(x y^*), x y^*>``."""
    x = np.asarray(x, dtype=complex).reshape(-1)
    y = np.asarray(y, dtype=complex).reshape(-1)
    ex = np.einsum("i,mij,j->m", np.conj(x), S.E, x)
    fy = np.einsum("i,mij,j->m", np.conj(y), S.F, y)
    return complex(np.sum(ex * fy))


def quadratic_value(S: MapLike, X) -> complex:
    """``<A X, X>`` via the trace pairing."""
    return hs_inner(apply(S, X), X)


def max_unit_deviation(S: MapLike, T: MapLike) -> float:
    """Largest ``||S(U) - T(U)||_F`` over all matrix units ``U``."""
    n = _dim_of(S)
    if _dim_of(T) != n:
        raise DimensionError("maps act on different dimensions")
    return max(fro(apply(S, U) - apply(T, U)) for U in matrix_units(n))


def independence_ratio(mats) -> float:
    """``sigma_min / sigma_max`` of the stacked vectorised matrices (0 if dependent)."""
    mats = np.asarray(mats)
    if mats.shape[0] == 0:
        return 1.0
    s = np.linalg.svd(mats.reshape(mats.shape[0], -1), compute_uv=False)
    if s[0] == 0 or len(s) < mats.shape[0]:
        return 0.0
    return float(s[-1] / s[0])


def is_independent(mats) -> bool:
    return independence_ratio(mats) > tolerances().independence
