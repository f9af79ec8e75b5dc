"""Seeded random generators for matrices and maps.

All functions take an explicit ``numpy.random.Generator``; nothing here
touches global random state.
"""
from __future__ import annotations

import numpy as np

from .superop import OpSum, to_supermat


def random_cmat(n: int, rng: np.random.Generator) -> np.ndarray:
    return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)


def random_hermitian(n: int, rng: np.random.Generator) -> np.ndarray:
    G = random_cmat(n, rng)
    return (G + G.conj().T) / 2


def random_positive(n: int, rng: np.random.Generator, margin: float = 0.1) -> np.ndarray:
    """Gram square ``G^* G + margin I``."""
    G = random_cmat(n, rng)
    return G.conj().T @ G + margin * np.eye(n)


def random_unit_vector(n: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def mix_terms(S: OpSum, G: np.ndarray) -> OpSum:
    """Re-express the same map with ``E'_k = sum_i G[i, k] E_i`` and ``F' = G^{-1} F``.

    A real ``G`` keeps Hermitian pairs Hermitian; a complex one generally
    destroys that structure.
    """
    Ginv = np.linalg.inv(G)
    E = np.einsum("ik,iab->kab", G, S.E)
    F = np.einsum("ki,iab->kab", Ginv, S.F)
    return OpSum(E, F)


def _well_conditioned(m: int, rng: np.random.Generator, complex_: bool) -> np.ndarray:
    while True:
        G = rng.standard_normal((m, m))
        if complex_:
            G = G + 1j * rng.standard_normal((m, m))
        if np.linalg.cond(G) < 50:
            return G


def random_hermitian_opsum(n: int, m: int, rng: np.random.Generator) -> OpSum:
    return OpSum.from_pairs([(random_hermitian(n, rng), random_hermitian(n, rng)) for _ in range(m)])


def random_self_adjoint_opsum(n: int, m: int, rng: np.random.Generator) -> OpSum:
    """A self-adjoint map of realignment rank ``m`` with scrambled, non-Hermitian terms."""
    H = random_hermitian_opsum(n, m, rng)
    return mix_terms(H, _well_conditioned(m, rng, complex_=True))


def random_positive_opsum(n: int, m: int, rng: np.random.Generator, margin: float = 0.1) -> OpSum:
    """``m`` positive pairs; the map is positive definite by construction."""
    return OpSum.from_pairs(
        [(random_positive(n, rng, margin), random_positive(n, rng, margin)) for _ in range(m)]
    )


def random_pd_two_term(n: int, rng: np.random.Generator) -> OpSum:
    """Positive-definite map given by two Hermitian, generally indefinite, pairs."""
    P = random_positive_opsum(n, 2, rng)
    return mix_terms(P, _well_conditioned(2, rng, complex_=False))


def random_pd_hermitian_opsum(n: int, m: int, rng: np.random.Generator, margin: float = 0.2) -> OpSum:
    """Positive-definite map with ``m`` Hermitian pairs (``m >= 2``).

    ``m - 1`` random Hermitian pairs plus a multiple of the identity map
    just large enough to make the sum definite, then mixed by a random real
    invertible matrix so no term is singled out.
    """
    H = random_hermitian_opsum(n, m - 1, rng)
    lam = np.linalg.eigvalsh(to_supermat(H))[0]
    shift = max(0.0, -lam) + margin
    full = H + OpSum.from_pairs([(np.eye(n), shift * np.eye(n))])
    return mix_terms(full, _well_conditioned(m, rng, complex_=False))
