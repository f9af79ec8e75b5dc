import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ipfactor.exceptions import BranchCutError, DecompositionError, NotSelfAdjointError
from ipfactor.hermitize import (
    balance_pairs,
    compute_c,
    conj_sqrt,
    hermitian_basis,
    hermitian_form,
    hermitize,
    hermitize_doubling,
    reduce_hermitian,
)
from ipfactor.matspace import hermitian_defect, mat_exp
from ipfactor.sampling import random_cmat, random_hermitian_opsum, random_self_adjoint_opsum
from ipfactor.superop import OpSum, max_unit_deviation, reduce

seeds = st.integers(0, 2**32 - 1)


def all_hermitian(S, tol=1e-12):
    return all(hermitian_defect(M) <= tol for M in np.concatenate([S.E, S.F]))


@given(seeds, st.integers(1, 3), st.integers(1, 9))
@settings(max_examples=40, deadline=None)
def test_c_is_a_conjugate_involution(seed, n, m):
    rng = np.random.default_rng(seed)
    m = min(m, n * n)
    S = reduce(random_self_adjoint_opsum(n, m, rng))
    C = compute_c(S)
    assert C.defect < 1e-8 * m
    # E_k^* = sum_j conj(c_kj) E_j
    recon = np.einsum("kj,jab->kab", np.conj(C.c), S.E)
    assert np.allclose(recon, np.conj(S.E).transpose(0, 2, 1), atol=1e-9)


@pytest.mark.parametrize(
    "C",
    [
        np.array([[0, 1], [1, 0]]),
        np.eye(3),
        -np.eye(2),
        np.diag([1j, 1j]),
        np.cos(0.3) * np.eye(2) + 1j * np.sin(0.3) * np.array([[0, 1], [1, 0]]),
        np.diag([np.exp(2j), np.exp(-1j), -1]),
    ],
)
def test_conj_sqrt_examples(C):
    C = np.asarray(C, dtype=complex)
    assert np.allclose(C @ C.conj(), np.eye(len(C)))
    D = conj_sqrt(C)
    assert np.linalg.norm(D.d @ D.d - C) <= 1e-7
    assert np.linalg.norm(D.d @ D.d.conj() - np.eye(len(C))) <= 1e-7


@given(seeds, st.integers(2, 4))
@settings(max_examples=40)
def test_conj_sqrt_of_exponentials(seed, m):
    K = np.random.default_rng(seed).standard_normal((m, m)) * 2
    C = mat_exp(1j * K)
    D = conj_sqrt(C)
    assert D.square_defect <= 1e-7 and D.unit_defect <= 1e-7


def test_conj_sqrt_rejects_non_involution():
    with pytest.raises(BranchCutError):
        conj_sqrt(np.array([[1, 1], [0, 1]]))


@given(seeds, st.integers(2, 3), st.integers(1, 9))
@settings(max_examples=60, deadline=None)
def test_hermitize_keeps_map_and_length(seed, n, m):
    rng = np.random.default_rng(seed)
    m = min(m, n * n)
    S = reduce(random_self_adjoint_opsum(n, m, rng))
    H = hermitize(S)
    assert H.m == S.m
    assert all_hermitian(H)
    assert max_unit_deviation(H, S) <= 1e-8


def test_hermitize_requires_reduced_input(rng):
    S = random_self_adjoint_opsum(2, 2, rng)
    with pytest.raises(DecompositionError):
        hermitize(S + S)


def test_hermitize_rejects_non_self_adjoint(rng):
    S = OpSum.from_pairs([(random_cmat(2, rng), random_cmat(2, rng))])
    with pytest.raises(NotSelfAdjointError):
        hermitize(S)
    with pytest.raises(NotSelfAdjointError):
        hermitize_doubling(S)


def test_hermitian_basis_is_orthonormal():
    for n in (1, 2, 3):
        G = hermitian_basis(n)
        assert len(G) == n * n and all_hermitian(OpSum(G, G))
        gram = np.einsum("aij,bij->ab", G.conj(), G)
        assert np.allclose(gram, np.eye(n * n))


@given(seeds, st.integers(2, 3), st.integers(1, 5))
@settings(max_examples=30, deadline=None)
def test_doubling_route(seed, n, m):
    rng = np.random.default_rng(seed)
    S = random_self_adjoint_opsum(n, min(m, n * n), rng)
    H = hermitize_doubling(S)
    assert all_hermitian(H)
    assert max_unit_deviation(H, S) <= 1e-8
    assert H.m <= 2 * S.m and H.m == reduce(S).m


def test_reduce_hermitian_drops_duplicates(rng):
    H = random_hermitian_opsum(2, 2, rng)
    R = reduce_hermitian(H + H)
    assert R.m == 2 and all_hermitian(R)
    assert max_unit_deviation(R, H + H) < 1e-12


def test_balance_pairs(rng):
    H = random_hermitian_opsum(3, 2, rng)
    A, B = balance_pairs(3 * H.E, H.F / 3)
    assert np.allclose(np.linalg.norm(A, axis=(1, 2)), np.linalg.norm(B, axis=(1, 2)))
    assert max_unit_deviation(OpSum(A, B), H) < 1e-12


def test_hermitian_form_route(rng):
    S = random_self_adjoint_opsum(3, 4, rng)
    H, route = hermitian_form(S)
    assert route == "conj_sqrt" and H.m == 4 and all_hermitian(H)
    Z, route = hermitian_form(OpSum.from_pairs([], 2))
    assert Z.m == 0
