import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ipfactor.exceptions import DimensionError, NotSelfAdjointError
from ipfactor.sampling import random_cmat, random_positive_opsum, random_self_adjoint_opsum
from ipfactor.superop import (
    OpSum,
    adjoint_superop,
    apply,
    asymmetry_witness,
    from_supermat,
    independence_ratio,
    is_positive_definite,
    is_self_adjoint,
    max_unit_deviation,
    quadratic_value,
    rank_one_pairing,
    realign,
    realignment_rank,
    reduce,
    to_supermat,
    unvec,
    vec,
    violating_matrix,
)

from oracles import apply_pairs, quadratic_min, supermat_by_columns, tensor_rank

seeds = st.integers(0, 2**32 - 1)


def random_opsum(n, m, rng):
    return OpSum.from_pairs([(random_cmat(n, rng), random_cmat(n, rng)) for _ in range(m)])


def test_vec_is_column_stacking():
    X = np.array([[1, 2], [3, 4]])
    assert list(vec(X)) == [1, 3, 2, 4]
    assert np.array_equal(unvec(vec(X)), X)


@given(seeds, st.integers(1, 3), st.integers(1, 5))
@settings(max_examples=40)
def test_supermat_matches_column_oracle(seed, n, m):
    rng = np.random.default_rng(seed)
    S = random_opsum(n, m, rng)
    M = to_supermat(S)
    assert np.allclose(M, supermat_by_columns(lambda X: apply_pairs(S.pairs, X), n))
    X = random_cmat(n, rng)
    assert np.allclose(apply(S, X), apply_pairs(S.pairs, X))
    assert np.allclose(apply(M, X), apply(S, X))


def test_realign_single_term(rng):
    E, F = random_cmat(3, rng), random_cmat(3, rng)
    R = realign(to_supermat(OpSum.from_pairs([(E, F)])))
    assert np.allclose(R, np.outer(E.ravel(), F.T.ravel()))


@given(seeds, st.integers(1, 3), st.integers(0, 10))
@settings(max_examples=40)
def test_from_supermat_round_trip_and_minimality(seed, n, m):
    rng = np.random.default_rng(seed)
    m = min(m, n * n)
    S = random_opsum(n, m, rng) if m else OpSum.from_pairs([], n)
    R = from_supermat(to_supermat(S))
    assert R.m == tensor_rank(S.pairs) if m else R.m == 0
    assert max_unit_deviation(R, S) < 1e-10 * max(1, np.linalg.norm(to_supermat(S)))
    if R.m:
        assert independence_ratio(R.E) > 1e-8 and independence_ratio(R.F) > 1e-8


def test_reduce_collapses_dependent_terms(rng):
    E, F, G = random_cmat(2, rng), random_cmat(2, rng), random_cmat(2, rng)
    S = OpSum.from_pairs([(E, F), (2 * E, G), (E, -F)])  # = E X (2G)
    R = reduce(S)
    assert R.m == 1 and realignment_rank(S) == 1
    assert max_unit_deviation(R, OpSum.from_pairs([(E, 2 * G)])) < 1e-12


def test_identity_map():
    n = 3
    S = OpSum.from_pairs([(np.eye(n), np.eye(n))])
    assert np.allclose(to_supermat(S), np.eye(n * n))
    ok, lam = is_positive_definite(S)
    assert ok and lam == pytest.approx(1)


@given(seeds, st.integers(1, 3), st.integers(1, 4))
@settings(max_examples=30)
def test_self_adjointness_by_definition(seed, n, m):
    rng = np.random.default_rng(seed)
    S = random_self_adjoint_opsum(n, m, rng)
    ok, defect = is_self_adjoint(S)
    assert ok and defect < 1e-10
    X, Y = random_cmat(n, rng), random_cmat(n, rng)
    lhs = np.vdot(Y, apply(S, X))
    rhs = np.vdot(apply(S, Y), X)
    assert abs(lhs - rhs) < 1e-9 * max(1, abs(lhs))
    assert max_unit_deviation(adjoint_superop(S), S) < 1e-9


def test_not_self_adjoint(rng):
    S = OpSum.from_pairs([(np.array([[0, 1], [0, 0]]), np.eye(2))])
    ok, defect = is_self_adjoint(S)
    assert not ok and defect > 0.1
    with pytest.raises(NotSelfAdjointError):
        is_positive_definite(S)
    X = asymmetry_witness(S)
    assert abs(quadratic_value(S, X).imag) > 0.1


@given(seeds, st.integers(1, 3), st.integers(1, 4))
@settings(max_examples=30)
def test_min_eig_matches_gram_oracle(seed, n, m):
    rng = np.random.default_rng(seed)
    S = random_self_adjoint_opsum(n, m, rng)
    _, lam = is_positive_definite(S)
    assert lam == pytest.approx(quadratic_min(lambda X: apply_pairs(S.pairs, X), n), abs=1e-9)


def test_violating_matrix_is_negative_direction():
    S = OpSum.from_pairs([(np.diag([1.0, -1.0]), np.eye(2))])
    ok, lam = is_positive_definite(S)
    assert not ok and lam == pytest.approx(-1)
    X = violating_matrix(S)
    assert np.linalg.norm(X) == pytest.approx(1)
    assert quadratic_value(S, X).real == pytest.approx(-1)


@given(seeds, st.integers(1, 3))
@settings(max_examples=30)
def test_positive_pairs_give_positive_map(seed, n):
    # (x^* E x)(y^* F y) > 0 for positive pairs, so the form is positive on rank one X
    rng = np.random.default_rng(seed)
    S = random_positive_opsum(n, 2, rng)
    assert is_positive_definite(S)[0]
    x, y = rng.standard_normal(n) + 0j, rng.standard_normal(n) + 0j
    v = rank_one_pairing(S, x, y)
    assert v.real > 0 and abs(v - quadratic_value(S, np.outer(x, y.conj()))) < 1e-9 * abs(v)


def test_opsum_validation():
    with pytest.raises(DimensionError):
        OpSum(np.zeros((1, 2, 2)), np.zeros((1, 3, 3)))
    with pytest.raises(ValueError):
        OpSum(np.full((1, 2, 2), np.inf), np.zeros((1, 2, 2)))
    with pytest.raises(DimensionError):
        OpSum.from_pairs([])
    z = OpSum.from_pairs([], 2)
    assert z.m == 0 and np.array_equal(to_supermat(z), np.zeros((4, 4)))
