import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ipfactor.exceptions import DimensionError
from ipfactor.matspace import min_eig
from ipfactor.positivize import verify_certificate
from ipfactor.sampling import random_cmat, random_positive
from ipfactor.superop import OpSum, is_positive_definite, max_unit_deviation, realignment_rank
from ipfactor.witness import (
    E11,
    E12,
    E21,
    E22,
    counterexample_map,
    fs_dependent_test,
    fs_zero_test,
    obstruction_audit,
    obstruction_lines,
    explicit_decompositions,
    explicit_hermitian_form,
    explicit_minus_one_pairs,
    positive_form_above_half,
    quadratic_form,
)

from oracles import epsilon_map, quadratic_min

seeds = st.integers(0, 2**32 - 1)


def test_quarter_map_on_matrix_units():
    A = counterexample_map(0.25)
    assert np.array_equal(A(E11), np.diag([1, 0.75]))
    assert np.array_equal(A(E22), np.diag([0.75, 1]))
    assert np.array_equal(A(E12), 0.25 * E12)
    assert np.array_equal(A(E21), 0.25 * E21)


@given(st.floats(0.01, 0.99), seeds)
def test_map_matches_closed_form(eps, seed):
    A = counterexample_map(eps)
    X = random_cmat(2, np.random.default_rng(seed))
    assert np.allclose(A(X), epsilon_map(eps, X))
    assert np.allclose(A.closed_form(X), epsilon_map(eps, X))
    q = np.vdot(X, A(X))
    assert quadratic_form(A, X) == pytest.approx(q.real, abs=1e-12) and abs(q.imag) < 1e-12


@pytest.mark.parametrize("eps", [0.1, 0.25, 0.4, 0.75])
def test_spectrum_and_rank(eps):
    A = counterexample_map(eps)
    lam = np.linalg.eigvalsh(A.supermat)
    assert np.allclose(lam, sorted([eps, eps, eps, 2 - eps]))
    assert quadratic_min(A, 2) == pytest.approx(eps)
    assert is_positive_definite(A.supermat)[0]
    assert realignment_rank(A.supermat) == 4
    assert A.obstructed == (eps < 0.5)


@pytest.mark.parametrize("eps", [0, 1, 1.5, -0.2])
def test_epsilon_range(eps):
    with pytest.raises(ValueError):
        counterexample_map(eps)


@pytest.mark.parametrize("eps", [0.1, 0.25, 0.4])
def test_hermitian_form_reproduces_map(eps):
    H = explicit_hermitian_form(eps)
    assert max_unit_deviation(H, counterexample_map(eps).supermat) <= 1e-12
    for M in np.concatenate([H.E, H.F]):
        assert np.array_equal(M, M.conj().T)


def test_explicit_minus_one_certificate():
    herm, cert = explicit_decompositions(0.25)
    assert cert is not None and list(cert.signs) == [-1, 1, 1, 1]
    assert cert.residual <= 1e-12
    assert np.all(cert.margins > 0)
    assert min_eig(np.array([[1, 2], [2, 16]])) == pytest.approx(0.7379, abs=1e-4)
    assert explicit_decompositions(0.3)[1] is None


def test_explicit_pairs_need_the_minus_sign():
    pairs, signs = explicit_minus_one_pairs()
    target = counterexample_map(0.25).supermat
    assert verify_certificate("minus_one", pairs, signs, target).ok
    report = obstruction_audit(pairs, 0.25)
    assert report.failed_step == 2


@pytest.mark.parametrize("eps", [0.51, 0.6, 0.75, 0.9, 0.99])
def test_positive_form_above_half(eps):
    S = positive_form_above_half(eps)
    assert S.m == 7
    report = obstruction_audit(S, eps)
    assert report.passed, report.lines()
    assert not report.inconsistent
    # the chain holds with eps >= 1 - eps
    assert report.chain["arithmetic_mean"] == pytest.approx(eps)
    assert report.chain["modulus"] == pytest.approx(1 - eps)


def test_positive_form_above_half_rejects_small_eps():
    with pytest.raises(ValueError):
        positive_form_above_half(0.5)
    with pytest.raises(ValueError):
        positive_form_above_half(0.6, shrink=0.1)


@pytest.mark.parametrize("eps", [0.1, 0.25, 0.49])
def test_audit_rejects_positive_candidates(eps, rng):
    for _ in range(20):
        m = int(rng.integers(1, 6))
        S = OpSum.from_pairs([(random_positive(2, rng), random_positive(2, rng)) for _ in range(m)])
        r = obstruction_audit(S, eps)
        assert r.failed_step in (2, 3, 4) and not r.passed
    # a decomposition of the eps' map with eps' > 1/2 does not fit
    assert obstruction_audit(positive_form_above_half(0.8), eps).failed_step == 2


def test_audit_reaches_the_chain_for_exact_candidates():
    # tolerance wide enough to let a near miss through step 2 and 3
    S = positive_form_above_half(0.51)
    r = obstruction_audit(S, 0.49, tol=0.1)
    assert r.failed_step == 4 and "contradiction" in r.steps[-1].detail


def test_audit_flags_non_positive_candidates():
    S = explicit_hermitian_form(0.25)
    r = obstruction_audit(S, 0.25)
    assert r.failed_step == 1
    with pytest.raises(DimensionError):
        obstruction_audit(OpSum.from_pairs([(np.eye(3), np.eye(3))]), 0.25)


def test_obstruction_lines():
    assert obstruction_lines(0.25)[-1] == "0.25 >= 0.75 is false -> no all-positive form"
    assert "no conclusion" in obstruction_lines(0.75)[-1]


def test_fs_zero_test(rng):
    B = [random_cmat(2, rng) for _ in range(3)]
    A = [random_cmat(2, rng) for _ in range(3)]
    r = fs_zero_test(A, B)
    assert r.equivalent and not r.phi_zero
    r = fs_zero_test([np.zeros((2, 2))] * 3, B)
    assert r.equivalent and r.phi_zero
    with pytest.raises(ValueError):
        fs_zero_test(A, [B[0], B[0], B[1]])


def test_fs_dependent_test(rng):
    B = [random_cmat(2, rng) for _ in range(2)]
    c = rng.standard_normal((2, 1)) + 1j * rng.standard_normal((2, 1))
    B3 = c[0, 0] * B[0] + c[1, 0] * B[1]
    A3 = random_cmat(2, rng)
    A = [-c[0, 0] * A3, -c[1, 0] * A3, A3]
    r = fs_dependent_test(A, B + [B3], 2, c)
    assert r.phi_zero and r.coefficients_zero
    A[0] = A[0] + 1e-6
    r = fs_dependent_test(A, B + [B3], 2, c)
    assert not r.phi_zero and not r.coefficients_zero
    with pytest.raises(ValueError):
        fs_dependent_test(A, B + [B3 + 1], 2, c)
