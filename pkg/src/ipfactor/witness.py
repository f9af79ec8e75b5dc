"""The epsilon-map counterexample and related executable checks.

For ``0 < eps < 1`` the map

    [[x, y], [w, z]]  ->  [[x + (1-eps) z, eps y], [eps w, z + (1-eps) x]]

on 2x2 matrices is positive definite under the trace pairing, yet for
``eps < 1/2`` it has no decomposition ``sum A_i X B_i`` with all ``A_i``,
``B_i`` positive.  :func:`obstruction_audit` replays the entry-wise
argument on any candidate decomposition and reports where it breaks.

The Fong-Sourour checks (:func:`fs_zero_test`, :func:`fs_dependent_test`)
compare the two sides of the vanishing criteria for ``X -> sum A_j X B_j``
numerically.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import DimensionError
from .matspace import as_cmat, fro, min_eig, positivity_threshold, hermitian_defect
from .config import tolerances
from .positivize import Certificate, make_certificate
from .superop import OpSum, apply, independence_ratio, max_unit_deviation, to_supermat

E11 = np.array([[1, 0], [0, 0]], dtype=complex)
E12 = np.array([[0, 1], [0, 0]], dtype=complex)
E21 = np.array([[0, 0], [1, 0]], dtype=complex)
E22 = np.array([[0, 0], [0, 1]], dtype=complex)


def _check_epsilon(epsilon: float) -> float:
    epsilon = float(epsilon)
    if not 0 < epsilon < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    return epsilon


@dataclass(frozen=True)
class EpsilonMap:
    """The counterexample map for a given ``epsilon``.

    ``epsilon >= 1/2`` is accepted for experiments; the obstruction only
    applies on ``(0, 1/2)``.
    """

    epsilon: float
    opsum: OpSum
    supermat: np.ndarray

    @property
    def obstructed(self) -> bool:
        return self.epsilon < 0.5

    def closed_form(self, X) -> np.ndarray:
        X = as_cmat(X, "X")
        if X.shape != (2, 2):
            raise DimensionError("the epsilon map acts on 2x2 matrices")
        e = self.epsilon
        (x, y), (w, z) = X
        return np.array([[x + (1 - e) * z, e * y], [e * w, z + (1 - e) * x]])

    def __call__(self, X) -> np.ndarray:
        return apply(self.opsum, X)


def counterexample_map(epsilon: float) -> EpsilonMap:
    """The epsilon map as four matrix-unit terms plus its supermatrix."""
    e = _check_epsilon(epsilon)
    opsum = OpSum.from_pairs(
        [
            (np.diag([1, e]), E11),
            ((1 - e) * E12, E21),
            ((1 - e) * E21, E12),
            (np.diag([e, 1]), E22),
        ]
    )
    return EpsilonMap(e, opsum, to_supermat(opsum))


def quadratic_form(eps_map: EpsilonMap, X) -> float:
    """``<A X, X> = eps (|x|^2 + |y|^2 + |w|^2 + |z|^2) + (1 - eps) |x + z|^2``."""
    X = as_cmat(X, "X")
    e = eps_map.epsilon
    (x, y), (w, z) = X
    return float(e * np.sum(np.abs(X) ** 2) + (1 - e) * abs(x + z) ** 2)


def explicit_hermitian_form(epsilon: float) -> OpSum:
    """Four Hermitian pairs for the epsilon map (off-diagonal blocks ``(1 +- i)/2``)."""
    e = _check_epsilon(epsilon)
    P = np.array([[0, (1 - 1j) / 2], [(1 + 1j) / 2, 0]])
    Q = np.array([[0, (1 + 1j) / 2], [(1 - 1j) / 2, 0]])
    return OpSum.from_pairs(
        [
            (np.diag([1, e]), E11),
            ((1 - e) * P, P),
            ((1 - e) * Q, Q),
            (np.diag([e, 1]), E22),
        ]
    )


def explicit_minus_one_pairs() -> tuple[OpSum, np.ndarray]:
    """The explicit positive pairs and signs for ``epsilon = 1/4``.

    The common factor ``1/32`` is carried by the left matrices.
    """
    A = [
        [[1, 2], [2, 16]],
        [[3, 9 - 1j], [9 + 1j, 56]],
        [[3, 9 + 1j], [9 - 1j, 56]],
        [[1, 0], [0, 8]],
    ]
    B = [
        [[279, 48], [48, 36]],
        [[31, 6 - 6j], [6 + 6j, 4]],
        [[31, 6 + 6j], [6 - 6j, 4]],
        [[125, 12], [12, 20]],
    ]
    pairs = OpSum(np.array(A, dtype=complex) / 32, np.array(B, dtype=complex))
    return pairs, np.array([-1, 1, 1, 1])


def explicit_decompositions(epsilon: float) -> tuple[OpSum, Certificate | None]:
    """The explicit decompositions: Hermitian form, and for ``epsilon = 1/4`` the minus-one form."""
    herm = explicit_hermitian_form(epsilon)
    if epsilon != 0.25:
        return herm, None
    pairs, signs = explicit_minus_one_pairs()
    cert = make_certificate("minus_one", pairs, signs, counterexample_map(0.25).supermat)
    return herm, cert


def positive_form_above_half(epsilon: float, shrink: float | None = None) -> OpSum:
    """All-positive pairs for the epsilon map when ``epsilon > 1/2``.

    The map equals ``eps X + (1 - eps) trace(X) I``, and with Pauli matrices
    ``s`` and ``0 < r < 1``

        trace(X) I = (1/2 - 3/(2 r^2)) X + 1/(4 r^2) sum_{s, +-} (I +- r s) X (I +- r s),

    so ``(eps + (1 - eps)(r^2 - 3)/(2 r^2)) X`` plus six positive terms.  The
    leading coefficient is positive for ``r`` close enough to 1 exactly when
    ``eps > 1/2``.
    """
    e = _check_epsilon(epsilon)
    if e <= 0.5:
        raise ValueError("this construction needs epsilon > 1/2")
    if shrink is None:
        # r^2 = 3(1-e)/(1+e) zeroes the identity weight; stay halfway to 1
        r2_min = 3 * (1 - e) / (1 + e)
        shrink = np.sqrt((r2_min + 1) / 2)
    r = float(shrink)
    c = e + (1 - e) * (r * r - 3) / (2 * r * r)
    if not (0 < r < 1 and c > 0):
        raise ValueError(f"shrink={r} does not give positive weights for epsilon={e}")
    I = np.eye(2)
    paulis = [np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.array([[1, 0], [0, -1]])]
    w = (1 - e) / (4 * r * r)
    pairs = [(np.sqrt(c) * I, np.sqrt(c) * I)]
    for s in paulis:
        for sign in (1, -1):
            P = I + sign * r * s
            pairs.append((np.sqrt(w) * P, np.sqrt(w) * P))
    return OpSum.from_pairs(pairs)


@dataclass
class AuditStep:
    step: int
    name: str
    ok: bool
    detail: str


@dataclass
class AuditReport:
    """Ordered first-failure audit of a candidate positive decomposition."""

    epsilon: float
    steps: list = field(default_factory=list)
    chain: dict = field(default_factory=dict)

    @property
    def failed_step(self) -> int | None:
        for s in self.steps:
            if not s.ok:
                return s.step
        return None

    @property
    def passed(self) -> bool:
        return self.failed_step is None and len(self.steps) == 4

    @property
    def inconsistent(self) -> bool:
        """A fully passing audit below 1/2 cannot happen in exact arithmetic."""
        return self.passed and self.epsilon < 0.5

    def lines(self) -> list[str]:
        out = [f"[{'ok' if s.ok else 'FAIL'}] step {s.step} {s.name}: {s.detail}" for s in self.steps]
        return out


def obstruction_chain(epsilon: float, A: np.ndarray, B: np.ndarray) -> dict:
    """Entry bookkeeping and the AM-GM chain for 2x2 pairs ``A_i``, ``B_i``.

    With ``A_i = [[a_i, g_i], [conj g_i, b_i]]`` and ``B_i`` likewise
    (primed), a valid positive decomposition forces
    ``sum a_i b'_i = sum b_i a'_i = eps`` and ``sum g_i conj(g'_i) = 1 - eps``,
    and positivity gives

        eps = sum (a_i b'_i + b_i a'_i)/2 >= sum sqrt(a_i b'_i b_i a'_i)
            >= sum |g_i||g'_i| >= |sum g_i conj(g'_i)| = 1 - eps.
    """
    a, g, b = A[:, 0, 0].real, A[:, 0, 1], A[:, 1, 1].real
    ap, gp, bp = B[:, 0, 0].real, B[:, 0, 1], B[:, 1, 1].real
    s_ab = float(np.sum(a * bp))
    s_ba = float(np.sum(b * ap))
    s_gg = complex(np.sum(g * np.conj(gp)))
    return {
        "epsilon": epsilon,
        "sum_alpha_betap": s_ab,
        "sum_beta_alphap": s_ba,
        "sum_gamma_conj_gammap": s_gg,
        "arithmetic_mean": (s_ab + s_ba) / 2,
        "geometric_mean": float(np.sum(np.sqrt(np.clip(a * bp * b * ap, 0, None)))),
        "cauchy_schwarz": float(np.sum(np.abs(g) * np.abs(gp))),
        "modulus": abs(s_gg),
        "one_minus_epsilon": 1 - epsilon,
    }


def obstruction_audit(candidate, epsilon: float, tol: float = 1e-8) -> AuditReport:
    """Audit a candidate all-positive decomposition of the epsilon map.

    Steps, stopping at the first failure:

    1. every ``A_i``, ``B_i`` is positive;
    2. the candidate reproduces the epsilon map on every matrix unit;
    3. the entry sums equal ``eps``, ``eps`` and ``1 - eps``;
    4. the AM-GM chain ``eps >= ... >= 1 - eps`` holds, which is
       impossible for ``eps < 1/2`` (the audit then fails with the
       contradiction).
    """
    e = float(epsilon)
    pairs = candidate if isinstance(candidate, OpSum) else OpSum.from_pairs(candidate)
    if pairs.dim != 2:
        raise DimensionError("the obstruction audit applies to 2x2 matrices")
    report = AuditReport(e)
    A, B = pairs.E, pairs.F
    report.chain = obstruction_chain(e, A, B)

    bad = []
    for i in range(pairs.m):
        for side, H in (("A", A[i]), ("B", B[i])):
            herm = hermitian_defect(H) <= tolerances().tol_herm
            if not herm or min_eig(H) <= positivity_threshold(H):
                bad.append(f"{side}{i + 1}" + ("" if herm else " (not Hermitian)"))
    report.steps.append(AuditStep(1, "positivity", not bad, "all matrices positive" if not bad else "not positive: " + ", ".join(bad)))
    if bad:
        return report

    target = counterexample_map(e).supermat
    res = max_unit_deviation(pairs, target)
    report.steps.append(AuditStep(2, "reconstruction", res <= tol, f"max matrix-unit deviation {res:.3g} (limit {tol:g})"))
    if res > tol:
        return report

    c = report.chain
    devs = [abs(c["sum_alpha_betap"] - e), abs(c["sum_beta_alphap"] - e), abs(c["sum_gamma_conj_gammap"] - (1 - e))]
    ok3 = max(devs) <= tol
    report.steps.append(
        AuditStep(
            3,
            "entry sums",
            ok3,
            f"sum a b' = {c['sum_alpha_betap']:.6g}, sum b a' = {c['sum_beta_alphap']:.6g}, "
            f"sum g conj(g') = {c['sum_gamma_conj_gammap'].real:.6g}{c['sum_gamma_conj_gammap'].imag:+.3g}i",
        )
    )
    if not ok3:
        return report

    chain_ok = (
        c["arithmetic_mean"] >= c["geometric_mean"] - tol
        and c["geometric_mean"] >= c["cauchy_schwarz"] - tol
        and c["cauchy_schwarz"] >= c["modulus"] - tol
    )
    contradiction = e < 0.5
    detail = (
        f"{c['arithmetic_mean']:.6g} >= {c['geometric_mean']:.6g} >= {c['cauchy_schwarz']:.6g} "
        f">= {c['modulus']:.6g} = 1 - eps; needs {e:g} >= {1 - e:g}"
    )
    if not chain_ok:
        detail += " (AM-GM chain broken: numerical inconsistency)"
    elif contradiction:
        detail += " -- false, contradiction"
    report.steps.append(AuditStep(4, "AM-GM chain", chain_ok and not contradiction, detail))
    return report


def obstruction_lines(epsilon: float) -> list[str]:
    """Human-readable summary of the argument for a given ``epsilon``."""
    e = float(epsilon)
    lines = [
        f"any positive decomposition forces sum a_i b'_i = sum b_i a'_i = {e:g} and sum g_i conj(g'_i) = {1 - e:g}",
        f"AM-GM and positivity give {e:g} >= sum |g_i||g'_i| >= |sum g_i conj(g'_i)| = {1 - e:g}",
    ]
    if e < 0.5:
        lines.append(f"{e:g} >= {1 - e:g} is false -> no all-positive form")
    else:
        lines.append(f"{e:g} >= {1 - e:g} holds -> inequality not violated (no conclusion)")
    return lines


# ---------------------------------------------------------------------------
# Fong-Sourour vanishing criteria


@dataclass
class FSReport:
    phi_norm: float
    phi_zero: bool
    coefficient_norm: float
    coefficients_zero: bool

    @property
    def equivalent(self) -> bool:
        return self.phi_zero == self.coefficients_zero


def _stack(mats, name) -> np.ndarray:
    arr = np.asarray([as_cmat(M, name) for M in mats])
    if arr.ndim != 3:
        raise DimensionError(f"{name} must be a list of square matrices")
    return arr


def fs_zero_test(A_list, B_list, tol: float = 1e-9) -> FSReport:
    """Compare ``Phi = 0`` with ``A_j = 0`` for all ``j`` (independent ``B``'s).

    ``Phi(X) = sum_j A_j X B_j``.  Both sides are judged with the same
    relative tolerance; the report carries the two verdicts.
    """
    A = _stack(A_list, "A")
    B = _stack(B_list, "B")
    if A.shape != B.shape:
        raise DimensionError("A_list and B_list must match")
    if independence_ratio(B) <= tolerances().independence:
        raise ValueError("B_list is linearly dependent; use fs_dependent_test")
    phi = fro(to_supermat(OpSum(A, B)))
    bscale = max(1.0, float(np.max(np.linalg.norm(B.reshape(len(B), -1), axis=1))))
    coef = float(np.max(np.linalg.norm(A.reshape(len(A), -1), axis=1)))
    return FSReport(phi, phi <= tol * bscale, coef, coef <= tol)


def fs_dependent_test(A_list, B_list, s: int, c, tol: float = 1e-9) -> FSReport:
    """Compare ``Phi = 0`` with ``A_k + sum_{j>s} c[k, j] A_j = 0`` for ``k <= s``.

    ``B_1..B_s`` must be independent and ``B_j = sum_{k<=s} c[k, j] B_k``
    for ``j > s``; ``c`` has shape ``(s, m - s)`` (column ``j - s`` holds
    the coefficients of ``B_j``, 1-based).
    """
    A = _stack(A_list, "A")
    B = _stack(B_list, "B")
    m = len(B)
    c = np.asarray(c, dtype=complex).reshape(s, m - s)
    if A.shape != B.shape or not 1 <= s < m:
        raise ValueError("malformed dependency data")
    if independence_ratio(B[:s]) <= tolerances().independence:
        raise ValueError("B_1..B_s must be linearly independent")
    recon = np.einsum("kj,kab->jab", c, B[:s])
    bscale = max(1.0, float(np.max(np.linalg.norm(B.reshape(m, -1), axis=1))))
    if fro(recon - B[s:]) > tol * bscale:
        raise ValueError("B_j != sum_k c[k, j] B_k for the dependent terms")
    phi = fro(to_supermat(OpSum(A, B)))
    coeffs = A[:s] + np.einsum("kj,jab->kab", c, A[s:])
    ascale = max(1.0, float(np.max(np.linalg.norm(A.reshape(m, -1), axis=1))))
    cnorm = float(np.max(np.linalg.norm(coeffs.reshape(s, -1), axis=1)))
    return FSReport(phi, phi <= tol * bscale * ascale, cnorm, cnorm <= tol * ascale)
