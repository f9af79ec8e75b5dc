"""Positive-pair forms of positive-definite maps.

Input is a positive-definite map given by Hermitian pairs
``X -> sum_i A_i X B_i``.  The steps below rewrite the sum term by term,
each rewrite leaving the map unchanged:

* :func:`probe_rewrite`   -- make ``B_1`` positive using a probe vector;
* :func:`beta_shift`      -- make ``B_2`` positive;
* :func:`pencil_step`     -- make ``A_2`` positive via the pencil ``B_1 - t B_2``;
* :func:`beta_i_shifts`   -- make the remaining ``B_i`` positive;

which together give :func:`make_b_positive`.  On top of that,
:func:`positivize_two` handles two terms completely, :func:`minus_one_form`
produces ``-A_1 X B_1 + sum_{i>=2} A_i X B_i`` with every matrix positive
for any number of terms, and :func:`try_all_positive` attempts to remove
the minus sign using the ``xi``-rewrite.

"Positive" is always numerical: smallest eigenvalue above
``pos_margin * max(1, ||H||_2)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import tolerances
from .exceptions import BackoffExhausted, DecompositionError, NotPositiveError
from .hermitize import balance_pairs
from .matspace import (
    check_hermitian,
    hermitian_defect,
    is_positive,
    min_eig,
    pencil_min,
    positive_margin,
    positivity_threshold,
)
from .superop import OpSum, MapLike, is_positive_definite, map_scale, max_unit_deviation, to_supermat

FORMS = ("operator_sum", "hermitian", "all_positive", "minus_one", "semi_positive")

MAX_HALVINGS = 60
MAX_PROBES = 32
# relative slack on top of exact spectral shift bounds; smaller values leave
# nearly singular matrices that later shifts amplify
SHIFT_SLACK = 0.1


@dataclass
class ShiftLedger:
    """Scalar bookkeeping of the rewrites that produced a certificate."""

    alpha: list = field(default_factory=list)  # probe values x0^* A_i x0
    beta: list = field(default_factory=list)  # beta, then beta_i (i >= 3)
    gamma: list = field(default_factory=list)  # y0^* B_i y0 (i >= 2)
    eta: list = field(default_factory=list)
    xi: list = field(default_factory=list)
    t0: float | None = None
    eps_backoff: float | None = None
    alpha_shift: float | None = None
    steps: list = field(default_factory=list)

    def record(self, name: str, **values) -> None:
        self.steps.append({"step": name, **{k: _plain(v) for k, v in values.items()}})

    def to_dict(self) -> dict:
        return {
            "alpha": _plain(self.alpha),
            "beta": _plain(self.beta),
            "gamma": _plain(self.gamma),
            "eta": _plain(self.eta),
            "xi": _plain(self.xi),
            "t0": self.t0,
            "eps_backoff": self.eps_backoff,
            "alpha_shift": self.alpha_shift,
            "steps": self.steps,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ShiftLedger":
        return cls(**{k: d.get(k, v) for k, v in cls().__dict__.items()})


def _plain(v):
    if isinstance(v, np.ndarray):
        return [_plain(x) for x in v.tolist()]
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, complex):
        return [v.real, v.imag]
    return v


def claimed_positive(form: str, m: int) -> list[tuple[int, str]]:
    """Which matrices a certificate of ``form`` claims to be positive."""
    if form in ("all_positive", "minus_one"):
        return [(i, side) for i in range(m) for side in "AB"]
    if form == "semi_positive":
        return [(0, "A")] + [(i, "B") for i in range(m)]
    return []


def claimed_hermitian(form: str, m: int) -> list[tuple[int, str]]:
    if form == "operator_sum":
        return []
    return [(i, side) for i in range(m) for side in "AB"]


@dataclass
class Certificate:
    """A decomposition ``X -> sum_i signs[i] A_i X B_i`` plus its checks."""

    form: str
    pairs: OpSum
    signs: np.ndarray
    residual: float
    margins: np.ndarray
    ledger: ShiftLedger = field(default_factory=ShiftLedger)

    @property
    def m(self) -> int:
        return self.pairs.m

    def signed(self) -> OpSum:
        return OpSum(self.signs[:, None, None] * self.pairs.E, self.pairs.F)


@dataclass
class CheckResult:
    name: str
    ok: bool
    value: float
    limit: float


@dataclass
class VerificationReport:
    checks: list

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failed(self) -> list:
        return [c.name for c in self.checks if not c.ok]


def _matrix(pairs: OpSum, i: int, side: str) -> np.ndarray:
    return pairs.E[i] if side == "A" else pairs.F[i]


def verify_certificate(form: str, pairs: OpSum, signs, target: MapLike) -> VerificationReport:
    """Recompute every certificate check from the pairs and signs alone."""
    tol = tolerances()
    signs = np.asarray(signs)
    checks = []
    neg = np.flatnonzero(signs < 0)
    sign_ok = (
        form in FORMS
        and signs.shape == (pairs.m,)
        and np.all(np.isin(signs, (-1, 1)))
        and (len(neg) == 0 or (len(neg) == 1 and neg[0] == 0))
        and (form != "minus_one" or (len(neg) == 1 and neg[0] == 0))
        and (form not in ("all_positive", "semi_positive", "hermitian") or len(neg) == 0)
    )
    checks.append(CheckResult("signs", bool(sign_ok), float(len(neg)), 1.0))
    if signs.shape == (pairs.m,):
        signed = OpSum(signs[:, None, None] * pairs.E, pairs.F)
        residual = max_unit_deviation(signed, target) if pairs.m else float(
            np.linalg.norm(to_supermat(target))
        )
    else:
        residual = np.inf
    limit = tol.residual * map_scale(target)
    checks.append(CheckResult("residual", residual <= limit, float(residual), limit))
    for i, side in claimed_hermitian(form, pairs.m):
        H = _matrix(pairs, i, side)
        d = hermitian_defect(H)
        checks.append(CheckResult(f"hermitian:{side}{i + 1}", d <= tol.tol_herm, d, tol.tol_herm))
    for i, side in claimed_positive(form, pairs.m):
        H = _matrix(pairs, i, side)
        lam = min_eig(H)
        thr = positivity_threshold(H)
        checks.append(CheckResult(f"positive:{side}{i + 1}", lam > thr, lam, thr))
    return VerificationReport(checks)


def make_certificate(form: str, pairs: OpSum, signs, target: MapLike, ledger: ShiftLedger | None = None) -> Certificate:
    """Assemble a certificate, computing residual and margins; raise if any check fails."""
    signs = np.asarray(signs, dtype=int)
    report = verify_certificate(form, pairs, signs, target)
    if not report.ok:
        detail = ", ".join(f"{c.name}={c.value:.3g}" for c in report.checks if not c.ok)
        raise DecompositionError(f"{form} certificate fails: {detail}")
    residual = next(c.value for c in report.checks if c.name == "residual")
    margins = np.array([c.value for c in report.checks if c.name.startswith("positive:")])
    return Certificate(form, pairs, signs, residual, margins, ledger or ShiftLedger())


# ---------------------------------------------------------------------------
# helpers


def _hermitian_pairs(S: OpSum) -> OpSum:
    A = np.stack([check_hermitian(a, f"A{i + 1}") for i, a in enumerate(S.E)])
    B = np.stack([check_hermitian(b, f"B{i + 1}") for i, b in enumerate(S.F)])
    return OpSum(A, B)


def _require_definite(S: OpSum) -> None:
    ok, lam = is_positive_definite(S)
    if not ok:
        raise NotPositiveError(f"map is not positive definite (min eigenvalue {lam:.3g})")


def _balanced(A, B) -> OpSum:
    A, B = balance_pairs(np.asarray(A), np.asarray(B))
    return OpSum(A, B)


def positive_shift(P, Q, delta: float | None = None) -> float:
    """A constant ``s > 0`` with ``P + s Q`` positive (``Q`` positive).

    ``P + s Q`` is singular exactly at ``s = -t`` for roots ``t`` of the
    pencil ``(P, Q)``, so ``s* = max(0, -t_min)`` is the exact bound; a
    relative slack ``delta * max(1, s*)`` is added and escalated tenfold
    until the positivity margin is cleared.
    """
    delta = SHIFT_SLACK if delta is None else delta
    t_min, _ = pencil_min(P, Q)
    bound = max(0.0, -t_min)
    for _ in range(12):
        s = bound + delta * max(1.0, bound)
        if is_positive(P + s * Q):
            return s
        delta *= 10
    raise DecompositionError("could not find a positivising shift")


# ---------------------------------------------------------------------------
# proof steps; each takes and returns Hermitian-pair operator sums for the same map


def probe_rewrite(S: OpSum, ledger: ShiftLedger | None = None, rng=None) -> OpSum:
    """Make the first ``B`` positive.

    For a probe ``x0`` the numbers ``alpha_i = x0^* A_i x0`` make
    ``W = sum_i alpha_i B_i`` positive.  With the largest ``|alpha_i|`` moved
    to the front, ``A(X) = (A_1/alpha_1) X W + sum_{i>=2} (A_i - alpha_i/alpha_1 A_1) X B_i``.
    The probe is ``e_1`` unless that gives a poorly conditioned ``W``, in
    which case up to 32 seeded random probes are tried and the best kept.
    """
    ledger = ShiftLedger() if ledger is None else ledger
    n = S.dim
    rng = np.random.default_rng(0) if rng is None else rng

    def evaluate(x):
        alpha = np.einsum("i,mij,j->m", np.conj(x), S.E, x).real
        if np.max(np.abs(alpha)) <= 1e-12 * max(1.0, np.abs(S.E).max()):
            return alpha, None, -np.inf
        W = np.einsum("m,mij->ij", alpha, S.F)
        score = min_eig(W) / max(1e-300, float(np.linalg.norm(W, 2)))
        return alpha, W, score

    x0 = np.zeros(n, dtype=complex)
    x0[0] = 1
    best = (x0, *evaluate(x0))
    if best[3] < 1e-3:
        for _ in range(MAX_PROBES):
            x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            x /= np.linalg.norm(x)
            cand = (x, *evaluate(x))
            if cand[3] > best[3]:
                best = cand
    x0, alpha, W, _ = best
    if W is None or not is_positive(W):
        raise NotPositiveError("no probe vector makes sum alpha_i B_i positive; map is not positive definite")
    lead = int(np.argmax(np.abs(alpha)))
    order = [lead] + [i for i in range(S.m) if i != lead]
    A, B, alpha = S.E[order], S.F[order], alpha[order]
    newA = [A[0] / alpha[0]] + [A[i] - (alpha[i] / alpha[0]) * A[0] for i in range(1, S.m)]
    newB = [W] + [B[i] for i in range(1, S.m)]
    ledger.alpha = list(alpha)
    ledger.record("probe", probe=x0, alpha=alpha, order=order)
    return _balanced(newA, newB)


def beta_shift(S: OpSum, ledger: ShiftLedger | None = None) -> OpSum:
    """With ``B_1`` positive, make ``B_2`` positive.

    ``A(X) = (A_1 - beta A_2) X B_1 + A_2 X (B_2 + beta B_1) + ...``
    """
    ledger = ShiftLedger() if ledger is None else ledger
    A, B = S.E.copy(), S.F.copy()
    beta = positive_shift(B[1], B[0])
    A[0] = A[0] - beta * A[1]
    B[1] = B[1] + beta * B[0]
    ledger.beta.append(beta)
    ledger.record("beta_shift", beta=beta)
    return _balanced(A, B)


def relative_margin(H) -> float:
    """``min_eig(H) / ||H||_2`` (scale-free conditioning of a positive matrix)."""
    return min_eig(H) / max(1e-300, float(np.linalg.norm(H, 2)))


def _backoff(t0: float, pair) -> float | None:
    """Pick ``eps`` on the schedule ``t0/2, t0/4, ...`` (at most 60 halvings).

    ``pair(eps)`` returns the two matrices that must be positive.  Among
    the feasible points of the schedule the one with the largest smaller
    relative margin is chosen; the walk stops once feasibility has been
    reached and the balance starts to deteriorate.
    """
    eps = t0 / 2
    best, best_score = None, -np.inf
    for _ in range(MAX_HALVINGS):
        mats = pair(eps)
        if all(is_positive(H) for H in mats):
            score = min(relative_margin(H) for H in mats)
            if score <= best_score:
                break
            best, best_score = eps, score
        elif best is not None:
            break
        eps /= 2
    return best


def pencil_step(S: OpSum, ledger: ShiftLedger | None = None) -> OpSum:
    """With ``B_1, B_2`` positive, make the second ``A`` positive.

    ``t0`` is the first root of ``det(B_1 - t B_2)`` with kernel vector
    ``y0``; ``gamma_i = y0^* B_i y0``.  For small ``eps > 0`` both
    ``B_1 - (t0 - eps) B_2`` and
    ``gamma_2 (A_2 + (t0 - eps) A_1) + sum_{i>=3} gamma_i A_i`` are positive
    and the map is rewritten as

        A_1 X (B_1 - (t0-eps) B_2)
        + (gamma_2 (A_2 + (t0-eps) A_1) + sum gamma_i A_i) X B_2 / gamma_2
        + sum_{i>=3} A_i X (B_i - gamma_i / gamma_2 B_2).

    ``eps`` starts at ``t0 / 2`` and is halved until both are positive.
    """
    ledger = ShiftLedger() if ledger is None else ledger
    A, B = S.E, S.F
    t0, y0 = pencil_min(B[0], B[1])
    gamma = np.einsum("i,mij,j->m", np.conj(y0), B, y0).real
    gamma[0] = np.nan
    if not (t0 > 0 and gamma[1] > 0):
        raise DecompositionError(f"pencil step needs positive B_1, B_2 (t0={t0:.3g}, gamma_2={gamma[1]:.3g})")
    rest = np.einsum("m,mij->ij", gamma[2:], A[2:]) if S.m > 2 else 0

    def new_b1(eps):
        return B[0] - (t0 - eps) * B[1]

    def new_a2(eps):
        return gamma[1] * (A[1] + (t0 - eps) * A[0]) + rest

    eps = _backoff(t0, lambda e: (new_b1(e), new_a2(e)))
    if eps is None:
        margin = min(positive_margin(new_b1(t0 * 2.0**-MAX_HALVINGS)), positive_margin(new_a2(t0 * 2.0**-MAX_HALVINGS)))
        raise BackoffExhausted(f"epsilon back-off exhausted in pencil step (margin {margin:.3g})", margin)
    newA = [A[0], new_a2(eps)] + [A[i] for i in range(2, S.m)]
    newB = [new_b1(eps), B[1] / gamma[1]] + [B[i] - (gamma[i] / gamma[1]) * B[1] for i in range(2, S.m)]
    ledger.t0, ledger.eps_backoff = t0, eps
    ledger.gamma = list(gamma[1:])
    ledger.record("pencil", t0=t0, eps=eps, gamma=gamma[1:], y0=y0)
    return _balanced(newA, newB)


def beta_i_shifts(S: OpSum, ledger: ShiftLedger | None = None) -> OpSum:
    """With ``B_1`` positive, make ``B_i`` (``i >= 3``) positive.

    ``A(X) = (A_1 - sum beta_i A_i) X B_1 + A_2 X B_2 + sum A_i X (B_i + beta_i B_1)``
    """
    ledger = ShiftLedger() if ledger is None else ledger
    A, B = S.E.copy(), S.F.copy()
    betas = []
    for i in range(2, S.m):
        b = positive_shift(B[i], B[0])
        A[0] = A[0] - b * A[i]
        B[i] = B[i] + b * B[0]
        betas.append(b)
    ledger.beta.extend(betas)
    ledger.record("beta_i_shifts", beta=betas)
    return _balanced(A, B)


def swap_first_two(S: OpSum) -> OpSum:
    order = [1, 0] + list(range(2, S.m))
    return OpSum(S.E[order], S.F[order])


def make_b_positive(S: OpSum, rng=None) -> tuple[OpSum, ShiftLedger]:
    """Rewrite so every ``B_i`` and ``A_1`` are positive (``m >= 2``).

    Raises :class:`NotPositiveError` for a map that is not positive
    definite and :class:`BackoffExhausted` if the pencil back-off fails.
    """
    S = _hermitian_pairs(S)
    if S.m < 2:
        raise DecompositionError("make_b_positive needs at least two terms")
    _require_definite(S)
    ledger = ShiftLedger()
    S = probe_rewrite(S, ledger, rng)
    S = beta_shift(S, ledger)
    S = pencil_step(S, ledger)
    S = beta_i_shifts(S, ledger)
    return swap_first_two(S), ledger


def positivize_single(S: OpSum, target: MapLike | None = None) -> Certificate:
    """Positive pair for a one-term definite map ``A X B``.

    ``(x^* A x)(y^* B y) > 0`` for all nonzero ``x, y``, so ``A`` and ``B``
    are both positive or both negative; the sign is read off at the
    eigenvector of ``A`` with largest ``|eigenvalue|``.
    """
    S = _hermitian_pairs(S)
    if S.m != 1:
        raise DecompositionError("positivize_single needs exactly one term")
    _require_definite(S)
    target = S if target is None else target
    A, B = S.E[0], S.F[0]
    lam, V = np.linalg.eigh(A)
    k = int(np.argmax(np.abs(lam)))
    x = V[:, k]
    if np.real(np.conj(x) @ A @ x) < 0:
        A, B = -A, -B
    ledger = ShiftLedger()
    ledger.record("single", flipped=bool(np.real(np.conj(x) @ S.E[0] @ x) < 0))
    pairs = _balanced([A], [B])
    return make_certificate("all_positive", pairs, [1], target, ledger)


def positivize_two(S: OpSum, target: MapLike | None = None, rng=None) -> Certificate:
    """All-positive form of a two-term definite map.

    After :func:`make_b_positive`, ``A_1, B_1, B_2`` are positive.  The
    first root ``t0`` of ``det(B_1 - t B_2)`` makes ``A_2 + t0 A_1``
    positive; backing off to ``t0 - eps`` keeps both
    ``B_1 - (t0 - eps) B_2`` and ``A_2 + (t0 - eps) A_1`` positive, giving

        A(X) = A_1 X (B_1 - (t0-eps) B_2) + (A_2 + (t0-eps) A_1) X B_2.
    """
    target = S if target is None else target
    if S.m != 2:
        raise DecompositionError("positivize_two needs exactly two terms")
    S, ledger = make_b_positive(S, rng)
    A, B = S.E, S.F
    t0, y0 = pencil_min(B[0], B[1])

    def new_b1(eps):
        return B[0] - (t0 - eps) * B[1]

    def new_a2(eps):
        return A[1] + (t0 - eps) * A[0]

    eps = _backoff(t0, lambda e: (new_b1(e), new_a2(e)))
    if eps is None:
        margin = min(positive_margin(new_b1(t0 * 2.0**-MAX_HALVINGS)), positive_margin(new_a2(t0 * 2.0**-MAX_HALVINGS)))
        raise BackoffExhausted(f"epsilon back-off exhausted (margin {margin:.3g})", margin)
    ledger.t0, ledger.eps_backoff = t0, eps
    ledger.record("two_term_pencil", t0=t0, eps=eps, y0=y0)
    pairs = _balanced([A[0], new_a2(eps)], [new_b1(eps), B[1]])
    return make_certificate("all_positive", pairs, [1, 1], target, ledger)


def semi_positive_form(S: OpSum, target: MapLike | None = None, rng=None) -> Certificate:
    """Certificate for :func:`make_b_positive` (all ``B_i`` and ``A_1`` positive)."""
    target = S if target is None else target
    pairs, ledger = make_b_positive(S, rng)
    return make_certificate("semi_positive", pairs, np.ones(pairs.m, dtype=int), target, ledger)


def alpha_shift(S: OpSum, ledger: ShiftLedger | None = None) -> tuple[OpSum, np.ndarray]:
    """With ``A_1`` positive, split off a negative term.

    ``A(X) = A_1 X (B_1 + alpha B_2) - (alpha A_1 - A_2) X B_2 + ...`` with
    ``alpha A_1 - A_2`` positive.  Returns the new pairs and their signs.
    """
    ledger = ShiftLedger() if ledger is None else ledger
    A, B = S.E.copy(), S.F.copy()
    alpha = positive_shift(-A[1], A[0])
    B[0] = B[0] + alpha * B[1]
    A[1] = alpha * A[0] - A[1]
    ledger.alpha_shift = alpha
    ledger.record("alpha_shift", alpha=alpha)
    signs = np.ones(S.m, dtype=int)
    signs[1] = -1
    return _balanced(A, B), signs


def eta_shifts(S: OpSum, signs: np.ndarray, ledger: ShiftLedger | None = None) -> tuple[OpSum, np.ndarray]:
    """Make ``A_k`` (``k >= 3``) positive using the negative term's ``A_2``.

    ``A_1 X B_1 - A_2 X (B_2 + sum eta_k B_k) + sum (A_k + eta_k A_2) X B_k``;
    the result is reordered so the negative term comes first.
    """
    ledger = ShiftLedger() if ledger is None else ledger
    A, B = S.E.copy(), S.F.copy()
    etas = []
    for k in range(2, S.m):
        eta = positive_shift(A[k], A[1])
        B[1] = B[1] + eta * B[k]
        A[k] = A[k] + eta * A[1]
        etas.append(eta)
    ledger.eta = etas
    ledger.record("eta_shifts", eta=etas)
    order = [1, 0] + list(range(2, S.m))
    S = _balanced(A[order], B[order])
    return S, signs[order]


def minus_one_form(S: OpSum, target: MapLike | None = None, rng=None) -> Certificate:
    """``-A_1 X B_1 + sum_{i>=2} A_i X B_i`` with every matrix positive.

    For a single term the positive pair ``(A, B)`` is written as
    ``-A X B + A X (2B)``.
    """
    target = S if target is None else target
    if S.m == 1:
        single = positivize_single(S, target)
        A, B = single.pairs.E[0], single.pairs.F[0]
        ledger = single.ledger
        ledger.record("split_single")
        pairs = _balanced([A, A], [B, 2 * B])
        return make_certificate("minus_one", pairs, [-1, 1], target, ledger)
    S, ledger = make_b_positive(S, rng)
    S, signs = alpha_shift(S, ledger)
    S, signs = eta_shifts(S, signs, ledger)
    return make_certificate("minus_one", S, signs, target, ledger)


@dataclass
class ConditionReport:
    """Outcome of a failed attempt to remove the minus sign.

    The sufficient condition tested is not necessary, so a report never
    implies that no all-positive form exists.
    """

    xi_bar: list
    deltas: list
    best_margin: float
    reason: str

    def to_dict(self) -> dict:
        return {"xi_bar": _plain(self.xi_bar), "deltas": list(self.deltas), "best_margin": self.best_margin, "reason": self.reason}


XI_DELTAS = (1e-2, 1e-4, 1e-6)


def try_all_positive(cert: Certificate, target: MapLike | None = None, rng=None):
    """Try to turn a minus-one certificate into an all-positive one.

    With ``xi_bar_k`` the first root of ``det(B_k - xi B_1)``, the matrices
    ``B_k - xi_k B_1`` are positive exactly when ``xi_k < xi_bar_k``.  Since
    every ``A_k`` is positive, ``-A_1 + sum xi_k A_k`` only improves as the
    ``xi_k`` grow, so testing ``xi_k = (1 - delta) xi_bar_k`` is exhaustive
    up to ``delta``.  On success

        A(X) = (-A_1 + sum xi_k A_k) X B_1 + sum A_k X (B_k - xi_k B_1).

    Returns an all-positive :class:`Certificate` or a :class:`ConditionReport`.
    Two-term certificates that fail the test go through
    :func:`positivize_two`, which always succeeds for definite maps.
    """
    if target is None:
        target = cert.signed()
    report = verify_certificate("minus_one", cert.pairs, cert.signs, target)
    if cert.form != "minus_one" or not report.ok:
        raise DecompositionError(f"not a valid minus_one certificate ({', '.join(report.failed)})")
    A, B = cert.pairs.E, cert.pairs.F
    xi_bar = np.array([pencil_min(B[k], B[0])[0] for k in range(1, cert.m)])
    best = -np.inf
    for delta in XI_DELTAS:
        xi = (1 - delta) * xi_bar
        N = -A[0] + np.einsum("k,kij->ij", xi, A[1:])
        shifted = [B[k] - xi[k - 1] * B[0] for k in range(1, cert.m)]
        best = max(best, positive_margin(N))
        if is_positive(N) and all(is_positive(b) for b in shifted):
            ledger = ShiftLedger(**{**cert.ledger.__dict__, "steps": list(cert.ledger.steps)})
            ledger.xi = list(xi)
            ledger.record("xi_rewrite", xi=xi, delta=delta)
            pairs = _balanced([N] + list(A[1:]), [B[0]] + shifted)
            return make_certificate("all_positive", pairs, np.ones(cert.m, dtype=int), target, ledger)
    if cert.m == 2:
        herm = OpSum(cert.signs[:, None, None] * A, B)
        return positivize_two(herm, target, rng)
    return ConditionReport(
        xi_bar=list(xi_bar),
        deltas=list(XI_DELTAS),
        best_margin=float(best),
        reason="-A_1 + sum xi_k A_k is not positive at the extreme feasible xi",
    )
