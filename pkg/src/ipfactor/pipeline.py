"""End-to-end decomposition of an inner product on ``M_n(C)``."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DecompositionError, NotPositiveError, NotSelfAdjointError
from .hermitize import hermitian_form
from .positivize import (
    Certificate,
    ConditionReport,
    ShiftLedger,
    make_certificate,
    minus_one_form,
    positivize_single,
    positivize_two,
    try_all_positive,
)
from .superop import MapLike, OpSum, from_supermat, is_positive_definite, is_self_adjoint, to_supermat

REQUESTS = ("opsum", "hermitian", "positive", "minus-one", "auto")


@dataclass
class Validation:
    self_adjoint: bool
    defect: float
    min_eig: float | None
    definite: bool = False

    @property
    def inner_product(self) -> bool:
        return self.self_adjoint and self.definite


def validate(target: MapLike) -> Validation:
    """Does ``(X, Y) -> trace(Y^* A(X))`` define an inner product?"""
    ok, defect = is_self_adjoint(target)
    if not ok:
        return Validation(False, defect, None)
    definite, lam = is_positive_definite(target)
    return Validation(True, defect, lam, definite)


@dataclass
class Outcome:
    """Result of :func:`decompose`.

    ``certificate`` is the strongest form produced; ``achieved`` tells
    whether it is the requested one.  ``report`` is set when an all-positive
    form was requested but only the minus-one form could be certified.
    """

    certificate: Certificate
    achieved: bool
    route: str
    report: ConditionReport | None = None


def _positive(H: OpSum, target, rng) -> tuple[Certificate, ConditionReport | None]:
    if H.m == 1:
        return positivize_single(H, target), None
    if H.m == 2:
        return positivize_two(H, target, rng), None
    cert = minus_one_form(H, target, rng)
    result = try_all_positive(cert, target, rng)
    if isinstance(result, ConditionReport):
        return cert, result
    return result, None


def decompose(target: MapLike, form: str = "auto", rng=None) -> Outcome:
    """Run the pipeline up to ``form``.

    ``form`` is one of ``opsum``, ``hermitian``, ``positive``,
    ``minus-one`` or ``auto`` (strongest achievable).  Raises
    :class:`NotSelfAdjointError` / :class:`NotPositiveError` when the map
    does not define an inner product.
    """
    if form not in REQUESTS:
        raise ValueError(f"unknown form {form!r}; expected one of {REQUESTS}")
    M = to_supermat(target)
    v = validate(M)
    if not v.self_adjoint:
        raise NotSelfAdjointError(f"map is not self-adjoint (defect {v.defect:.3g})")
    if not v.inner_product:
        raise NotPositiveError(f"map is not positive definite (min eigenvalue {v.min_eig:.3g})")
    if form == "opsum":
        R = from_supermat(M)
        cert = make_certificate("operator_sum", R, np.ones(R.m, dtype=int), M, ShiftLedger())
        return Outcome(cert, True, "svd")
    H, route = hermitian_form(from_supermat(M))
    if form == "hermitian":
        cert = make_certificate("hermitian", H, np.ones(H.m, dtype=int), M, ShiftLedger())
        return Outcome(cert, True, route)
    if form == "minus-one":
        return Outcome(minus_one_form(H, M, rng), True, route)
    if isinstance(target, OpSum):
        try:
            cert = make_certificate("all_positive", target, np.ones(target.m, dtype=int), M, ShiftLedger())
            return Outcome(cert, True, "input")
        except DecompositionError:
            pass
    cert, report = _positive(H, M, rng)
    achieved = cert.form == "all_positive" or form == "auto"
    return Outcome(cert, achieved, route, report)
