"""Inner products on complex matrix spaces and their operator-sum forms."""

__version__ = "0.1.0"

from .hermitize import conj_sqrt, hermitian_form, hermitize, hermitize_doubling
from .pipeline import decompose, validate
from .positivize import (
    Certificate,
    minus_one_form,
    positivize_single,
    positivize_two,
    try_all_positive,
    verify_certificate,
)
from .superop import OpSum, apply, from_supermat, realignment_rank, reduce, to_supermat
from .witness import counterexample_map, obstruction_audit

__all__ = [
    "Certificate",
    "OpSum",
    "apply",
    "conj_sqrt",
    "counterexample_map",
    "decompose",
    "from_supermat",
    "hermitian_form",
    "hermitize",
    "hermitize_doubling",
    "minus_one_form",
    "obstruction_audit",
    "positivize_single",
    "positivize_two",
    "realignment_rank",
    "reduce",
    "to_supermat",
    "try_all_positive",
    "validate",
    "verify_certificate",
]
