"""Global numerical tolerances.

Every threshold used by the library lives here so that a single knob can
loosen or tighten the whole pipeline.  Setting the environment variable
``IPFACTOR_TOL`` to a positive float multiplies all tolerances by that
factor (e.g. ``IPFACTOR_TOL=10`` makes every check ten times looser).
"""
from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from functools import lru_cache


@dataclass(frozen=True)
class Tolerances:
    # Hermitian defect ||H - H*||_F relative to max(1, ||H||_F)
    tol_herm: float = 1e-10
    # positivity margin: min_eig > pos_margin * max(1, ||H||_2)
    pos_margin: float = 1e-10
    # singular-value cutoff for realignment rank (relative to sigma_max)
    svd_cutoff: float = 1e-9
    # self-adjointness defect of the representing matrix
    self_adjoint: float = 1e-8
    # apply-equivalence of two representations of the same map
    residual: float = 1e-8
    # linear-independence test (sigma_min / sigma_max)
    independence: float = 1e-8
    # least-squares closure of E_k^* in span{E_j}
    closure: float = 1e-8
    # C conj(C) = I, D conj(D) = I checks (per unit of m)
    involution: float = 1e-8
    conj_sqrt: float = 1e-7
    # purely-imaginary logarithm check
    skew_log: float = 1e-7
    # angular clearance of eigenvalues from a branch cut
    branch_clearance: float = 1e-6

    def scaled(self, factor: float) -> "Tolerances":
        return replace(self, **{f.name: getattr(self, f.name) * factor for f in fields(self)})


@lru_cache(maxsize=None)
def _from_env(raw: str | None) -> Tolerances:
    base = Tolerances()
    if not raw:
        return base
    factor = float(raw)
    if not factor > 0:
        raise ValueError(f"IPFACTOR_TOL must be a positive number, got {raw!r}")
    return base.scaled(factor)


def tolerances() -> Tolerances:
    """Current tolerance record, honouring ``IPFACTOR_TOL``."""
    return _from_env(os.environ.get("IPFACTOR_TOL"))
