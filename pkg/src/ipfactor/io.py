"""JSON documents: problem specs and certificates.

Complex numbers are ``[re, im]`` pairs, matrices are row-major nested
lists, and supermatrices use the column-stacking vec convention
(recorded as ``"vec": "column"``).  Output is canonical: sorted keys, no
whitespace, floats with 17 significant digits.
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .exceptions import IPFactorError
from .positivize import Certificate, ShiftLedger, claimed_positive
from .superop import OpSum, to_supermat

VERSION = 1
VEC = "column"


class ParseError(IPFactorError):
    """Malformed or inconsistent JSON document."""


def _canon(v) -> str:
    if isinstance(v, dict):
        items = sorted(v.items())
        return "{" + ",".join(json.dumps(str(k)) + ":" + _canon(x) for k, x in items) + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ",".join(_canon(x) for x in v) + "]"
    if isinstance(v, (bool, np.bool_)) or v is None or isinstance(v, str):
        return json.dumps(v if not isinstance(v, np.bool_) else bool(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        x = float(v) + 0.0  # folds -0.0 into 0.0
        if not math.isfinite(x):
            raise ValueError(f"cannot serialize non-finite number {x}")
        s = format(x, ".17g")
        if "e" not in s and "." not in s and "n" not in s:
            s += ".0"
        return s
    if isinstance(v, np.ndarray):
        return _canon(v.tolist())
    raise TypeError(f"cannot serialize {type(v).__name__}")


def canonical_json(obj) -> str:
    return _canon(obj)


def sha256_hex(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def encode_matrix(M) -> list:
    M = np.asarray(M, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def decode_matrix(data, shape: tuple[int, int], what: str) -> np.ndarray:
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{what}: entries must be [re, im] number pairs") from exc
    if arr.shape != (*shape, 2):
        raise ParseError(f"{what}: expected shape {shape} of [re, im] pairs, got {arr.shape[:-1] if arr.ndim else ()}")
    if not np.all(np.isfinite(arr)):
        raise ParseError(f"{what}: non-finite entry")
    return arr[..., 0] + 1j * arr[..., 1]


# ---------------------------------------------------------------- problems


@dataclass
class Problem:
    """A parsed problem spec; ``target`` is what the pipeline consumes."""

    dim: int
    form: str
    target: OpSum | np.ndarray
    seed: int | None
    doc: dict

    @property
    def supermat(self) -> np.ndarray:
        return to_supermat(self.target)

    @property
    def hash(self) -> str:
        return problem_hash(self.doc)


def _normalized(doc: dict) -> dict:
    out = {k: doc[k] for k in ("version", "dim", "form", "data")}
    out["vec"] = doc.get("vec", VEC)
    if doc.get("seed") is not None:
        out["seed"] = doc["seed"]
    return json.loads(json.dumps(out), parse_int=int, parse_float=float)


def problem_hash(doc: dict) -> str:
    """Hex digest of the canonical form of a problem spec."""
    norm = _normalized(doc)
    norm["data"] = _floats(norm["data"])
    return sha256_hex(canonical_json(norm))


def _floats(v):
    # 1 and 1.0 must hash alike
    if isinstance(v, list):
        return [_floats(x) for x in v]
    if isinstance(v, dict):
        return {k: _floats(x) for k, x in v.items()}
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return float(v)
    return v


def parse_problem(doc) -> Problem:
    if not isinstance(doc, dict):
        raise ParseError("problem spec must be a JSON object")
    missing = [k for k in ("version", "dim", "form", "data") if k not in doc]
    if missing:
        raise ParseError(f"problem spec missing fields: {', '.join(missing)}")
    if doc["version"] != VERSION:
        raise ParseError(f"unsupported version {doc['version']!r}")
    if doc.get("vec", VEC) != VEC:
        raise ParseError(f"unsupported vec convention {doc['vec']!r}")
    n = doc["dim"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError("dim must be a positive integer")
    seed = doc.get("seed")
    if seed is not None and (not isinstance(seed, int) or isinstance(seed, bool)):
        raise ParseError("seed must be an integer")
    form = doc["form"]
    if form == "supermat":
        target = decode_matrix(doc["data"], (n * n, n * n), "supermat")
    elif form == "opsum":
        terms = doc["data"]
        if not isinstance(terms, list) or not all(isinstance(t, dict) for t in terms):
            raise ParseError("opsum data must be a list of {E, F} objects")
        pairs = []
        for i, t in enumerate(terms):
            if set(t) != {"E", "F"}:
                raise ParseError(f"term {i}: expected keys E and F")
            pairs.append((decode_matrix(t["E"], (n, n), f"term {i} E"), decode_matrix(t["F"], (n, n), f"term {i} F")))
        target = OpSum.from_pairs(pairs, n)
    else:
        raise ParseError(f"unknown form {form!r}")
    return Problem(n, form, target, seed, doc)


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def load_problem(path) -> Problem:
    return parse_problem(read_json(path))


def opsum_doc(S: OpSum, seed: int | None = None) -> dict:
    doc = {
        "version": VERSION,
        "dim": S.dim,
        "form": "opsum",
        "vec": VEC,
        "data": [{"E": encode_matrix(E), "F": encode_matrix(F)} for E, F in S.pairs],
    }
    if seed is not None:
        doc["seed"] = int(seed)
    return doc


def supermat_doc(M, seed: int | None = None) -> dict:
    M = np.asarray(M, dtype=complex)
    n = int(round(np.sqrt(M.shape[0])))
    doc = {"version": VERSION, "dim": n, "form": "supermat", "vec": VEC, "data": encode_matrix(M)}
    if seed is not None:
        doc["seed"] = int(seed)
    return doc


# ------------------------------------------------------------ certificates


@dataclass
class CertificateDoc:
    problem_hash: str
    form: str
    signs: np.ndarray
    pairs: OpSum
    residual: float
    margins: dict
    ledger: dict
    tool: str

    def to_dict(self) -> dict:
        return {
            "version": VERSION,
            "vec": VEC,
            "problem_hash": self.problem_hash,
            "form": self.form,
            "signs": [int(s) for s in self.signs],
            "pairs": [{"A": encode_matrix(A), "B": encode_matrix(B)} for A, B in self.pairs.pairs],
            "residual": float(self.residual),
            "margins": self.margins,
            "ledger": self.ledger,
            "tool": self.tool,
        }


def certificate_doc(cert: Certificate, phash: str) -> CertificateDoc:
    ledger = cert.ledger.to_dict() if isinstance(cert.ledger, ShiftLedger) else dict(cert.ledger or {})
    return CertificateDoc(
        problem_hash=phash,
        form=cert.form,
        signs=np.asarray(cert.signs, dtype=int),
        pairs=cert.pairs,
        residual=float(cert.residual),
        margins={f"{side}{i + 1}": float(v) for (i, side), v in zip(claimed_positive(cert.form, cert.m), cert.margins)},
        ledger=ledger,
        tool=f"ipfactor {__version__}",
    )


def parse_certificate(doc) -> CertificateDoc:
    if not isinstance(doc, dict):
        raise ParseError("certificate must be a JSON object")
    need = ("version", "problem_hash", "form", "signs", "pairs")
    missing = [k for k in need if k not in doc]
    if missing:
        raise ParseError(f"certificate missing fields: {', '.join(missing)}")
    if doc["version"] != VERSION:
        raise ParseError(f"unsupported version {doc['version']!r}")
    if doc.get("vec", VEC) != VEC:
        raise ParseError(f"unsupported vec convention {doc['vec']!r}")
    pairs = doc["pairs"]
    if not isinstance(pairs, list) or not pairs:
        raise ParseError("certificate needs a non-empty list of pairs")
    first = np.asarray(pairs[0].get("A", []) if isinstance(pairs[0], dict) else [], dtype=object)
    if first.ndim < 1:
        raise ParseError("pair 0: missing A")
    n = len(first)
    mats = []
    for i, p in enumerate(pairs):
        if not isinstance(p, dict) or set(p) != {"A", "B"}:
            raise ParseError(f"pair {i}: expected keys A and B")
        mats.append((decode_matrix(p["A"], (n, n), f"pair {i} A"), decode_matrix(p["B"], (n, n), f"pair {i} B")))
    signs = doc["signs"]
    if not isinstance(signs, list) or len(signs) != len(mats) or any(s not in (1, -1) for s in signs):
        raise ParseError("signs must be a list of +1/-1, one per pair")
    return CertificateDoc(
        problem_hash=str(doc["problem_hash"]),
        form=str(doc["form"]),
        signs=np.asarray(signs, dtype=int),
        pairs=OpSum.from_pairs(mats, n),
        residual=float(doc.get("residual", float("nan"))),
        margins=dict(doc.get("margins", {})),
        ledger=dict(doc.get("ledger", {})),
        tool=str(doc.get("tool", "")),
    )


def load_certificate(path) -> CertificateDoc:
    return parse_certificate(read_json(path))


def write_json(obj, path=None) -> str:
    """Canonical JSON text (newline-terminated); written to ``path`` if given."""
    text = canonical_json(obj) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text
