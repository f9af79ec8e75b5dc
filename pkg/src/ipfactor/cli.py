"""``ipfactor`` command line: validate, decompose, verify, demo, random.

Exit codes: 0 ok, 1 semantic failure, 2 usage/parse/IO error or hash
mismatch, 3 requested form not achieved, 4 numerical failure.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .exceptions import DimensionError, IPFactorError, NotPositiveError, NotSelfAdjointError
from .io import (
    ParseError,
    canonical_json,
    certificate_doc,
    load_certificate,
    load_problem,
    opsum_doc,
    write_json,
)
from .pipeline import REQUESTS, decompose, validate
from .positivize import verify_certificate
from .sampling import random_cmat, random_positive_opsum
from .superop import asymmetry_witness, max_unit_deviation, quadratic_value, violating_matrix
from .witness import (
    counterexample_map,
    explicit_decompositions,
    obstruction_lines,
    quadratic_form,
)

OK, FAILED, USAGE, UNACHIEVED, NUMERICAL = 0, 1, 2, 3, 4


def _fmt_matrix(X) -> str:
    return np.array2string(np.asarray(X), precision=6, suppress_small=True, max_line_width=120)


def _err(msg: str) -> None:
    print(f"ipfactor: {msg}", file=sys.stderr)


def cmd_validate(args) -> int:
    problem = load_problem(args.spec)
    M = problem.supermat
    v = validate(M)
    print(f"self-adjoint defect: {v.defect:.3e}")
    if v.min_eig is None:
        print("min eigenvalue: undefined (map is not self-adjoint)")
    else:
        print(f"min eigenvalue: {v.min_eig:.12g}")
    print(f"inner product: {'yes' if v.inner_product else 'no'}")
    if v.inner_product:
        return OK
    X = asymmetry_witness(M) if not v.self_adjoint else violating_matrix(M)
    q = quadratic_value(M, X)
    print("violating X:")
    print(_fmt_matrix(X))
    print(f"<A X, X> = {q.real:.6g}{q.imag:+.6g}j")
    return FAILED


def cmd_decompose(args) -> int:
    problem = load_problem(args.spec)
    try:
        out = decompose(problem.target, args.form, np.random.default_rng(0))
    except (NotSelfAdjointError, NotPositiveError, DimensionError) as exc:
        _err(f"invalid spec: {exc}")
        return FAILED
    except IPFactorError as exc:
        _err(f"numerical failure: {exc}")
        return NUMERICAL
    cert = out.certificate
    text = write_json(certificate_doc(cert, problem.hash).to_dict(), args.out)
    if args.out is None:
        sys.stdout.write(text)
    else:
        signs = "".join("+" if s > 0 else "-" for s in cert.signs)
        print(f"form: {cert.form} (m={cert.m}, signs {signs}, residual {cert.residual:.3e}, route {out.route})")
        print(f"wrote {args.out}")
    if not out.achieved:
        _err("requested form not achieved; condition report:")
        print(canonical_json(out.report.to_dict()) if out.report else "{}", file=sys.stderr)
        return UNACHIEVED
    return OK


def cmd_verify(args) -> int:
    doc = load_certificate(args.cert)
    problem = load_problem(args.spec)
    if doc.problem_hash != problem.hash:
        _err(f"problem hash mismatch: certificate {doc.problem_hash[:16]}..., spec {problem.hash[:16]}...")
        return USAGE
    if doc.pairs.dim != problem.dim:
        _err(f"dimension mismatch: certificate n={doc.pairs.dim}, spec n={problem.dim}")
        return USAGE
    report = verify_certificate(doc.form, doc.pairs, doc.signs, problem.supermat)
    for c in report.checks:
        rel = "<=" if c.name in ("residual", "signs") or c.name.startswith("hermitian") else ">"
        print(f"{'ok  ' if c.ok else 'FAIL'} {c.name}: {c.value:.6g} {rel} {c.limit:.3g}")
    if report.ok:
        print(f"certificate valid ({doc.form}, m={doc.pairs.m})")
        return OK
    print(f"certificate invalid: {', '.join(report.failed)}")
    return FAILED


def _check(label: str, value: float, limit: float) -> bool:
    ok = value <= limit
    print(f"{'ok  ' if ok else 'FAIL'} {label}: {value:.3e}")
    return ok


def cmd_demo(args) -> int:
    e = args.epsilon
    A = counterexample_map(e)
    print(f"epsilon = {e:g}")
    print(f"A([[x, y], [w, z]]) = [[x + {1 - e:g} z, {e:g} y], [{e:g} w, z + {1 - e:g} x]]")
    rng = np.random.default_rng(0)
    Xs = [random_cmat(2, rng) for _ in range(20)]
    oks = [
        _check(
            "closed form vs operator sum",
            max(np.abs(A.closed_form(X) - A(X)).max() for X in Xs),
            1e-12,
        ),
        _check(
            "quadratic form identity",
            max(abs(quadratic_form(A, X) - quadratic_value(A.opsum, X)) for X in Xs),
            1e-12,
        ),
    ]
    print("matrix-unit form: diag(1,e) X E11 + (1-e) E12 X E21 + (1-e) E21 X E12 + diag(e,1) X E22")
    herm, cert = explicit_decompositions(e)
    print("Hermitian form: diag(1,e) X E11 + (1-e) P X P + (1-e) Q X Q + diag(e,1) X E22")
    oks.append(_check("Hermitian form vs map", max_unit_deviation(herm, A.supermat), 1e-12))
    if cert is not None:
        report = verify_certificate(cert.form, cert.pairs, cert.signs, A.supermat)
        for c in report.checks:
            print(f"{'ok  ' if c.ok else 'FAIL'} minus-one certificate {c.name}: {c.value:.6g}")
        oks.append(report.ok)
    for line in obstruction_lines(e):
        print(line)
    return OK if all(oks) else FAILED


def cmd_random(args) -> int:
    S = random_positive_opsum(args.n, args.m, np.random.default_rng(args.seed))
    text = write_json(opsum_doc(S, seed=args.seed), args.out)
    if args.out is None:
        sys.stdout.write(text)
    return OK


def _open_epsilon(text: str) -> float:
    try:
        e = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0 < e < 1:
        raise argparse.ArgumentTypeError(f"epsilon must lie in (0, 1), got {e:g}")
    return e


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ipfactor", description="Inner products on M_n(C) and their operator-sum forms.")
    p.add_argument("--version", action="version", version=f"ipfactor {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check that a spec defines an inner product")
    v.add_argument("spec")
    v.set_defaults(func=cmd_validate)

    d = sub.add_parser("decompose", help="compute a certificate")
    d.add_argument("spec")
    d.add_argument("--form", choices=REQUESTS, default="auto")
    d.add_argument("--out", help="certificate path (default: stdout)")
    d.set_defaults(func=cmd_decompose)

    c = sub.add_parser("verify", help="re-check a certificate against its spec")
    c.add_argument("cert")
    c.add_argument("spec")
    c.set_defaults(func=cmd_verify)

    e = sub.add_parser("demo", help="walk through the epsilon-map example")
    e.add_argument("--epsilon", type=_open_epsilon, default=0.25)
    e.set_defaults(func=cmd_demo)

    r = sub.add_parser("random", help="write a random positive-definite spec")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--m", type=int, required=True)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--out", help="spec path (default: stdout)")
    r.set_defaults(func=cmd_random)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "random":
        if not 1 <= args.n <= 16:
            parser.error(f"--n must lie in [1, 16], got {args.n}")
        if not 1 <= args.m <= args.n**2:
            parser.error(f"--m must lie in [1, n^2 = {args.n**2}], got {args.m}")
    try:
        return args.func(args)
    except ParseError as exc:
        _err(str(exc))
        return USAGE
    except IPFactorError as exc:
        _err(str(exc))
        return FAILED


if __name__ == "__main__":
    sys.exit(main())
