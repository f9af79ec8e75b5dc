import json

import numpy as np
import pytest

from ipfactor.io import (
    ParseError,
    canonical_json,
    certificate_doc,
    load_certificate,
    opsum_doc,
    parse_certificate,
    parse_problem,
    problem_hash,
    supermat_doc,
    write_json,
)
from ipfactor.positivize import minus_one_form
from ipfactor.sampling import random_pd_hermitian_opsum, random_positive_opsum
from ipfactor.superop import max_unit_deviation, to_supermat
from ipfactor.witness import counterexample_map


def test_canonical_json():
    assert canonical_json({"b": 1, "a": [0.1, -0.0, 2.0, True, None]}) == '{"a":[0.10000000000000001,0.0,2.0,true,null],"b":1}'
    x = 1 / 3
    assert float(canonical_json(x)) == x
    with pytest.raises(ValueError):
        canonical_json(float("nan"))


def test_problem_round_trip(rng, tmp_path):
    S = random_positive_opsum(3, 2, rng)
    path = tmp_path / "p.json"
    write_json(opsum_doc(S, seed=5), path)
    p = parse_problem(json.loads(path.read_text()))
    assert p.dim == 3 and p.seed == 5
    assert max_unit_deviation(p.target, S) == 0
    M = counterexample_map(0.25).supermat
    q = parse_problem(supermat_doc(M))
    assert np.array_equal(q.supermat, M)


def test_hash_ignores_formatting():
    doc = supermat_doc(np.eye(4))
    text = json.dumps(doc, indent=2)
    again = json.loads(text.replace("1.0", "1").replace("0.0", "0"))
    assert problem_hash(again) == problem_hash(doc)
    doc2 = supermat_doc(2 * np.eye(4))
    assert problem_hash(doc2) != problem_hash(doc)


@pytest.mark.parametrize(
    "mutate, message",
    [
        (lambda d: d.pop("dim"), "missing"),
        (lambda d: d.update(version=2), "version"),
        (lambda d: d.update(vec="row"), "vec"),
        (lambda d: d.update(dim=3), "shape"),
        (lambda d: d.update(form="kraus"), "form"),
        (lambda d: d["data"][0][0].__setitem__(0, "x"), "pairs"),
        (lambda d: d.update(seed=1.5), "seed"),
    ],
)
def test_problem_parse_errors(mutate, message):
    doc = supermat_doc(np.eye(4))
    mutate(doc)
    with pytest.raises(ParseError, match=message):
        parse_problem(doc)


def test_non_finite_entries_are_rejected():
    doc = json.loads(json.dumps(supermat_doc(np.eye(4))))
    doc["data"][0][0] = [float("inf"), 0]
    with pytest.raises(ParseError, match="non-finite"):
        parse_problem(doc)


def test_certificate_round_trip(rng, tmp_path):
    S = random_pd_hermitian_opsum(2, 3, rng)
    cert = minus_one_form(S)
    doc = certificate_doc(cert, "abc")
    path = tmp_path / "c.json"
    write_json(doc.to_dict(), path)
    back = load_certificate(path)
    assert back.form == "minus_one" and list(back.signs) == list(cert.signs)
    assert max_unit_deviation(back.pairs, cert.pairs) == 0
    assert set(back.margins) == {f"{s}{i}" for i in (1, 2, 3) for s in "AB"}
    assert back.ledger["alpha_shift"] == cert.ledger.alpha_shift


def test_certificate_parse_errors(rng):
    doc = certificate_doc(minus_one_form(random_pd_hermitian_opsum(2, 2, rng)), "h").to_dict()
    bad = dict(doc, signs=[1])
    with pytest.raises(ParseError, match="signs"):
        parse_certificate(bad)
    with pytest.raises(ParseError, match="pairs"):
        parse_certificate(dict(doc, pairs=[]))
    with pytest.raises(ParseError, match="missing"):
        parse_certificate({"version": 1})


def test_write_is_deterministic(tmp_path):
    M = to_supermat(random_positive_opsum(2, 2, np.random.default_rng(3)))
    a = write_json(supermat_doc(M))
    b = write_json(supermat_doc(M.copy()))
    assert a == b and a.endswith("\n")
