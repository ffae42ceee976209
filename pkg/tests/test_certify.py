import dataclasses
import json

import pytest

from tametorsion.certify import TamenessCertificate, certify, good_reduction_odd
from tametorsion.construct import CurveSpec, assemble, mod2_class_for_genus
from tametorsion.entries import Justification, Verdict
from tametorsion.errors import IncompleteSpec, WrongPrime
from tametorsion.intpoly import IntPoly, discriminant


def test_good_reduction_odd_examples():
    f = IntPoly([-1, 0, 0, 0, 1])
    assert discriminant(f) == -256
    entry = good_reduction_odd(f, 3)
    assert entry.verdict is Verdict.PASS and entry.witness["disc_valuation"] == 0
    with pytest.raises(WrongPrime):
        good_reduction_odd(f, 2)
    sq = IntPoly([-1, 1]) ** 2 * IntPoly([2, 0, 1])
    bad = good_reduction_odd(sq, 5)
    assert bad.verdict is Verdict.FAIL and bad.witness["discriminant_is_zero"]


def test_certify_1_5_2():
    cert = certify(assemble(1, 5, 2))
    assert [(e.scope, e.justification, e.verdict) for e in cert.entries] == [
        ("2", Justification.GOOD_REDUCTION, Verdict.PASS),
        ("3", Justification.GOOD_REDUCTION, Verdict.PASS),
        ("ell>3,ell!=5", Justification.SERRE_TATE_BOUND, Verdict.PASS),
        ("5", Justification.CM_AT_P, Verdict.PASS),
    ]
    at_p = cert.entries[-1]
    assert at_p.kisin_conditional and at_p.witness["unit_group_order"] == "24"
    assert at_p.witness["kisin_depth"] == 2
    assert cert.overall is Verdict.PASS


def _hand_made(f: IntPoly, p: int, n: int) -> CurveSpec:
    return CurveSpec(1, p, n, 1, f, (mod2_class_for_genus(1),), 16)


def test_x4_minus_1_fails_at_two():
    cert = certify(_hand_made(IntPoly([-1, 0, 0, 0, 1]), 5, 3))
    two = cert.entries[0]
    assert two.scope == "2" and two.verdict is Verdict.FAIL
    assert cert.overall is Verdict.FAIL


def test_missing_witness_is_incomplete():
    curve = dataclasses.replace(_hand_made(IntPoly([-1, 0, 0, 0, 1]), 5, 3), constraints=())
    with pytest.raises(IncompleteSpec):
        certify(curve)


def test_p_dividing_n_fails_cm_entry():
    curve = dataclasses.replace(assemble(1, 5, 2), n=5)
    entry = certify(curve).entries[-1]
    assert entry.justification is Justification.CM_AT_P and entry.verdict is Verdict.FAIL


def test_tampered_residue_fails_that_prime():
    curve = assemble(1, 5, 2)
    doc = curve.to_json()
    for c in doc["constraints"]:
        if c["prime"] == 3:
            c["residue_poly"]["coeffs"][0] = str((int(c["residue_poly"]["coeffs"][0]) + 1) % 3)
    cert = certify(CurveSpec.from_json(doc))
    assert [e.scope for e in cert.failing()] == ["3"]


def test_tampered_f_fails():
    curve = assemble(2, 7, 2)
    bumped = dataclasses.replace(curve, f=curve.f + 1)
    assert certify(bumped).overall is Verdict.FAIL


@pytest.mark.parametrize("g", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_every_cm_entry_is_kisin_conditional(g, p):
    cert = certify(assemble(g, p, 1))
    assert cert.overall is Verdict.PASS
    scopes = [e.scope for e in cert.entries]
    assert len(scopes) == len(set(scopes))
    assert all(e.kisin_conditional for e in cert.entries if e.justification is Justification.CM_AT_P)


def test_certificate_round_trip_is_byte_stable():
    cert = certify(assemble(2, 5, 3))
    text = json.dumps(cert.to_json())
    again = TamenessCertificate.from_json(json.loads(text))
    assert json.dumps(certify(again.curve).to_json()) == text
