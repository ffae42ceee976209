import math
from collections import Counter

import pytest

from conftest import sieve
from tametorsion.arith import divisors, euler_phi
from tametorsion.endo import (
    EndoStructure,
    endo_ring,
    endo_structure,
    splitting_data,
    tame_at_p_criterion,
    unit_group_order,
    verify_pn_via_eigenvalues,
)
from tametorsion.entries import Justification, Verdict
from tametorsion.errors import GenusZero, RamifiedCase
from tametorsion.fpoly import factor_mod
from tametorsion.intpoly import IntPoly, cyclotomic


def oracle_unit_order(n: int, p: int) -> int:
    """Product of (p^deg - 1) over the irreducible factors of x^n - 1 other than x -/+ 1."""
    order = 1
    for d in divisors(n):
        if d > 2:
            for g, m in factor_mod(cyclotomic(d), p):
                assert m == 1
                order *= p**g.degree - 1
    return order


@pytest.mark.parametrize("n,expected", [(5, [5]), (6, [3, 6]), (4, [4]), (12, [3, 4, 6, 12])])
def test_endo_ring_examples(n, expected):
    assert endo_ring(n) == expected


def test_endo_ring_genus_zero():
    with pytest.raises(GenusZero):
        endo_ring(2)


def test_dimension_bookkeeping():
    for n in range(3, 501):
        assert sum(euler_phi(d) for d in endo_ring(n)) == 2 * ((n - 1) // 2)


@pytest.mark.parametrize("d,p,efg", [(5, 7, (1, 4, 1)), (3, 7, (1, 1, 2)), (9, 3, (6, 1, 1))])
def test_splitting_data_examples(d, p, efg):
    s = splitting_data(d, p)
    assert (s.e, s.f, s.g_count) == efg
    shape = Counter((g.degree, m) for g, m in factor_mod(cyclotomic(d), p))
    assert shape == Counter({(s.f, s.e): s.g_count})


def test_splitting_data_ramified_multiplicities():
    for n in range(3, 61):
        for p in sieve(30):
            for d in endo_ring(n):
                if d % p:
                    continue
                s = splitting_data(d, p)
                for g, m in factor_mod(cyclotomic(d), p):
                    assert m == s.e and g.degree == s.f


@pytest.mark.parametrize("n,p,expected", [(3, 7, 36), (5, 7, 2400), (6, 7, 1296), (8, 7, 110592), (3, 5, 24)])
def test_unit_group_order_examples(n, p, expected):
    assert oracle_unit_order(n, p) == expected
    assert unit_group_order(n, p) == expected


def test_unit_group_order_ramified():
    with pytest.raises(RamifiedCase):
        unit_group_order(10, 5)


def test_unit_group_order_matches_oracle():
    for n in range(3, 41):
        for p in sieve(20):
            if n % p:
                assert unit_group_order(n, p) == oracle_unit_order(n, p)


def test_tame_at_p_examples():
    ok = tame_at_p_criterion(3, 5)
    assert ok.verdict is Verdict.PASS and ok.justification is Justification.CM_AT_P
    assert ok.witness["unit_group_order"] == "24" and ok.witness["gcd_with_p"] == 1
    bad = tame_at_p_criterion(5, 5)
    assert bad.verdict is Verdict.FAIL and "reason" in bad.witness
    assert tame_at_p_criterion(8, 7).witness["unit_group_order"] == "110592"


def test_tame_at_p_matches_divisibility():
    for n in range(3, 60):
        for p in sieve(30):
            entry = tame_at_p_criterion(n, p)
            assert entry.passed == (n % p != 0)
            if entry.passed:
                assert math.gcd(int(entry.witness["unit_group_order"]), p) == 1


def test_endo_structure_json_and_ramification():
    s = endo_structure(6, 7)
    assert s.genus == 2 and s.p_unramified and s.unit_group_order == 1296
    assert EndoStructure.from_json(s.to_json()) == s
    assert s.to_json()["unit_group_order"] == "1296"
    r = endo_structure(10, 5)
    assert not r.p_unramified
    assert r.unit_group_order % 5 == 0


@pytest.mark.parametrize("n", [3, 5, 6])
def test_pn_examples(n):
    assert verify_pn_via_eigenvalues(n)


def test_pn_range():
    assert all(verify_pn_via_eigenvalues(n) for n in range(3, 201))
