import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_irreducible, poly_mul_mod, sieve
from tametorsion import fpoly
from tametorsion.errors import ZeroPolynomial
from tametorsion.fpoly import FiniteField, FpPoly, factor_mod, find_irreducible, is_separable_mod
from tametorsion.intpoly import IntPoly, discriminant

X = sympy.symbols("x")


@pytest.mark.parametrize(
    "coeffs,ell,expected",
    [
        ([2, 1, 0, 0, 1], 3, True),
        ([0, 1, 0, 0, 1], 3, False),
        ([-1, 0, 0, 0, 1], 5, True),
        ([0, -1, 0, 0, 0, 1], 5, True),
    ],
)
def test_is_separable_mod_examples(coeffs, ell, expected):
    assert is_separable_mod(IntPoly(coeffs), ell) is expected


def test_visible_repeated_factor_is_not_separable():
    f = IntPoly([-1, 1]) ** 2 * IntPoly([1, 0, 1])
    assert not is_separable_mod(f, 7)


def test_degree_drop_is_not_separable():
    assert not is_separable_mod(IntPoly([1, 1, 3]), 3)


def _expand(factors, p):
    prod = [1]
    for g, m in factors:
        for _ in range(m):
            prod = poly_mul_mod(prod, list(g.coeffs), p)
    return prod


def test_factor_x3_minus_1_mod_7():
    factors = factor_mod(IntPoly.x_pow_minus(3), 7)
    assert [(g.coeffs, m) for g, m in factors] == [((3, 1), 1), ((5, 1), 1), ((6, 1), 1)]
    roots = sorted((-g.coeffs[0]) % 7 for g, _ in factors)
    assert roots == [1, 2, 4]


def test_factor_x3_minus_1_mod_5():
    factors = factor_mod(IntPoly.x_pow_minus(3), 5)
    assert sorted(g.degree for g, _ in factors) == [1, 2]
    assert factors[0][0] == FpPoly(5, (4, 1))


def test_factor_char_two_square():
    assert factor_mod(IntPoly.x_pow_minus(2), 2) == [(FpPoly(2, (1, 1)), 2)]


def test_factor_zero_raises():
    with pytest.raises(ZeroPolynomial):
        factor_mod(IntPoly([3, 6, 9]), 3)


@settings(max_examples=200, deadline=None)
@given(
    st.lists(st.integers(-50, 50), min_size=2, max_size=10),
    st.sampled_from(sieve(100)),
    st.integers(0, 3),
)
def test_factor_mod_remultiplies(coeffs, p, power):
    f = IntPoly(coeffs) * IntPoly([1, 1]) ** power
    red = fpoly.reduce_int_poly(f, p)
    if not red:
        return
    factors = factor_mod(f, p)
    assert _expand(factors, p) == fpoly.monic(red, p)
    polys = [g.coeffs for g, _ in factors]
    assert len(set(polys)) == len(polys)
    assert all(g.is_monic() and fpoly.is_irreducible(list(g.coeffs), p) for g, _ in factors)


def test_factor_mod_matches_sympy():
    rng = random.Random(7)
    for _ in range(150):
        p = rng.choice([2, 3, 5, 7, 11, 13, 31])
        f = IntPoly([rng.randint(-9, 9) for _ in range(rng.randint(2, 9))])
        f = f * f * IntPoly([rng.randint(0, 4), 1]) ** rng.randint(1, p + 1)
        if not fpoly.reduce_int_poly(f, p):
            continue
        ours = sorted((g.coeffs, m) for g, m in factor_mod(f, p))
        _, theirs = sympy.factor_list(sympy.Poly(list(reversed(f.coeffs)), X, modulus=p))
        ref = sorted(
            (tuple(int(c) % p for c in reversed(sympy.Poly(g, X, modulus=p).monic().all_coeffs())), m)
            for g, m in theirs
        )
        assert ours == ref


def test_factorization_independent_of_seed():
    f = IntPoly.x_pow_minus(48)
    base = factor_mod(f, 7, seed=0)
    assert all(factor_mod(f, 7, seed=s) == base for s in range(1, 6))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(-40, 40), min_size=3, max_size=7), st.sampled_from(sieve(60)[1:]))
def test_discriminant_vs_separability(coeffs, ell):
    f = IntPoly(coeffs)
    if f.degree < 1 or f.lc % ell == 0:
        return
    assert (discriminant(f) % ell == 0) == (not is_separable_mod(f, ell))


@pytest.mark.parametrize(
    "p,r,coeffs",
    [(2, 1, (0, 1)), (3, 2, (1, 0, 1)), (2, 3, (1, 1, 0, 1)), (3, 4, (2, 1, 0, 0, 1))],
)
def test_find_irreducible_examples(p, r, coeffs):
    assert find_irreducible(p, r) == FpPoly(p, coeffs)
    assert brute_irreducible(list(coeffs), p)


def test_find_irreducible_is_first_in_order():
    for p, r in [(2, 4), (3, 3), (5, 2), (5, 3), (7, 2)]:
        first = find_irreducible(p, r).coeffs
        for cand in fpoly.monic_polys(p, r):
            if tuple(cand) == first:
                break
            assert not brute_irreducible(cand, p)
        assert brute_irreducible(list(first), p)


def test_rabin_matches_brute_force():
    for p in (2, 3, 5):
        for r in (2, 3, 4):
            if p**r > 300:
                continue
            for cand in fpoly.monic_polys(p, r):
                assert fpoly.is_irreducible(cand, p) == brute_irreducible(cand, p)


def test_finite_field_arithmetic():
    F = FiniteField(3, 2)
    assert F.modulus == [1, 0, 1]
    elements = range(F.q)
    # unit group is cyclic of order 8
    assert sorted(F.pow(a, 8) for a in elements if a) == [1] * 8
    assert sum(F.quadratic_character(a) for a in elements) == 0
    squares = {F.mul(a, a) for a in elements if a}
    assert all(F.quadratic_character(a) == (1 if a in squares else -1) for a in elements if a)
