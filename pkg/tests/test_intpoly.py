import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import sylvester_discriminant, sylvester_resultant
from tametorsion.arith import divisors
from tametorsion.errors import DegreeTooSmall
from tametorsion.intpoly import IntPoly, cyclotomic, discriminant, pn_poly, resultant

X = sympy.symbols("x")

coeff_lists = st.lists(st.integers(-30, 30), min_size=2, max_size=8).filter(lambda c: c[-1] != 0)


def test_intpoly_normalizes_and_prints():
    f = IntPoly([2, 1, 0, 0, 1, 0, 0])
    assert f.coeffs == (2, 1, 0, 0, 1)
    assert f.degree == 4
    assert str(f) == "x^4 + x + 2"
    assert str(IntPoly([1, -1])) == "-x + 1"
    assert IntPoly().degree == -1 and str(IntPoly()) == "0"


def test_intpoly_arithmetic_and_json():
    f = IntPoly([-1, 1])
    g = IntPoly([1, 1])
    assert f * g == IntPoly([-1, 0, 1])
    assert (f * g).exact_div(g) == f
    assert f + 1 == IntPoly([0, 1])
    assert f(3) == 2
    assert IntPoly.from_json(f.to_json()) == f
    assert f.to_json() == {"coeffs": ["-1", "1"]}
    with pytest.raises(ArithmeticError):
        IntPoly([1, 0, 1]).exact_div(f)


@pytest.mark.parametrize(
    "coeffs,expected",
    [([-1, 0, 1], 4), ([-1, 0, 0, 1], -27), ([1, -2, 1], 0)],
)
def test_discriminant_examples(coeffs, expected):
    f = IntPoly(coeffs)
    assert sylvester_discriminant(f) == expected
    assert discriminant(f) == expected


def test_disc_cubic_formula():
    for c in range(-5, 6):
        assert discriminant(IntPoly([c, 0, 0, 1])) == -27 * c * c


def test_discriminant_of_constant_raises():
    with pytest.raises(DegreeTooSmall):
        discriminant(IntPoly([5]))


@settings(max_examples=150, deadline=None)
@given(coeff_lists, coeff_lists)
def test_resultant_matches_sylvester(a, b):
    assert resultant(IntPoly(a), IntPoly(b)) == sylvester_resultant(a, b)


@settings(max_examples=150, deadline=None)
@given(coeff_lists)
def test_discriminant_matches_two_oracles(c):
    f = IntPoly(c)
    expected = sylvester_discriminant(f)
    assert discriminant(f) == expected
    assert expected == sympy.discriminant(sympy.Poly(list(reversed(c)), X))


@pytest.mark.parametrize(
    "d,coeffs",
    [(1, [-1, 1]), (6, [1, -1, 1]), (12, [1, 0, -1, 0, 1])],
)
def test_cyclotomic_examples(d, coeffs):
    assert cyclotomic(d) == IntPoly(coeffs)


def test_cyclotomic_six_by_division():
    num = IntPoly.x_pow_minus(6)
    den = IntPoly([-1, 1]) * IntPoly([1, 1]) * IntPoly([1, 1, 1])
    assert num.exact_div(den) == IntPoly([1, -1, 1])


def test_cyclotomic_matches_sympy():
    for d in range(1, 80):
        expected = sympy.Poly(sympy.cyclotomic_poly(d, X), X).all_coeffs()
        assert cyclotomic(d) == IntPoly(reversed([int(c) for c in expected]))


@pytest.mark.parametrize(
    "n,coeffs",
    [(5, [1, 1, 1, 1, 1]), (6, [1, 0, 1, 0, 1]), (3, [1, 1, 1])],
)
def test_pn_poly_examples(n, coeffs):
    assert pn_poly(n) == IntPoly(coeffs)


def test_pn_poly_degrees():
    for n in range(3, 60):
        assert pn_poly(n).degree == (n - 1 if n % 2 else n - 2)


def test_cyclotomic_product_identities():
    for n in range(3, 201):
        full = IntPoly([1])
        big = IntPoly([1])
        for d in divisors(n):
            full = full * cyclotomic(d)
            if d > 2:
                big = big * cyclotomic(d)
        assert full == IntPoly.x_pow_minus(n)
        assert big == pn_poly(n)


def test_reciprocal():
    f = IntPoly.x_pow_minus(3)
    assert f.reciprocal(4) == IntPoly([0, 1, 0, 0, -1])
    with pytest.raises(ValueError):
        f.reciprocal(2)
