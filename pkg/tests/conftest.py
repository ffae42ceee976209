"""Independent oracles shared by the test modules.

Nothing here calls the code paths under test: resultants come from a
Sylvester determinant in exact rationals, point counts from scalar field
arithmetic with Euler's criterion, primes from a sieve.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from tametorsion.fpoly import FiniteField
from tametorsion.intpoly import IntPoly


def det(rows: list[list[int]]) -> int:
    m = [[Fraction(x) for x in row] for row in rows]
    n, sign, acc = len(m), 1, Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        acc *= m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] / m[col][col]
            for c in range(col, n):
                m[r][c] -= factor * m[col][c]
    result = sign * acc
    assert result.denominator == 1
    return int(result)


def sylvester_resultant(a: list[int], b: list[int]) -> int:
    """Res(a, b) as the determinant of the Sylvester matrix; ascending coefficients."""
    m, n = len(a) - 1, len(b) - 1
    A, B = list(reversed(a)), list(reversed(b))
    rows = [[0] * i + A + [0] * (n - 1 - i) for i in range(n)]
    rows += [[0] * i + B + [0] * (m - 1 - i) for i in range(m)]
    return det(rows)


def sylvester_discriminant(f: IntPoly) -> int:
    d = f.degree
    res = sylvester_resultant(list(f.coeffs), list(f.derivative().coeffs))
    sign = -1 if d * (d - 1) // 2 % 2 else 1
    q, r = divmod(sign * res, f.lc)
    assert r == 0
    return q


def naive_point_count(f: IntPoly, ell: int, r: int) -> int:
    field = FiniteField(ell, r)
    total = sum(1 + field.quadratic_character(field.evaluate(f, x)) for x in range(field.q))
    if f.degree % 2:
        return total + 1
    return total + 1 + field.quadratic_character(field.embed(f.lc))


def sieve(n: int) -> list[int]:
    flags = [True] * (n + 1)
    flags[0] = flags[1] = False
    for i in range(2, int(n**0.5) + 1):
        if flags[i]:
            flags[i * i::i] = [False] * len(flags[i * i::i])
    return [i for i, ok in enumerate(flags) if ok]


def poly_mul_mod(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    while out and out[-1] == 0:
        out.pop()
    return out


def brute_irreducible(f: list[int], p: int) -> bool:
    """No monic factor of degree 1..deg/2, by trying every product."""
    n = len(f) - 1
    target = [c * pow(f[-1], -1, p) % p for c in f]
    for d in range(1, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = list(tail) + [1]
            for cotail in itertools.product(range(p), repeat=n - d):
                if poly_mul_mod(g, list(cotail) + [1], p) == target:
                    return False
    return True


@pytest.fixture(scope="session")
def small_primes() -> list[int]:
    return sieve(1000)


# Acceptance verdict lines, echoed again in the terminal summary so they are
# visible without -s.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
