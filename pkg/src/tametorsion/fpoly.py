"""Polynomials over prime fields and arithmetic in small extension fields.

Internally a polynomial over F_p is a list of ints in [0, p), ascending by
degree, with no trailing zeros. The public wrapper is FpPoly.

Factorization follows the usual three stages: squarefree decomposition,
distinct-degree splitting, then Cantor-Zassenhaus equal-degree splitting
driven by a seeded PRNG so results are reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .arith import factorize, is_prime
from .errors import ZeroPolynomial
from .intpoly import IntPoly, format_poly

Coeffs = list[int]


@dataclass(frozen=True)
class FpPoly:
    p: int
    coeffs: tuple[int, ...]

    @classmethod
    def from_list(cls, p: int, coeffs: Sequence[int]) -> "FpPoly":
        return cls(p, tuple(trim([c % p for c in coeffs])))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __str__(self) -> str:
        return format_poly(self.coeffs)

    def to_json(self) -> dict:
        return {"p": str(self.p), "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "FpPoly":
        return cls.from_list(int(data["p"]), [int(c) for c in data["coeffs"]])


def trim(a: Coeffs) -> Coeffs:
    while a and a[-1] == 0:
        a.pop()
    return a


def reduce_int_poly(f: IntPoly, p: int) -> Coeffs:
    return trim([c % p for c in f.coeffs])


def add(a: Sequence[int], b: Sequence[int], p: int) -> Coeffs:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return trim(out)


def sub(a: Sequence[int], b: Sequence[int], p: int) -> Coeffs:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return trim(out)


def mul(a: Sequence[int], b: Sequence[int], p: int) -> Coeffs:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([c % p for c in out])


def scale(a: Sequence[int], c: int, p: int) -> Coeffs:
    return trim([x * c % p for x in a])


def divmod_(a: Sequence[int], b: Sequence[int], p: int) -> tuple[Coeffs, Coeffs]:
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(r) - db, 0)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] * inv % p
        if c:
            q[k] = c
            for j in range(db + 1):
                r[k + j] = (r[k + j] - c * b[j]) % p
    return trim(q), trim(r[:db] if db else [])


def mod(a: Sequence[int], b: Sequence[int], p: int) -> Coeffs:
    return divmod_(a, b, p)[1]


def monic(a: Sequence[int], p: int) -> Coeffs:
    if not a:
        return []
    return scale(a, pow(a[-1], -1, p), p)


def gcd(a: Sequence[int], b: Sequence[int], p: int) -> Coeffs:
    a, b = list(a), list(b)
    while b:
        a, b = b, mod(a, b, p)
    return monic(a, p)


def derivative(a: Sequence[int], p: int) -> Coeffs:
    return trim([i * c % p for i, c in enumerate(a)][1:])


def powmod(base: Sequence[int], e: int, m: Sequence[int], p: int) -> Coeffs:
    result: Coeffs = [1] if len(m) > 1 else []
    b = mod(base, m, p)
    while e:
        if e & 1:
            result = mod(mul(result, b, p), m, p)
        e >>= 1
        if e:
            b = mod(mul(b, b, p), m, p)
    return result


def frobenius_power(a: Sequence[int], k: int, m: Sequence[int], p: int) -> Coeffs:
    """a**(p**k) mod m by k successive p-th powers."""
    out = mod(a, m, p)
    for _ in range(k):
        out = powmod(out, p, m, p)
    return out


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test."""
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    f = monic(f, p)
    x = [0, 1]
    if frobenius_power(x, n, f, p) != mod(x, f, p):
        return False
    for q in factorize(n):
        h = frobenius_power(x, n // q, f, p)
        if len(gcd(f, sub(h, x, p), p)) > 1:
            return False
    return True


def squarefree_decomposition(f: Sequence[int], p: int) -> list[tuple[Coeffs, int]]:
    """Monic squarefree parts with multiplicities; f must be monic."""
    out: list[tuple[Coeffs, int]] = []
    c = gcd(f, derivative(f, p), p)
    w = divmod_(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = gcd(w, c, p)
        z = divmod_(w, y, p)[0]
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        c = divmod_(c, y, p)[0]
    if len(c) > 1:
        # c is a polynomial in x**p; over F_p the p-th root just thins the exponents
        root = c[::p]
        out += [(g, m * p) for g, m in squarefree_decomposition(root, p)]
    return out


def distinct_degree(f: Sequence[int], p: int) -> list[tuple[Coeffs, int]]:
    """Split a monic squarefree f into products of equal-degree irreducibles."""
    out = []
    rest = list(f)
    x = [0, 1]
    h = mod(x, rest, p)
    d = 1
    while len(rest) - 1 >= 2 * d:
        h = powmod(h, p, rest, p)
        g = gcd(rest, sub(h, x, p), p)
        if len(g) > 1:
            out.append((g, d))
            rest = divmod_(rest, g, p)[0]
            h = mod(h, rest, p)
        d += 1
    if len(rest) > 1:
        out.append((rest, len(rest) - 1))
    return out


def equal_degree(f: Sequence[int], d: int, p: int, rng: random.Random) -> list[Coeffs]:
    """Cantor-Zassenhaus split of a monic product of degree-d irreducibles."""
    n = len(f) - 1
    if n == d:
        return [list(f)]
    while True:
        a = trim([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        if p == 2:
            # absolute trace of a in each residue field F_{2^d}
            t, s = list(a), list(a)
            for _ in range(d - 1):
                s = mod(mul(s, s, p), f, p)
                t = add(t, s, p)
            b = t
        else:
            b = sub(powmod(a, (p**d - 1) // 2, f, p), [1], p)
        g = gcd(f, b, p)
        if 1 < len(g) < len(f):
            h = divmod_(f, g, p)[0]
            return equal_degree(g, d, p, rng) + equal_degree(h, d, p, rng)


def _sort_key(item: tuple[Coeffs, int]) -> tuple:
    g, m = item
    return (len(g), tuple(reversed(g)), m)


def factor_coeffs(f: Sequence[int], p: int, seed: int = 0) -> list[tuple[Coeffs, int]]:
    """Monic irreducible factors with multiplicity, in canonical order."""
    f = trim(list(f))
    if not f:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    f = monic(f, p)
    rng = random.Random(seed)
    found: dict[tuple[int, ...], int] = {}
    for part, m in squarefree_decomposition(f, p):
        for block, d in distinct_degree(part, p):
            for g in equal_degree(block, d, p, rng):
                key = tuple(g)
                found[key] = found.get(key, 0) + m
    return sorted(((list(g), m) for g, m in found.items()), key=_sort_key)


def factor_mod(f: IntPoly, p: int, seed: int = 0) -> list[tuple[FpPoly, int]]:
    """Factor f modulo the prime p into monic irreducibles with multiplicities.

    The product of the factors equals f mod p up to its leading coefficient.
    Output order is by degree, then coefficients, independent of ``seed``.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    red = reduce_int_poly(f, p)
    if not red:
        raise ZeroPolynomial(f"{f} vanishes modulo {p}")
    return [(FpPoly(p, tuple(g)), m) for g, m in factor_coeffs(red, p, seed)]


def is_separable_mod(f: IntPoly, p: int) -> bool:
    """f keeps its degree mod p and has no repeated factor there."""
    red = reduce_int_poly(f, p)
    if len(red) - 1 != f.degree or f.degree < 0:
        return False
    return len(gcd(red, derivative(red, p), p)) == 1


def _tails(p: int, r: int) -> Iterator[Coeffs]:
    """All coefficient lists of length r over F_p, lowest coefficient varying fastest."""
    for t in range(p**r):
        digits = []
        for _ in range(r):
            t, c = divmod(t, p)
            digits.append(c)
        yield digits


def monic_polys(p: int, r: int) -> Iterator[Coeffs]:
    """Monic degree-r polynomials over F_p in the package's fixed enumeration order."""
    for tail in _tails(p, r):
        yield tail + [1]


@lru_cache(maxsize=None)
def _find_irreducible(p: int, r: int) -> tuple[int, ...]:
    for f in monic_polys(p, r):
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("unreachable: irreducibles exist in every degree")


def find_irreducible(p: int, r: int) -> FpPoly:
    """First monic irreducible of degree r over F_p in enumeration order."""
    if r < 1:
        raise ValueError(f"degree must be >= 1, got {r}")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return FpPoly(p, _find_irreducible(p, r))


class FiniteField:
    """F_{p^r} as F_p[t]/(m(t)) with m from find_irreducible.

    Elements are ints in [0, p**r) encoding base-p digit vectors (digit i is
    the coefficient of t**i). This scalar implementation backs small
    computations and serves as the slow reference for vectorized counting.
    """

    def __init__(self, p: int, r: int = 1) -> None:
        self.p = p
        self.r = r
        self.q = p**r
        self.modulus = list(find_irreducible(p, r).coeffs)
        if not is_irreducible(self.modulus, p):
            raise ValueError("field modulus is reducible")

    def __repr__(self) -> str:
        return f"FiniteField({self.p}, {self.r})"

    def to_coeffs(self, a: int) -> Coeffs:
        out = []
        while a:
            a, c = divmod(a, self.p)
            out.append(c)
        return out

    def from_coeffs(self, c: Sequence[int]) -> int:
        a = 0
        for x in reversed(c):
            a = a * self.p + x
        return a

    def add(self, a: int, b: int) -> int:
        return self.from_coeffs(add(self.to_coeffs(a), self.to_coeffs(b), self.p))

    def mul(self, a: int, b: int) -> int:
        prod = mul(self.to_coeffs(a), self.to_coeffs(b), self.p)
        return self.from_coeffs(mod(prod, self.modulus, self.p))

    def pow(self, a: int, e: int) -> int:
        return self.from_coeffs(powmod(self.to_coeffs(a), e, self.modulus, self.p))

    def embed(self, c: int) -> int:
        return c % self.p

    def evaluate(self, f: IntPoly, x: int) -> int:
        acc = 0
        for c in reversed(f.coeffs):
            acc = self.add(self.mul(acc, x), self.embed(c))
        return acc

    def quadratic_character(self, a: int) -> int:
        """Euler's criterion: a**((q-1)/2) mapped to {-1, 0, 1}; q odd."""
        if a == 0:
            return 0
        return 1 if self.pow(a, (self.q - 1) // 2) == 1 else -1
