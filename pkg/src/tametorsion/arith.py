"""Exact integer and modular arithmetic.

Python integers are already arbitrary precision, so this module only adds the
number-theoretic routines the rest of the package needs: CRT amalgamation,
multiplicative orders, deterministic primality, factorization and Euler's
totient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable

from .errors import ConflictingConstraints, NonCoprimeModuli, NotAUnit

# Miller-Rabin with the first 13 primes as bases is deterministic below this.
MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_EXTRA_BASES = (43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)

TRIAL_DIVISION_LIMIT = 10**6


@dataclass(frozen=True)
class ResidueClass:
    residue: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError(f"modulus must be >= 1, got {self.modulus}")
        if not 0 <= self.residue < self.modulus:
            object.__setattr__(self, "residue", self.residue % self.modulus)

    def contains(self, x: int) -> bool:
        return (x - self.residue) % self.modulus == 0

    def symmetric(self) -> int:
        """Representative in (-modulus/2, modulus/2]."""
        r = self.residue
        return r - self.modulus if 2 * r > self.modulus else r

    def to_json(self) -> dict:
        return {"residue": str(self.residue), "modulus": str(self.modulus)}

    @classmethod
    def from_json(cls, data: dict) -> "ResidueClass":
        return cls(int(data["residue"]), int(data["modulus"]))


def crt_combine(classes: Iterable[ResidueClass]) -> ResidueClass:
    """Amalgamate congruences with pairwise coprime moduli into one class.

    Raises ConflictingConstraints when two moduli share a factor and the
    residues disagree on it, and NonCoprimeModuli when they share a factor but
    agree (the caller is expected to merge such constraints beforehand).
    """
    classes = list(classes)
    for i, a in enumerate(classes):
        for b in classes[i + 1:]:
            d = math.gcd(a.modulus, b.modulus)
            if d == 1:
                continue
            if (a.residue - b.residue) % d:
                raise ConflictingConstraints(
                    f"{a.residue} mod {a.modulus} and {b.residue} mod {b.modulus} are incompatible"
                )
            raise NonCoprimeModuli(f"moduli {a.modulus} and {b.modulus} share the factor {d}")

    x, m = 0, 1
    for c in classes:
        # x + m*t = c.residue (mod c.modulus)
        t = (c.residue - x) * pow(m, -1, c.modulus) % c.modulus
        x += m * t
        m *= c.modulus
    return ResidueClass(x % m, m)


def is_prime(n: int) -> bool:
    """Miller-Rabin, deterministic for n below MR_DETERMINISTIC_BOUND.

    Above the bound a further dozen fixed bases are used; the answer is then
    only a strong probable-prime verdict.
    """
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = _MR_BASES if n < MR_DETERMINISTIC_BOUND else _MR_BASES + _EXTRA_BASES
    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    """Return a nontrivial factor of the odd composite n."""
    for c in range(1, 1000):
        y, r, q, g = 2, 1, 1, 1
        x = ys = 2
        m = 128
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed to split {n}")


def factorize(n: int) -> dict[int, int]:
    """Prime factorization as {prime: exponent}, primes in ascending order."""
    if n < 1:
        raise ValueError(f"factorize expects n >= 1, got {n}")
    found: dict[int, int] = {}

    def add(q: int, e: int = 1) -> None:
        found[q] = found.get(q, 0) + e

    for q in (2, 3, 5):
        while n % q == 0:
            add(q)
            n //= q
    # wheel mod 30
    q, steps, i = 7, (4, 2, 4, 2, 4, 6, 2, 6), 0
    while q * q <= n and q < TRIAL_DIVISION_LIMIT:
        while n % q == 0:
            add(q)
            n //= q
        q += steps[i]
        i = (i + 1) % 8

    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if m < q * q or is_prime(m):
            add(m)
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = _pollard_brent(m)
        stack += [d, m // d]
    return dict(sorted(found.items()))


def divisors(n: int) -> list[int]:
    divs = [1]
    for q, e in factorize(n).items():
        divs = [d * q**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def euler_phi(n: int) -> int:
    result = n
    for q in factorize(n):
        result = result // q * (q - 1)
    return result


def valuation(n: int, q: int) -> int:
    """Exponent of the prime q in the nonzero integer n."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % q == 0:
        n //= q
        v += 1
    return v


def order_in_group(x, group_order: int, is_identity, power) -> int:
    """Order of x in a finite group of known order.

    ``power(x, k)`` and ``is_identity(y)`` supply the group law, so the same
    routine serves Z/m and polynomial quotient rings.
    """
    k = group_order
    for q in factorize(group_order):
        while k % q == 0 and is_identity(power(x, k // q)):
            k //= q
    return k


def mult_order(a: int, m: int) -> int:
    """Smallest k >= 1 with a**k == 1 (mod m)."""
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    if math.gcd(a, m) != 1:
        raise NotAUnit(f"{a} is not a unit modulo {m}")
    if m == 1:
        return 1
    return order_in_group(
        a % m,
        euler_phi(m),
        lambda y: y == 1,
        lambda x, k: pow(x, k, m),
    )


def lcm_all(values: Iterable[int]) -> int:
    return reduce(math.lcm, values, 1)
