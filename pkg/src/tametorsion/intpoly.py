"""Dense univariate polynomials with integer coefficients.

Coefficients are stored ascending by degree as an immutable tuple with no
trailing zeros; the zero polynomial is the empty tuple. Degrees in this
package stay small (at most a few hundred), so everything is schoolbook.
"""

from __future__ import annotations

import math
from functools import lru_cache, reduce
from typing import Iterable, Sequence

from .arith import divisors
from .errors import DegreeTooSmall


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class IntPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()) -> None:
        object.__setattr__(self, "coeffs", _trim(int(c) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    def __reduce__(self):
        return (IntPoly, (self.coeffs,))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "IntPoly":
        return cls([0] * degree + [coeff])

    @classmethod
    def x_pow_minus(cls, n: int, a: int = 1) -> "IntPoly":
        """x**n - a."""
        return cls([-a] + [0] * (n - 1) + [1])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPoly([other])
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        return format_poly(self.coeffs)

    def __neg__(self) -> "IntPoly":
        return IntPoly(-c for c in self.coeffs)

    def __add__(self, other) -> "IntPoly":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __sub__(self, other) -> "IntPoly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "IntPoly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "IntPoly":
        other = _as_poly(other)
        return IntPoly(poly_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPoly":
        result = IntPoly([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def exact_div(self, other: "IntPoly") -> "IntPoly":
        """Quotient self / other, which must be exact over Z."""
        q, r = poly_divmod_exact(self.coeffs, other.coeffs)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return IntPoly(q)

    def derivative(self) -> "IntPoly":
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def content(self) -> int:
        return reduce(math.gcd, self.coeffs, 0)

    def reduce(self, m: int) -> "IntPoly":
        """Coefficients reduced into [0, m)."""
        return IntPoly(c % m for c in self.coeffs)

    def symmetric_reduce(self, m: int) -> "IntPoly":
        """Coefficients reduced into (-m/2, m/2]."""
        out = []
        for c in self.coeffs:
            r = c % m
            out.append(r - m if 2 * r > m else r)
        return IntPoly(out)

    def congruent(self, other: "IntPoly", m: int) -> bool:
        n = max(len(self.coeffs), len(other.coeffs))
        return all((self[i] - other[i]) % m == 0 for i in range(n))

    def reciprocal(self, degree: int) -> "IntPoly":
        """u**degree * self(1/u); requires degree >= self.degree."""
        if degree < self.degree:
            raise ValueError("reciprocal degree below polynomial degree")
        padded = list(self.coeffs) + [0] * (degree + 1 - len(self.coeffs))
        return IntPoly(reversed(padded))

    def to_json(self) -> dict:
        return {"coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "IntPoly":
        return cls(int(c) for c in data["coeffs"])


def _as_poly(x) -> IntPoly:
    if isinstance(x, IntPoly):
        return x
    if isinstance(x, int):
        return IntPoly([x])
    return NotImplemented


def format_poly(coeffs: Sequence[int], var: str = "x") -> str:
    if not any(coeffs):
        return "0"
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = str(a)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if a == 1 else f"{a}*{mono}"
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def poly_divmod_exact(a: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int]]:
    """Division over Z where every leading-coefficient division must be exact.

    Returns (q, r) with a = q*b + r. Raises ArithmeticError if a step would
    leave Z; with b monic this never happens.
    """
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    q = [0] * max(len(r) - db, 0)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db]
        if c == 0:
            continue
        if c % lb:
            raise ArithmeticError("inexact division over Z")
        c //= lb
        q[k] = c
        for j in range(db + 1):
            r[k + j] -= c * b[j]
    return list(_trim(q)), list(_trim(r))


def pseudo_remainder(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """lc(b)**(deg a - deg b + 1) * a mod b, computed over Z."""
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    delta = len(r) - 1 - db
    if delta < 0:
        return list(_trim(r))
    for k in range(delta, -1, -1):
        c = r[k + db]
        r = [lb * x for x in r]
        for j in range(db + 1):
            r[k + j] -= c * b[j]
        r.pop()
    return list(_trim(r))


def resultant(f: IntPoly, g: IntPoly) -> int:
    """Resultant over Z by the subresultant PRS (no rational intermediates)."""
    a, b = list(f.coeffs), list(g.coeffs)
    if not a or not b:
        return 0
    s = 1
    if len(a) < len(b):
        if (len(a) - 1) * (len(b) - 1) % 2:
            s = -1
        a, b = b, a
    if len(b) == 1:
        return s * b[0] ** (len(a) - 1)

    ca = reduce(math.gcd, a, 0)
    cb = reduce(math.gcd, b, 0)
    a = [x // ca for x in a]
    b = [x // cb for x in b]
    t = ca ** (len(b) - 1) * cb ** (len(a) - 1)
    g_, h = 1, 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        r = pseudo_remainder(a, b)
        a = b
        div = g_ * h**delta
        b = [x // div for x in r]
        g_ = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g_
        else:
            h = g_**delta // h ** (delta - 1)
        if not b:
            return 0
        if len(b) == 1:
            break
    da = len(a) - 1
    h = b[0] ** da // h ** (da - 1) if da >= 1 else 1
    return s * t * h


def discriminant(f: IntPoly) -> int:
    d = f.degree
    if d < 1:
        raise DegreeTooSmall("discriminant needs a polynomial of degree >= 1")
    res = resultant(f, f.derivative())
    sign = -1 if d * (d - 1) // 2 % 2 else 1
    q, r = divmod(sign * res, f.lc)
    assert r == 0, "Res(f, f') must be divisible by lc(f)"
    return q


@lru_cache(maxsize=None)
def _cyclotomic(d: int) -> tuple[int, ...]:
    num = IntPoly.x_pow_minus(d)
    den = IntPoly([1])
    for e in divisors(d)[:-1]:
        den = den * IntPoly(_cyclotomic(e))
    return num.exact_div(den).coeffs


def cyclotomic(d: int) -> IntPoly:
    """The d-th cyclotomic polynomial."""
    if d < 1:
        raise ValueError(f"cyclotomic index must be >= 1, got {d}")
    return IntPoly(_cyclotomic(d))


def pn_poly(n: int) -> IntPoly:
    """Minimal polynomial of the order-n automorphism x -> zeta*x on y^2 = x^n - a.

    (t^n - 1)/(t - 1) for odd n, (t^n - 1)/(t^2 - 1) for even n.
    """
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    den = IntPoly([-1, 1]) if n % 2 else IntPoly([-1, 0, 1])
    return IntPoly.x_pow_minus(n).exact_div(den)
