"""Construction of y^2 = f(x) with tame p-torsion field.

The recipe imposes one congruence per bad-for-tameness prime and glues them
with the CRT:

* odd ell <= 2g+1, ell != p: f mod ell keeps degree 2g+2 and is separable,
  so the curve has good reduction at ell;
* ell = 2: f is fixed modulo 2^(2g+2) to a class admitting a smooth model
  y^2 + h y = k over F_2 (the witness (h, k) is stored);
* ell = p: f agrees modulo p^N with an even-degree model of y^2 = x^n - 1,
  where n in {2g+1, 2g+2} is prime to p, so the CM structure of that curve
  forces tameness at p once N is large enough.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

from . import fpoly
from .arith import ResidueClass, crt_combine, is_prime
from .errors import ConstructionFailed, UnsupportedPrime
from .intpoly import IntPoly, discriminant

MAX_BUMPS = 10_000


class Purpose(str, Enum):
    SEPARABILITY_AT_ODD_ELL = "SeparabilityAtOddEll"
    GOOD_REDUCTION_AT_TWO = "GoodReductionAtTwo"
    CM_SHAPE_AT_P = "CMShapeAtP"


@dataclass(frozen=True)
class CongruenceConstraint:
    prime: int
    modulus: int
    residue_poly: IntPoly
    purpose: Purpose
    witness: tuple[IntPoly, IntPoly] | None = None

    def satisfied_by(self, f: IntPoly) -> bool:
        return f.congruent(self.residue_poly, self.modulus)

    def to_json(self) -> dict:
        witness = None
        if self.witness is not None:
            h, k = self.witness
            witness = {"h": h.to_json(), "k": k.to_json()}
        return {
            "prime": self.prime,
            "modulus": str(self.modulus),
            "residue_poly": self.residue_poly.to_json(),
            "purpose": self.purpose.value,
            "witness": witness,
        }

    @classmethod
    def from_json(cls, data: dict) -> "CongruenceConstraint":
        w = data.get("witness")
        return cls(
            prime=int(data["prime"]),
            modulus=int(data["modulus"]),
            residue_poly=IntPoly.from_json(data["residue_poly"]),
            purpose=Purpose(data["purpose"]),
            witness=None if w is None else (IntPoly.from_json(w["h"]), IntPoly.from_json(w["k"])),
        )


@dataclass(frozen=True)
class CurveSpec:
    genus: int
    p: int
    n: int
    kisin_depth: int
    f: IntPoly
    constraints: tuple[CongruenceConstraint, ...] = field(default=())
    assembled_modulus: int = 1

    def constraint_for(self, prime: int) -> CongruenceConstraint | None:
        for c in self.constraints:
            if c.prime == prime:
                return c
        return None

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "p": self.p,
            "n": self.n,
            "kisin_depth": self.kisin_depth,
            "f": self.f.to_json(),
            "constraints": [c.to_json() for c in self.constraints],
            "assembled_modulus": str(self.assembled_modulus),
        }

    @classmethod
    def from_json(cls, data: dict) -> "CurveSpec":
        return cls(
            genus=int(data["genus"]),
            p=int(data["p"]),
            n=int(data["n"]),
            kisin_depth=int(data["kisin_depth"]),
            f=IntPoly.from_json(data["f"]),
            constraints=tuple(CongruenceConstraint.from_json(c) for c in data["constraints"]),
            assembled_modulus=int(data["assembled_modulus"]),
        )


def choose_n(g: int, p: int) -> int:
    """n in {2g+1, 2g+2} prime to p, preferring 2g+1."""
    if g < 1:
        raise ValueError(f"genus must be >= 1, got {g}")
    return 2 * g + 1 if (2 * g + 1) % p else 2 * g + 2


def even_degree_model(n: int) -> IntPoly:
    """A degree-2g+2 model of y^2 = x^n - 1.

    Odd n is moved to even degree by x = 1/u, y = v/u^((n+1)/2), which turns
    x^n - 1 into u - u^(n+1).
    """
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    f = IntPoly.x_pow_minus(n)
    return f if n % 2 == 0 else f.reciprocal(n + 1)


def default_kisin_depth(g: int) -> int:
    return 2 * g + 2


def local_condition_odd_ell(g: int, ell: int) -> CongruenceConstraint:
    """Residue mod ell of degree 2g+2 that is separable, hence good reduction at ell.

    Takes the first monic irreducible of degree 2g+2 in the fixed enumeration
    order; irreducible implies separable and the choice is reproducible.
    """
    if ell == 2 or not is_prime(ell):
        raise ValueError(f"ell must be an odd prime, got {ell}")
    residue = IntPoly(fpoly.find_irreducible(ell, 2 * g + 2).coeffs)
    assert fpoly.is_separable_mod(residue, ell)
    return CongruenceConstraint(ell, ell, residue, Purpose.SEPARABILITY_AT_ODD_ELL)


def _f2(poly: IntPoly) -> list[int]:
    return fpoly.reduce_int_poly(poly, 2)


def smooth_over_f2(h: IntPoly, k: IntPoly, g: int) -> bool:
    """Sufficient test that y^2 + h y = k is smooth over F_2 in genus g.

    Affine part: no common root of h and h'^2 k - k'^2 (the char-2 Jacobian
    criterion). Infinity: either h has x^(g+1)-coefficient 1 and k has degree
    2g+2 mod 2, or k has degree 2g+1 mod 2 and h degree at most g.
    """
    h2, k2 = _f2(h), _f2(k)
    dh = fpoly.derivative(h2, 2)
    crit = fpoly.sub(fpoly.mul(fpoly.mul(dh, dh, 2), k2, 2), fpoly.mul(fpoly.derivative(k2, 2), fpoly.derivative(k2, 2), 2), 2)
    if len(fpoly.gcd(h2, crit, 2)) != 1:
        return False
    deg_h, deg_k = len(h2) - 1, len(k2) - 1
    top = h2[g + 1] if len(h2) > g + 1 else 0
    if deg_k == 2 * g + 2 and top == 1:
        return True
    return deg_k == 2 * g + 1 and deg_h <= g


def good_reduction_two_check(
    f: IntPoly, g: int, check_degree: bool = True
) -> tuple[IntPoly, IntPoly] | None:
    """Look for h with 0/1 coefficients, f = h^2 + 4k, and y^2 + hy = k smooth over F_2.

    Since (2y + h)^2 = h^2 + 4k = f, such a model is the same curve, so a
    returned witness proves good reduction at 2. None means no witness.
    """
    if check_degree and f.degree != 2 * g + 2:
        raise ValueError(f"expected degree {2 * g + 2}, got {f.degree}")
    # h^2 = h(x^2) mod 2, so f mod 2 must be even and h is read off it.
    if any(f[i] % 2 for i in range(1, len(f), 2)):
        return None
    h = IntPoly(f[2 * i] % 2 for i in range((f.degree + 2) // 2))
    diff = f - h * h
    if any(c % 4 for c in diff.coeffs):
        return None
    k = IntPoly(c // 4 for c in diff.coeffs)
    return (h, k) if smooth_over_f2(h, k, g) else None


def mod2_class_for_genus(g: int) -> CongruenceConstraint:
    """First class f_2 = h^2 + 4k mod 2^(2g+2) with a smooth witness over F_2.

    Search order: h monic of degree g+1 with 0/1 coefficients, then k monic of
    degree 2g+2 with 0/1 coefficients, lowest coefficient varying fastest.
    """
    if g < 1:
        raise ValueError(f"genus must be >= 1, got {g}")
    modulus = 2 ** (2 * g + 2)
    for hc in fpoly.monic_polys(2, g + 1):
        h = IntPoly(hc)
        for kc in fpoly.monic_polys(2, 2 * g + 2):
            k = IntPoly(kc)
            if not smooth_over_f2(h, k, g):
                continue
            f2 = (h * h + 4 * k).reduce(modulus)
            witness = good_reduction_two_check(f2, g)
            if witness is not None and witness == (h, k):
                return CongruenceConstraint(2, modulus, f2, Purpose.GOOD_REDUCTION_AT_TWO, witness)
    raise ConstructionFailed(f"no smooth F_2 model found in genus {g}")


def cm_shape_at_p(g: int, p: int, depth: int) -> CongruenceConstraint:
    n = choose_n(g, p)
    modulus = p**depth
    return CongruenceConstraint(p, modulus, even_degree_model(n).reduce(modulus), Purpose.CM_SHAPE_AT_P)


def _odd_ells(g: int, p: int) -> list[int]:
    return [ell for ell in range(3, 2 * g + 2, 2) if is_prime(ell) and ell != p]


def crt_lift(constraints: list[CongruenceConstraint], degree: int) -> tuple[IntPoly, int]:
    """Coefficientwise CRT with representatives in (-M/2, M/2]."""
    modulus = math.prod(c.modulus for c in constraints)
    coeffs = []
    for i in range(degree + 1):
        cls = crt_combine(ResidueClass(c.residue_poly[i], c.modulus) for c in constraints)
        coeffs.append(cls.symmetric())
    return IntPoly(coeffs), modulus


def assemble(g: int, p: int, depth: int | None = None, workers: int = 1) -> CurveSpec:
    """Build a squarefree f of degree 2g+2 meeting every local condition."""
    if g < 1:
        raise ValueError(f"genus must be >= 1, got {g}")
    if p == 2:
        raise UnsupportedPrime("p = 2 is handled by two_torsion_rational_curve, not the pipeline")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    depth = default_kisin_depth(g) if depth is None else depth
    if depth < 1:
        raise ValueError(f"kisin depth must be >= 1, got {depth}")

    ells = _odd_ells(g, p)
    if workers > 1 and len(ells) > 1:
        with ThreadPoolExecutor(workers) as pool:
            odd = list(pool.map(lambda ell: local_condition_odd_ell(g, ell), ells))
    else:
        odd = [local_condition_odd_ell(g, ell) for ell in ells]
    constraints = sorted([mod2_class_for_genus(g), *odd, cm_shape_at_p(g, p, depth)], key=lambda c: c.prime)

    degree = 2 * g + 2
    f, modulus = crt_lift(constraints, degree)
    coeffs = list(f.coeffs) + [0] * (degree + 1 - len(f))
    # Deterministic repair: add M to c0, c1, ... in turn until squarefree.
    for bump in range(MAX_BUMPS):
        f = IntPoly(coeffs)
        if f.degree == degree and discriminant(f) != 0:
            break
        coeffs[bump % (degree + 1)] += modulus
    else:
        raise ConstructionFailed(f"no squarefree lift found after {MAX_BUMPS} bumps")

    return CurveSpec(
        genus=g,
        p=p,
        n=choose_n(g, p),
        kisin_depth=depth,
        f=f,
        constraints=tuple(constraints),
        assembled_modulus=modulus,
    )


def two_torsion_rational_curve(g: int) -> IntPoly:
    """prod_{j=0}^{2g} (x - j): every 2-torsion point of its Jacobian is rational."""
    f = IntPoly([1])
    for j in range(2 * g + 1):
        f = f * IntPoly([-j, 1])
    return f
