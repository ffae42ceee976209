"""CM structure of Jac(y^2 = x^n - a) and the tame-at-p criterion.

The geometric endomorphism ring is the product of Z[zeta_d] over d | n with
d > 2. Reducing it mod p gives a product of truncated polynomial rings over
residue fields, one per prime above p in each Q(zeta_d); when p does not
divide n every factor is a field and the unit group has order prime to p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import divisors, euler_phi, is_prime, mult_order, valuation
from .entries import CertificateEntry, Justification, Verdict
from .errors import GenusZero, RamifiedCase
from .intpoly import IntPoly, cyclotomic, pn_poly


@dataclass(frozen=True)
class SplittingDatum:
    """Decomposition of p in Q(zeta_d): ramification e, residue degree f, count g."""

    d: int
    e: int
    f: int
    g_count: int

    def local_unit_order(self, p: int) -> int:
        """Order of (O/pO)^x for this factor: each prime gives (p^f - 1) p^(f(e-1))."""
        q = p**self.f
        return ((q - 1) * q ** (self.e - 1)) ** self.g_count

    def to_json(self) -> dict:
        return {"d": self.d, "e": self.e, "f": self.f, "g": self.g_count}

    @classmethod
    def from_json(cls, data: dict) -> "SplittingDatum":
        return cls(int(data["d"]), int(data["e"]), int(data["f"]), int(data["g"]))


@dataclass(frozen=True)
class EndoStructure:
    n: int
    genus: int
    factors: tuple[SplittingDatum, ...]
    unit_group_order: int
    p_unramified: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "genus": self.genus,
            "factors": [s.to_json() for s in self.factors],
            "unit_group_order": str(self.unit_group_order),
            "p_unramified": self.p_unramified,
        }

    @classmethod
    def from_json(cls, data: dict) -> "EndoStructure":
        return cls(
            n=int(data["n"]),
            genus=int(data["genus"]),
            factors=tuple(SplittingDatum.from_json(s) for s in data["factors"]),
            unit_group_order=int(data["unit_group_order"]),
            p_unramified=bool(data["p_unramified"]),
        )


def genus_of(n: int) -> int:
    return (n - 1) // 2


def endo_ring(n: int) -> list[int]:
    """Conductors d of the cyclotomic factors Z[zeta_d] of End(Jac(y^2 = x^n - a))."""
    if n < 3:
        raise GenusZero(f"y^2 = x^{n} - a has genus 0")
    return [d for d in divisors(n) if d > 2]


def splitting_data(d: int, p: int) -> SplittingDatum:
    if d < 1:
        raise ValueError(f"conductor must be >= 1, got {d}")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    v = valuation(d, p)
    prime_to_p = d // p**v
    e = euler_phi(p**v)
    f = mult_order(p, prime_to_p)
    g_count = euler_phi(d) // (e * f)
    return SplittingDatum(d, e, f, g_count)


def unit_group_order(n: int, p: int) -> int:
    """|(O_F tensor F_p)^x| for the CM algebra of y^2 = x^n - a, p not dividing n."""
    if n % p == 0:
        raise RamifiedCase(f"{p} divides n = {n}")
    order = 1
    for d in endo_ring(n):
        s = splitting_data(d, p)
        order *= (p**s.f - 1) ** s.g_count
    return order


def endo_structure(n: int, p: int) -> EndoStructure:
    """Full splitting picture; in the ramified case the order includes p-power parts."""
    factors = tuple(splitting_data(d, p) for d in endo_ring(n))
    order = 1
    for s in factors:
        order *= s.local_unit_order(p)
    return EndoStructure(
        n=n,
        genus=genus_of(n),
        factors=factors,
        unit_group_order=order,
        p_unramified=all(s.e == 1 for s in factors),
    )


def tame_at_p_criterion(n: int, p: int) -> CertificateEntry:
    """PASS iff p does not divide n; the witness records the unit-group order."""
    structure = endo_structure(n, p)
    witness = {
        "n": n,
        "unit_group_order": str(structure.unit_group_order),
        "gcd_with_p": math.gcd(structure.unit_group_order, p),
        "factors": [s.to_json() for s in structure.factors],
    }
    ok = n % p != 0
    if not ok:
        witness["reason"] = f"p={p} divides n={n}"
    return CertificateEntry(
        scope=str(p),
        verdict=Verdict.PASS if ok else Verdict.FAIL,
        justification=Justification.CM_AT_P,
        witness=witness,
    )


def eigenvalue_orders(n: int) -> list[int]:
    """Distinct orders of zeta_n^(i+1), i < g: the eigenvalues on holomorphic differentials."""
    return sorted({n // math.gcd(n, i + 1) for i in range(genus_of(n))})


def verify_pn_via_eigenvalues(n: int) -> bool:
    """Check that pn_poly(n) is the product of cyclotomics over the eigenvalue orders."""
    prod = IntPoly([1])
    for d in eigenvalue_orders(n):
        prod = prod * cyclotomic(d)
    return prod == pn_poly(n)
