"""Per-prime tameness certificates for constructed curves.

Primes ell != p split in two: for ell <= 2g+1 good reduction is checked
(disc-unit at odd ell, a smooth F_2 model at ell = 2), and for ell > 2g+1
tameness is automatic by the Serre-Tate bound and merely recorded. At ell = p
the CM criterion for y^2 = x^n - 1 is applied; it transfers to the curve only
through a congruence of non-effective depth, so that entry is always marked
kisin_conditional.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .arith import is_prime, valuation
from .construct import CurveSpec, even_degree_model, good_reduction_two_check, smooth_over_f2
from .endo import tame_at_p_criterion
from .entries import CertificateEntry, Justification, Verdict
from .errors import IncompleteSpec, UnsupportedPrime, WrongPrime
from .intpoly import IntPoly, discriminant


@dataclass(frozen=True)
class TamenessCertificate:
    curve: CurveSpec
    entries: tuple[CertificateEntry, ...]

    @property
    def overall(self) -> Verdict:
        return Verdict.PASS if all(e.passed for e in self.entries) else Verdict.FAIL

    def failing(self) -> list[CertificateEntry]:
        return [e for e in self.entries if not e.passed]

    def to_json(self) -> dict:
        return {
            "curve": self.curve.to_json(),
            "entries": [e.to_json() for e in self.entries],
            "overall": self.overall.value,
        }

    @classmethod
    def from_json(cls, data: dict) -> "TamenessCertificate":
        return cls(
            curve=CurveSpec.from_json(data["curve"]),
            entries=tuple(CertificateEntry.from_json(e) for e in data["entries"]),
        )


def _valuation_or_none(x: int, ell: int) -> int | None:
    return None if x == 0 else valuation(x, ell)


def good_reduction_odd(f: IntPoly, ell: int) -> CertificateEntry:
    """PASS iff ell divides neither lc(f) nor disc(f)."""
    if ell == 2:
        raise WrongPrime("use the F_2 model check at ell = 2")
    if not is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    disc = discriminant(f)
    v_disc = _valuation_or_none(disc, ell)
    v_lc = _valuation_or_none(f.lc, ell)
    ok = v_disc == 0 and v_lc == 0
    return CertificateEntry(
        scope=str(ell),
        verdict=Verdict.PASS if ok else Verdict.FAIL,
        justification=Justification.GOOD_REDUCTION,
        witness={"disc_valuation": v_disc, "lc_valuation": v_lc, "discriminant_is_zero": disc == 0},
    )


def _fail(entry: CertificateEntry, reason: str) -> CertificateEntry:
    witness = dict(entry.witness or {})
    witness["reason"] = reason
    return replace(entry, verdict=Verdict.FAIL, witness=witness)


def _entry_at_two(curve: CurveSpec) -> CertificateEntry:
    g, f = curve.genus, curve.f
    stored = curve.constraint_for(2)
    if stored is None or stored.witness is None:
        raise IncompleteSpec("curve spec carries no prime-2 witness")
    h_s, k_s = stored.witness

    found = good_reduction_two_check(f, g) if f.degree == 2 * g + 2 else None
    entry = CertificateEntry(
        scope="2",
        verdict=Verdict.PASS,
        justification=Justification.GOOD_REDUCTION,
        witness=None if found is None else {"h": found[0].to_json(), "k": found[1].to_json()},
    )
    if found is None:
        return _fail(entry, "no smooth model y^2 + h y = k over F_2")
    if not stored.satisfied_by(f):
        return _fail(entry, "f does not replay the stored 2-adic class")
    if not stored.residue_poly.congruent(h_s * h_s + 4 * k_s, stored.modulus):
        return _fail(entry, "stored residue is not h^2 + 4k")
    if not smooth_over_f2(h_s, k_s, g) or found[0] != h_s:
        return _fail(entry, "stored witness does not match f")
    return entry


def _entry_at_odd(curve: CurveSpec, ell: int) -> CertificateEntry:
    entry = good_reduction_odd(curve.f, ell)
    if entry.passed and curve.f.degree != 2 * curve.genus + 2:
        return _fail(entry, "degree of f is not 2g+2")
    stored = curve.constraint_for(ell)
    if entry.passed and stored is not None and not stored.satisfied_by(curve.f):
        return _fail(entry, f"f does not replay the stored class mod {stored.modulus}")
    return entry


def _entry_at_p(curve: CurveSpec) -> CertificateEntry:
    g, p, n, depth = curve.genus, curve.p, curve.n, curve.kisin_depth
    entry = replace(tame_at_p_criterion(n, p), kisin_conditional=True)
    entry = replace(entry, witness={**entry.witness, "kisin_depth": depth})
    if not entry.passed:
        return entry
    if n not in (2 * g + 1, 2 * g + 2):
        return _fail(entry, f"n={n} is not 2g+1 or 2g+2")
    modulus = p**depth
    target = even_degree_model(n)
    if not curve.f.congruent(target, modulus):
        return _fail(entry, f"f is not congruent to the model of y^2 = x^{n} - 1 mod {p}^{depth}")
    stored = curve.constraint_for(p)
    if stored is None or stored.modulus != modulus or not stored.residue_poly.congruent(target, modulus):
        return _fail(entry, "stored CM constraint does not match the model")
    return entry


def certify(curve: CurveSpec) -> TamenessCertificate:
    g, p = curve.genus, curve.p
    if p == 2:
        raise UnsupportedPrime("certificates have no p = 2 mode")
    bound = 2 * g + 1
    entries = [_entry_at_two(curve)]
    entries += [_entry_at_odd(curve, ell) for ell in range(3, bound + 1, 2) if is_prime(ell) and ell != p]
    scope = f"ell>{bound}" + (f",ell!={p}" if p > bound else "")
    entries.append(
        CertificateEntry(
            scope=scope,
            verdict=Verdict.PASS,
            justification=Justification.SERRE_TATE_BOUND,
            witness={"bound": bound},
        )
    )
    entries.append(_entry_at_p(curve))
    return TamenessCertificate(curve, tuple(entries))
