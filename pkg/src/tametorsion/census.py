"""Point counts, Frobenius characteristic polynomials and image statistics.

Counting is vectorized with numpy: all of F_q (q = ell^r) is laid out as an
array of base-ell digit vectors, f is evaluated by Horner's rule on whole
chunks, and the quadratic character is read from a table of squares built
the same way. This keeps q up to about 10^7 within seconds.

The census output is evidence about the mod-p image, never a proof.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from . import fpoly
from .arith import factorize, is_prime, lcm_all, order_in_group
from .construct import CurveSpec
from .errors import BadReduction, BudgetExceeded, InsufficientData
from .fpoly import FpPoly
from .intpoly import IntPoly, discriminant

DEFAULT_BUDGET = 10**7
CHUNK = 1 << 20

MIN_USABLE_PRIMES = 5
OBSTRUCTION_WINDOW = 50
TRACE_ZERO_LIMIT = Fraction(1, 4)
POLICY = (
    "artifact policy: ConsistentWithFullImage needs every multiplier class mod p, "
    f"some irreducible charpoly mod p, and exact trace zero in at most {TRACE_ZERO_LIMIT} of samples; "
    f"ObstructionFound needs >= {OBSTRUCTION_WINDOW} samples all reducible with one factorization shape; "
    "statistical evidence only, not a proof of surjectivity"
)


class ImageVerdict(str, Enum):
    CONSISTENT = "ConsistentWithFullImage"
    INCONCLUSIVE = "Inconclusive"
    OBSTRUCTION = "ObstructionFound"


def has_good_reduction(f: IntPoly, ell: int) -> bool:
    return f.lc % ell != 0 and discriminant(f) % ell != 0


def _digits_of(values: np.ndarray, ell: int, r: int) -> np.ndarray:
    idx = values.copy()
    out = np.empty((len(values), r), dtype=np.int64)
    for j in range(r):
        out[:, j] = idx % ell
        idx //= ell
    return out


def _encode(a: np.ndarray, ell: int) -> np.ndarray:
    out = np.zeros(a.shape[0], dtype=np.int64)
    for j in range(a.shape[1] - 1, -1, -1):
        out = out * ell + a[:, j]
    return out


def _mul(a: np.ndarray, b: np.ndarray, ell: int, modulus: np.ndarray) -> np.ndarray:
    """Row-wise product in F_ell[t]/(modulus); modulus monic of degree r."""
    n, r = a.shape
    prod = np.zeros((n, 2 * r - 1), dtype=np.int64)
    for i in range(r):
        prod[:, i:i + r] += a[:, i:i + 1] * b
    prod %= ell
    for k in range(2 * r - 2, r - 1, -1):
        c = prod[:, k:k + 1]
        prod[:, k - r:k] = (prod[:, k - r:k] - c * modulus[:r]) % ell
    return prod[:, :r]


def _primitive_element(ell: int, r: int) -> int:
    """Smallest encoded generator of the multiplicative group of F_{ell^r}."""
    field = fpoly.FiniteField(ell, r)
    order = field.q - 1
    cofactors = [order // q for q in factorize(order)]
    for cand in range(2, field.q):
        if all(field.pow(cand, k) != 1 for k in cofactors):
            return cand
    raise AssertionError("unreachable: finite fields have cyclic unit groups")


class _FieldTables:
    """Square table for F_{ell^r}, plus exp/log tables when r > 1.

    Elements are ints encoding base-ell digit vectors. In the extension case
    multiplication goes through discrete logs to a fixed generator, so a
    Horner step costs a handful of array lookups instead of r^2 digit
    products; the exp table itself is filled blockwise (baby steps, then
    giant-step multiplications on whole blocks).
    """

    def __init__(self, ell: int, r: int) -> None:
        self.ell, self.r, self.q = ell, r, ell**r
        if r == 1:
            x = np.arange(ell, dtype=np.int64)
            self.is_square = np.zeros(ell, dtype=bool)
            self.is_square[x * x % ell] = True
            self.is_square[0] = False
            return
        self._build_logs()
        self.is_square = np.zeros(self.q, dtype=bool)
        self.is_square[self.exp[0::2]] = True

    def _build_logs(self) -> None:
        ell, r, q = self.ell, self.r, self.q
        modulus = np.array(fpoly.find_irreducible(ell, r).coeffs, dtype=np.int64)
        field = fpoly.FiniteField(ell, r)
        gen = _primitive_element(ell, r)
        order = q - 1
        block = math.isqrt(order) + 1
        baby = [1]
        for _ in range(block - 1):
            baby.append(field.mul(baby[-1], gen))
        giant = field.pow(gen, block)
        cur = _digits_of(np.array(baby, dtype=np.int64), ell, r)
        step = np.tile(_digits_of(np.array([giant], dtype=np.int64), ell, r), (block, 1))
        exp = np.empty(block * (order // block + 1), dtype=np.int64)
        for i in range(0, len(exp), block):
            exp[i:i + block] = _encode(cur, ell)
            cur = _mul(cur, step, ell, modulus)
        self.exp = exp[:order]
        self.log = np.zeros(q, dtype=np.int64)
        self.log[self.exp] = np.arange(order, dtype=np.int64)

    def character_of_index(self, v: np.ndarray) -> np.ndarray:
        chi = np.where(self.is_square[v], 1, -1)
        chi[v == 0] = 0
        return chi

    def _values(self, coeffs: list[int], start: int, stop: int) -> np.ndarray:
        ell = self.ell
        x = np.arange(start, stop, dtype=np.int64)
        acc = np.zeros_like(x)
        if self.r == 1:
            for c in reversed(coeffs):
                acc = (acc * x + c) % ell
            return acc
        order = self.q - 1
        log_x = self.log[x]
        x_nonzero = x != 0
        for c in reversed(coeffs):
            nz = x_nonzero & (acc != 0)
            prod = np.where(nz, self.exp[(self.log[acc] + log_x) % order], 0)
            low = prod % ell
            acc = prod - low + (low + c) % ell
        return acc

    def character_sum(self, f: IntPoly) -> int:
        coeffs = [c % self.ell for c in f.coeffs]
        total = 0
        for start in range(0, self.q, CHUNK):
            values = self._values(coeffs, start, min(start + CHUNK, self.q))
            total += int(self.character_of_index(values).sum())
        return total


def count_points(f: IntPoly, ell: int, r: int = 1, budget: int = DEFAULT_BUDGET) -> int:
    """Projective points of the smooth model of y^2 = f(x) over F_{ell^r}."""
    if ell == 2 or not is_prime(ell):
        raise ValueError(f"ell must be an odd prime, got {ell}")
    if r < 1:
        raise ValueError(f"extension degree must be >= 1, got {r}")
    if not has_good_reduction(f, ell):
        raise BadReduction(f"y^2 = {f} has bad reduction at {ell}")
    if ell**r > budget:
        raise BudgetExceeded(f"{ell}^{r} exceeds the enumeration budget {budget}")
    tables = _FieldTables(ell, r)
    affine = tables.q + tables.character_sum(f)
    if f.degree % 2:
        return affine + 1
    lc = np.array([f.lc % ell], dtype=np.int64)
    return affine + 1 + int(tables.character_of_index(lc)[0])


@dataclass(frozen=True)
class FrobeniusRecord:
    """Frobenius data at a good prime ell.

    ``charpoly`` is T^2g - a1 T^(2g-1) + a2 T^(2g-2) - ..., stored ascending;
    ``a`` holds a0 = 1, a1, ..., a2g.
    """

    ell: int
    genus: int
    counts: tuple[int, ...]
    a: tuple[int, ...]
    charpoly: IntPoly
    p: int | None = None
    charpoly_mod_p: FpPoly | None = None
    multiplier: int | None = None
    irreducible_mod_p: bool | None = None
    shape_mod_p: tuple[tuple[int, int], ...] | None = None
    self_checked: tuple[int, ...] = field(default=())

    @property
    def trace(self) -> int:
        return self.a[1]

    def to_json(self) -> dict:
        out = {
            "ell": self.ell,
            "genus": self.genus,
            "counts": [str(n) for n in self.counts],
            "charpoly": self.charpoly.to_json(),
        }
        if self.p is not None:
            out.update(
                {
                    "p": self.p,
                    "charpoly_mod_p": self.charpoly_mod_p.to_json(),
                    "multiplier": self.multiplier,
                    "irreducible_mod_p": self.irreducible_mod_p,
                    "shape_mod_p": [list(s) for s in self.shape_mod_p],
                }
            )
        out["self_checked"] = list(self.self_checked)
        return out


def charpoly_from_counts(counts: list[int], ell: int, g: int) -> tuple[int, ...]:
    """Coefficients a0..a2g of the Frobenius charpoly from N_1..N_g.

    Power sums s_r = ell^r + 1 - N_r give a1..ag by Newton's identities;
    the functional equation a_(2g-i) = ell^(g-i) a_i supplies the rest.
    """
    if len(counts) < g:
        raise ValueError(f"need {g} point counts, got {len(counts)}")
    s = [None] + [ell**r + 1 - counts[r - 1] for r in range(1, g + 1)]
    e = [1]
    for k in range(1, g + 1):
        acc = sum((-1) ** (i - 1) * e[k - i] * s[i] for i in range(1, k + 1))
        if acc % k:
            raise ArithmeticError("point counts are inconsistent with an integral charpoly")
        e.append(acc // k)
    for k in range(g + 1, 2 * g + 1):
        e.append(ell ** (k - g) * e[2 * g - k])
    return tuple(e)


def charpoly_from_a(a: tuple[int, ...]) -> IntPoly:
    two_g = len(a) - 1
    return IntPoly((-1) ** (two_g - i) * a[two_g - i] for i in range(two_g + 1))


def predicted_counts(a: tuple[int, ...], ell: int, upto: int) -> list[int]:
    """N_1..N_upto implied by the charpoly, via Newton's identities in reverse."""
    two_g = len(a) - 1
    e = list(a) + [0] * max(0, upto - two_g)
    s = [0]
    for k in range(1, upto + 1):
        val = (-1) ** (k - 1) * k * e[k]
        val += sum((-1) ** (k - 1 + i) * e[k - i] * s[i] for i in range(1, k))
        s.append(val)
    return [ell**r + 1 - s[r] for r in range(1, upto + 1)]


def weil_violations(a: tuple[int, ...], ell: int) -> list[str]:
    """Exact checks of the functional equation, Weil bounds and point positivity."""
    two_g = len(a) - 1
    g = two_g // 2
    problems = []
    for i in range(g + 1):
        if a[two_g - i] != ell ** (g - i) * a[i]:
            problems.append(f"functional equation fails at a_{two_g - i}")
    for i in range(two_g + 1):
        if a[i] ** 2 > math.comb(two_g, i) ** 2 * ell**i:
            problems.append(f"|a_{i}| exceeds the Weil bound")
    for r, n in enumerate(predicted_counts(a, ell, two_g), start=1):
        if n <= 0:
            problems.append(f"predicted N_{r} = {n} is not positive")
    return problems


def _unit_group_order(factors: list[tuple[list[int], int]], p: int) -> int:
    order = 1
    for g, m in factors:
        d = len(g) - 1
        order *= (p**d - 1) * p ** (d * (m - 1))
    return order


def companion_order(poly: FpPoly, seed: int = 0) -> int:
    """Multiplicative order of t in F_p[t]/(poly); poly(0) must be nonzero."""
    p, P = poly.p, list(poly.coeffs)
    factors = fpoly.factor_coeffs(P, p, seed)
    return order_in_group(
        [0, 1],
        _unit_group_order(factors, p),
        lambda y: y == [1],
        lambda x, k: fpoly.powmod(x, k, P, p),
    )


def checked_charpoly(counts: list[int], ell: int, g: int) -> tuple[int, ...]:
    a = charpoly_from_counts(counts, ell, g)
    problems = weil_violations(a, ell)
    if problems:
        raise ArithmeticError(f"charpoly at {ell} violates Weil constraints: {problems}")
    return a


def frobenius_charpoly(
    f: IntPoly,
    ell: int,
    g: int,
    p: int | None = None,
    budget: int = DEFAULT_BUDGET,
    self_check: bool = False,
    seed: int = 0,
) -> FrobeniusRecord:
    """Frobenius record at ell from N_1..N_g; optional reduction data mod p.

    With ``self_check`` the counts N_(g+1)..N_2g are also enumerated (where
    the budget allows) and compared against the charpoly's prediction.
    """
    counts = [count_points(f, ell, r, budget) for r in range(1, g + 1)]
    a = checked_charpoly(counts, ell, g)
    checked = []
    if self_check:
        predicted = predicted_counts(a, ell, 2 * g)
        for r in range(g + 1, 2 * g + 1):
            if ell**r > budget:
                break
            actual = count_points(f, ell, r, budget)
            if actual != predicted[r - 1]:
                raise ArithmeticError(f"N_{r} over F_{ell}^{r}: predicted {predicted[r - 1]}, counted {actual}")
            checked.append(r)
    charpoly = charpoly_from_a(a)
    if p is None:
        return FrobeniusRecord(ell, g, tuple(counts), a, charpoly, self_checked=tuple(checked))
    red = fpoly.reduce_int_poly(charpoly, p)
    factors = fpoly.factor_coeffs(red, p, seed)
    shape = tuple(sorted((len(h) - 1, m) for h, m in factors))
    return FrobeniusRecord(
        ell=ell,
        genus=g,
        counts=tuple(counts),
        a=a,
        charpoly=charpoly,
        p=p,
        charpoly_mod_p=FpPoly(p, tuple(red)),
        multiplier=ell % p,
        irreducible_mod_p=shape == ((2 * g, 1),),
        shape_mod_p=shape,
        self_checked=tuple(checked),
    )


@dataclass(frozen=True)
class ImageEvidence:
    p: int
    sampled: int
    multiplier_classes_hit: tuple[int, ...]
    irreducible_fraction: Fraction
    trace_zero_fraction: Fraction
    order_lcm: int
    verdict: ImageVerdict
    skipped: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "sampled": self.sampled,
            "multiplier_classes_hit": list(self.multiplier_classes_hit),
            "irreducible_fraction": str(self.irreducible_fraction),
            "trace_zero_fraction": str(self.trace_zero_fraction),
            "order_lcm": str(self.order_lcm),
            "verdict": self.verdict.value,
            "skipped": list(self.skipped),
            "policy": POLICY,
        }


def summarize(
    records: list[FrobeniusRecord], p: int, skipped: tuple[int, ...] = (), seed: int = 0
) -> ImageEvidence:
    """Aggregate records; the result does not depend on record order."""
    records = sorted(records, key=lambda rec: rec.ell)
    if len(records) < MIN_USABLE_PRIMES:
        raise InsufficientData(f"{len(records)} usable primes, need {MIN_USABLE_PRIMES}")
    hit = tuple(sorted({rec.multiplier for rec in records}))
    irreducible = Fraction(sum(rec.irreducible_mod_p for rec in records), len(records))
    trace_zero = Fraction(sum(rec.trace == 0 for rec in records), len(records))
    order_lcm = lcm_all(companion_order(rec.charpoly_mod_p, seed) for rec in records)

    shapes = {rec.shape_mod_p for rec in records}
    if len(records) >= OBSTRUCTION_WINDOW and irreducible == 0 and len(shapes) == 1:
        verdict = ImageVerdict.OBSTRUCTION
    elif len(hit) == p - 1 and irreducible > 0 and trace_zero <= TRACE_ZERO_LIMIT:
        verdict = ImageVerdict.CONSISTENT
    else:
        verdict = ImageVerdict.INCONCLUSIVE
    return ImageEvidence(p, len(records), hit, irreducible, trace_zero, order_lcm, verdict, tuple(sorted(skipped)))


def _record_job(args: tuple) -> FrobeniusRecord:
    f, ell, g, p, budget, seed = args
    return frobenius_charpoly(f, ell, g, p, budget, seed=seed)


def census(
    f: IntPoly,
    g: int,
    p: int,
    ell_bound: int,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    seed: int = 0,
) -> tuple[list[FrobeniusRecord], ImageEvidence]:
    """Frobenius records at good odd ell <= ell_bound (ell != p) and their summary."""
    if ell_bound < 3:
        raise ValueError(f"ell_bound must be >= 3, got {ell_bound}")
    disc = discriminant(f)
    usable, skipped = [], []
    for ell in range(3, ell_bound + 1, 2):
        if ell == p or not is_prime(ell):
            continue
        if f.lc % ell == 0 or disc % ell == 0 or ell**g > budget:
            skipped.append(ell)
        else:
            usable.append(ell)
    if len(usable) < MIN_USABLE_PRIMES:
        raise InsufficientData(f"{len(usable)} usable primes up to {ell_bound}, need {MIN_USABLE_PRIMES}")
    jobs = [(f, ell, g, p, budget, seed) for ell in usable]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            records = list(pool.map(_record_job, jobs))
    else:
        records = [_record_job(job) for job in jobs]
    return records, summarize(records, p, tuple(skipped), seed)


def image_evidence(
    curve: CurveSpec, ell_bound: int, budget: int = DEFAULT_BUDGET, workers: int = 1
) -> ImageEvidence:
    return census(curve.f, curve.genus, curve.p, ell_bound, budget, workers)[1]
