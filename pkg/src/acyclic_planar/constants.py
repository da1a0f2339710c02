"""Exact checks of the numeric constants behind the reducibility bounds.

Square roots are never evaluated in floating point where a claim depends on
them: an inequality a + sqrt(b) <= c is tested as c - a >= 0 and
(c - a)^2 >= b on integers.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np
from numpy.polynomial import Polynomial as P

BIG = 8680
PALETTE_FACTOR = 5
DELTA_BOUND = 420_000_000_000_000
RC3_CAP = 35
RC4_CAP = 141415
RC4_NS_MAX = 70707
VERY_BIG_OFFSET = 4 * BIG

# (sum bound, threshold) for the four classes of private low neighbours
COROLLARY_LINES = ((8680, 8889), (17360, 17655), (26040, 26401), (34720, 35137))


class ConstantsError(AssertionError):
    pass


# products from the pigeonhole count

def product_bound(nf: int, ns: int, s: int) -> int:
    """(5nf + ns(nf+ns+1-s) + 10s + 1)(nf + ns - s + 1)."""
    return (5 * nf + ns * (nf + ns + 1 - s) + 10 * s + 1) * (nf + ns - s + 1)


def rc3_objective(ns: int, s: int, cap: int = RC3_CAP) -> int:
    nf = cap - 2 * ns
    return (5 * nf + ns * (nf + ns + 1 - s) + 10 * s + 1) * (cap - ns - s + 1)


def rc3_max(cap: int = RC3_CAP) -> tuple[int, tuple[int, int]]:
    """Maximum over 0 <= ns <= cap//2, 0 <= s <= cap - ns (nested loops)."""
    best, arg = None, None
    for ns in range(cap // 2 + 1):
        for s in range(cap - ns + 1):
            f = rc3_objective(ns, s, cap)
            if best is None or f > best:
                best, arg = f, (ns, s)
    return best, arg


def rc3_max_free_nf(cap: int = RC3_CAP) -> tuple[int, tuple[int, int, int]]:
    """Same maximum with nf left free subject to nf + 2ns <= cap.

    The product is increasing in nf, so this must land on nf = cap - 2ns
    and reproduce rc3_max.
    """
    best, arg = None, None
    for ns in range(cap // 2 + 1):
        for nf in range(cap - 2 * ns + 1):
            for s in range(nf + ns + 1):
                f = product_bound(nf, ns, s)
                if best is None or f > best:
                    best, arg = f, (nf, ns, s)
    return best, arg


def rc3_variant_max(cap: int = RC3_CAP) -> tuple[int, tuple[int, int]]:
    """The product with +2 in the first factor and no +1 in the second.

    This form, (5nf + ns(nf+ns+1-s) + 10s + 2)(nf + ns - s), is what the
    expected value 8680 corresponds to; kept to document the discrepancy.
    """
    best, arg = None, None
    for ns in range(cap // 2 + 1):
        for s in range(cap - ns + 1):
            nf = cap - 2 * ns
            f = (5 * nf + ns * (nf + ns + 1 - s) + 10 * s + 2) * (nf + ns - s)
            if best is None or f > best:
                best, arg = f, (ns, s)
    return best, arg


# the cubic bound for very big vertices

RC4_TERMS = {  # coefficient of ns^a s^b in the published expansion
    (3, 0): 1, (2, 1): 2, (2, 0): -282822, (1, 2): 1, (1, 1): -282832,
    (1, 0): 19996363820, (0, 2): -10, (0, 1): 707084, (0, 0): 99991859616,
}


def rc4_factored(ns, s, cap: int = RC4_CAP):
    nf = cap - 2 * ns
    return (5 * nf + ns * (nf + ns + 1 - s) + 10 * s + 1) * (nf + ns - s + 1)


def rc4_expanded(ns, s):
    return sum(c * ns ** a * s ** b for (a, b), c in RC4_TERMS.items())


def expansion_agrees(samples: int = 10_000, seed: int = 0) -> tuple[bool, list]:
    rng = random.Random(seed)
    bad = []
    for _ in range(samples):
        ns = rng.randint(0, RC4_NS_MAX)
        s = rng.randint(0, RC4_CAP - ns)
        if rc4_factored(ns, s) != rc4_expanded(ns, s):
            bad.append((ns, s))
    return not bad, bad[:5]


def _grad_s(ns, s):
    return 2 * ns ** 2 + 2 * ns * s - 282832 * ns - 20 * s + 707084


def _grad_ns(ns, s):
    return 3 * ns ** 2 + 4 * ns * s - 565644 * ns + s ** 2 - 282832 * s + 19996363820


def critical_points() -> list[tuple[float, float]]:
    """Real solutions of grad F = 0.

    dF/ds is linear in s, so s = N(ns)/D(ns); clearing D^2 in dF/dns
    leaves a quartic in ns.
    """
    x = P([0, 1])
    d = 2 * x - 20
    n = -(2 * x ** 2 - 282832 * x + 707084)
    quartic = (3 * x ** 2 - 565644 * x + 19996363820) * d ** 2 + (4 * x - 282832) * n * d + n ** 2
    out = []
    for r in quartic.roots():
        if abs(r.imag) > 1e-6 * max(1.0, abs(r.real)):
            continue
        ns = r.real
        if abs(d(ns)) < 1e-9:
            continue
        out.append((float(ns), float(n(ns) / d(ns))))
    return out


def _in_domain(ns: float, s: float) -> bool:
    return 0 <= ns <= RC4_NS_MAX and 0 <= s <= RC4_CAP - ns


def _scan(values: np.ndarray) -> tuple[int, int]:
    i = int(np.argmax(values))
    return int(values[i]), i


def rc4_boundary() -> tuple[int, tuple[int, int], dict]:
    """Integer maximum over the boundary of the domain.

    Values stay below 2^63, so int64 is exact.
    """
    ns = np.arange(RC4_NS_MAX + 1, dtype=np.int64)
    segments = {}
    segments["s=0"] = (ns, np.zeros_like(ns))
    s_all = np.arange(RC4_CAP + 1, dtype=np.int64)
    segments["ns=0"] = (np.zeros_like(s_all), s_all)
    segments["s=cap-ns"] = (ns, RC4_CAP - ns)
    s_top = np.arange(RC4_CAP - RC4_NS_MAX + 1, dtype=np.int64)
    segments["ns=max"] = (np.full_like(s_top, RC4_NS_MAX), s_top)
    best, arg, per = None, None, {}
    for name, (a, b) in segments.items():
        v, i = _scan(rc4_factored(a, b))
        per[name] = (v, (int(a[i]), int(b[i])))
        if best is None or v > best:
            best, arg = v, (int(a[i]), int(b[i]))
    # exact re-evaluation with Python integers
    assert rc4_expanded(*arg) == best
    return best, arg, per


def rc4_grid(levels: int = 12, points: int = 161) -> tuple[float, tuple[float, float]]:
    """Coarse-to-fine grid search over the continuous domain."""
    lo_ns, hi_ns = 0.0, float(RC4_NS_MAX)
    lo_s, hi_s = 0.0, float(RC4_CAP)
    best, arg = -np.inf, (0.0, 0.0)
    for _ in range(levels):
        a = np.linspace(lo_ns, hi_ns, points)
        b = np.linspace(lo_s, hi_s, points)
        A, B = np.meshgrid(a, b, indexing="ij")
        mask = B <= RC4_CAP - A
        F = np.where(mask, rc4_factored(A, B), -np.inf)
        i = np.unravel_index(np.argmax(F), F.shape)
        if F[i] > best:
            best, arg = float(F[i]), (float(A[i]), float(B[i]))
        wn = (hi_ns - lo_ns) / 8
        ws = (hi_s - lo_s) / 8
        lo_ns, hi_ns = max(0.0, arg[0] - wn), min(float(RC4_NS_MAX), arg[0] + wn)
        lo_s, hi_s = max(0.0, arg[1] - ws), min(float(RC4_CAP), arg[1] + ws)
    return best, arg


@dataclass
class RC4Result:
    value: int
    argmax: tuple[int, int]
    grid_value: float
    grid_argmax: tuple[float, float]
    critical_points: list[tuple[float, float]]
    interior_critical: list[tuple[float, float]]
    segments: dict

    @property
    def relative_gap(self) -> float:
        return abs(self.value - self.grid_value) / self.value


def rc4_max() -> RC4Result:
    value, arg, per = rc4_boundary()
    crit = critical_points()
    inside = [p for p in crit if _in_domain(*p)]
    for p in inside:
        # an interior stationary point would have to be checked directly
        ns, s = round(p[0]), round(p[1])
        if _in_domain(ns, s) and rc4_factored(ns, s) > value:
            value, arg = rc4_factored(ns, s), (ns, s)
    gv, ga = rc4_grid()
    res = RC4Result(value, arg, gv, ga, crit, inside, per)
    if res.relative_gap > 1e-6:
        raise ConstantsError(f"methods disagree: {value} vs {gv}")
    return res


# square-root inequalities

def le_plus_sqrt(a: int, b: int, c: int) -> bool:
    """a + sqrt(b) <= c, exactly."""
    return c - a >= 0 and (c - a) ** 2 >= b


def corollary_checks() -> list[dict]:
    out = []
    for base, bound in COROLLARY_LINES:
        out.append({"sum": base, "threshold": bound, "gap_squared": (bound - base) ** 2,
                    "five_sum": 5 * base, "holds": le_plus_sqrt(base, 5 * base, bound)})
    return out


def lemma2_compare(q: int) -> bool:
    """q + 2 + sqrt(4q+4) < q + sqrt(5q), by squaring twice.

    2 + sqrt(4q+4) < sqrt(5q)  <=>  4 sqrt(4q+4) < q - 8
                               <=>  q > 8 and 16(4q+4) < (q-8)^2.
    """
    return q - 8 > 0 and 16 * (4 * q + 4) < (q - 8) ** 2


def lemma2_range(lo: int = 81, hi: int = 10 ** 6) -> tuple[bool, list[int]]:
    q = np.arange(lo, hi + 1, dtype=np.int64)
    ok = (q - 8 > 0) & (16 * (4 * q + 4) < (q - 8) ** 2)
    bad = q[~ok]
    return bool(ok.all()), [int(x) for x in bad[:5]]


def lemma2_root_check(q: int) -> bool:
    """q + 2 +- sqrt(4q+4) are the roots of x^2 - (2q+4)x + q^2."""
    # product and sum of the roots, which avoids the square root
    return (q + 2) ** 2 - (4 * q + 4) == q * q


def implication_spot(samples: int = 2000, seed: int = 1) -> bool:
    """d >= (X+1)(Y+1) implies (d - X)/Y > X + 1 for Y >= 1."""
    rng = random.Random(seed)
    for _ in range(samples):
        nf = rng.randint(0, 40)
        ns = rng.randint(0, 20)
        s = rng.randint(0, max(0, nf + ns - 1))
        x = 5 * nf + ns * (nf + ns + 1 - s) + 10 * s
        y = nf + ns - s
        if y < 1:
            continue
        d = product_bound(nf, ns, s) + rng.randint(0, 50)
        if not Fraction(d - x, y) > x + 1:
            return False
    return True


@dataclass
class ConstantsReport:
    rc3_max: int
    rc3_argmax: tuple[int, int]
    rc3_free_nf: int
    rc3_claimed: int
    rc3_variant: int
    rc4_max: int
    rc4_argmax: tuple[int, int]
    rc4_grid: float
    rc4_relative_gap: float
    rc4_interior_critical: list
    rc4_constant_term: int
    rc4_expansion_ok: bool
    corollary3: list[dict]
    lemma2_range_ok: bool
    lemma2_at_80: bool
    lemma2_at_81: bool
    implication_ok: bool
    main_constants: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (self.rc3_max == self.rc3_claimed and self.rc3_max == self.rc3_free_nf
                and self.rc4_relative_gap <= 1e-6 and self.rc4_expansion_ok
                and all(c["holds"] for c in self.corollary3) and self.lemma2_range_ok
                and self.implication_ok and self.main_constants["delta_suffices"])

    def to_dict(self) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        return d


def verify_arithmetic() -> ConstantsReport:
    r3, a3 = rc3_max()
    r3f, _ = rc3_max_free_nf()
    r4 = rc4_max()
    exp_ok, _ = expansion_agrees()
    l2, _ = lemma2_range()
    main = {
        "big": BIG,
        "palette_floor": PALETTE_FACTOR * BIG,
        "delta_bound": DELTA_BOUND,
        "very_big_offset": VERY_BIG_OFFSET,
        # a very big vertex has d(v) >= Delta - 4*8680, which must beat rc4_max
        "delta_suffices": DELTA_BOUND - VERY_BIG_OFFSET >= r4.value,
    }
    return ConstantsReport(
        rc3_max=r3, rc3_argmax=a3, rc3_free_nf=r3f, rc3_claimed=BIG,
        rc3_variant=rc3_variant_max()[0],
        rc4_max=r4.value, rc4_argmax=r4.argmax, rc4_grid=r4.grid_value,
        rc4_relative_gap=r4.relative_gap,
        rc4_interior_critical=r4.interior_critical,
        rc4_constant_term=rc4_factored(0, 0), rc4_expansion_ok=exp_ok,
        corollary3=corollary_checks(), lemma2_range_ok=l2,
        lemma2_at_80=lemma2_compare(80), lemma2_at_81=lemma2_compare(81),
        implication_ok=implication_spot(), main_constants=main,
    )
