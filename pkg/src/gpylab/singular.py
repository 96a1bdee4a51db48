"""Singular series and tuple-density averages.

The singular series S(H) = prod_p (1 - 1/p)^{-K} (1 - nu_p(H)/p) is the
arithmetic correction factor attached to a K-element shift set.  The product
converges slowly, so values are returned as certified intervals: an exact
truncated product over p <= cutoff plus a rigorous enclosure of the tail.

Also here: brute-force subset averages B_A(k) and S*(k), the z-quasi-prime
density R(H) in exact rationals, and a quasi-monotonicity report for the
S*(k) sequence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np
import sympy

from . import primes as prime_engine
from . import tuples as tc
from .errors import CapacityError, DomainError

# Ordered-subset enumeration guard for average_B.
MAX_ORDERED_SUBSETS = 10**8

# quasiprime_density needs the full prime list below z only; keep z modest.
MAX_QUASIPRIME_Z = 100

# The histogram fallback in check_monotone tabulates residues modulo
# primorial(z); z = 23 gives modulus 223092870 (about 450 MB live).
HISTOGRAM_Z = 23


@dataclass(frozen=True)
class SingularValue:
    """Certified enclosure [mid - rad, mid + rad] of a truncated Euler product."""

    mid: float
    rad: float
    cutoff: int

    @property
    def lo(self) -> float:
        return self.mid - self.rad

    @property
    def hi(self) -> float:
        return self.mid + self.rad

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi


def _delta_prime_factors(H: tc.TupleH) -> set:
    """Primes dividing the discriminant, found from the pairwise differences."""
    out = set()
    s = H.shifts
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            out |= set(sympy.factorint(s[j] - s[i]))
    return out


def _tail_log_bound(k: int, cutoff: int) -> float:
    """Upper bound on |sum_{p > cutoff} log[(1 - k/p)(1 - 1/p)^{-k}]|.

    Each log-factor expands to -sum_{m >= 2} (k^m - k)/(m p^m); the m >= 2
    terms are dominated by a geometric series, and sum_{p > z} 1/p^2 is
    majorized by the sum over odd integers above z.
    """
    if cutoff <= k:
        raise DomainError(f"cutoff {cutoff} must exceed tuple size {k}")
    per_p2 = (k * k - k) / (2.0 * (1.0 - k / cutoff))
    sum_inv_p2 = 1.0 / (2.0 * cutoff) + 1.0 / (cutoff * cutoff)
    return per_p2 * sum_inv_p2


def default_cutoff(H: tc.TupleH) -> int:
    k = H.size
    lpf = max(_delta_prime_factors(H), default=2)
    return max(10**5, 10 * k * k, lpf)


def singular_series(H: tc.TupleH, cutoff: int | None = None) -> SingularValue:
    """S(H) as exact product over p <= cutoff plus certified tail interval.

    Above the cutoff every prime misses the discriminant, so nu_p = |H| and
    each factor is the generic (1 - K/p)(1 - 1/p)^{-K}; the tail enclosure
    is one-sided (generic log-factors are negative).
    """
    if cutoff is None:
        cutoff = default_cutoff(H)
    K = H.size
    dprimes = _delta_prime_factors(H)
    lpf = max(dprimes, default=2)
    if cutoff < 100:
        raise DomainError("cutoff must be at least 100")
    if cutoff < max(K, lpf):
        raise DomainError(
            f"cutoff {cutoff} below largest discriminant prime {lpf} or size {K}"
        )

    table = prime_engine.primes_upto(cutoff)
    ps = table.primes.astype(np.float64)
    pint = table.primes

    # Special primes (p <= K or p | discriminant) get their exact nu_p.
    special = np.isin(pint, np.array(sorted(dprimes), dtype=np.int64)) | (pint <= K)
    special_factor = 1.0
    for p in pint[special].tolist():
        nu = tc.nu_p(H, p)
        if nu == p:
            return SingularValue(0.0, 0.0, cutoff)
        special_factor *= (1.0 - nu / p) * (1.0 - 1.0 / p) ** (-K)

    gp = ps[~special]
    log_generic = math.fsum(np.log1p(-K / gp) - K * np.log1p(-1.0 / gp))
    exact = special_factor * math.exp(log_generic)

    # True value lies in [exact * e^{-T}, exact]; add float slack to rad.
    T = _tail_log_bound(K, cutoff)
    lo = exact * math.exp(-T)
    mid = 0.5 * (exact + lo)
    rad = 0.5 * (exact - lo) + abs(mid) * 1e-12
    return SingularValue(mid, rad, cutoff)


def singular_series_extended(H: tc.TupleH, h0: int, cutoff: int | None = None) -> SingularValue:
    """S(H ∪ {h0}); reduces to S(H) when h0 already belongs to H."""
    if h0 < 0:
        raise DomainError("h0 must be non-negative")
    H0 = H.union(h0)
    return singular_series(H0, cutoff)


def _subset_products(A: tc.TupleH, k: int, cutoff: int) -> tuple[np.ndarray, float]:
    """Per-unordered-subset S(H) values (float) and a relative tail bound.

    The product over primes up to the largest pairwise difference is taken
    subset by subset (vectorized per prime); above that every subset is
    generic, contributing one shared constant.
    """
    shifts = np.array(A.shifts, dtype=np.int64)
    subsets = np.array(list(combinations(range(A.size), k)), dtype=np.int64)
    S = shifts[subsets]  # (M, k)

    maxdiff = int(shifts.max() - shifts.min())
    pmax = max(maxdiff, k, 2)
    prod = np.ones(S.shape[0], dtype=np.float64)
    for p in sympy.primerange(2, pmax + 1):
        r = np.sort(S % p, axis=1)
        nu = 1 + (r[:, 1:] != r[:, :-1]).sum(axis=1)
        prod *= (1.0 - nu / p) * (1.0 - 1.0 / p) ** (-k)

    # Shared generic factor over pmax < p <= cutoff.
    table = prime_engine.primes_upto(cutoff)
    gp = table.primes[table.primes > pmax].astype(np.float64)
    if gp.size:
        prod *= math.exp(math.fsum(np.log1p(-k / gp) - k * np.log1p(-1.0 / gp)))
    tail_rel = math.exp(_tail_log_bound(k, cutoff)) - 1.0
    return prod, tail_rel


def average_B(A: tc.TupleH, k: int, cutoff: int = 10**5) -> tuple[float, float]:
    """B_A(k): sum of S(H) over ordered k-subsets of A, with certified radius."""
    if not 1 <= k <= A.size:
        raise DomainError(f"k={k} outside [1, {A.size}]")
    ordered = math.comb(A.size, k) * math.factorial(k)
    if ordered > MAX_ORDERED_SUBSETS:
        raise CapacityError(
            f"enumeration needs {ordered} ordered subsets (budget {MAX_ORDERED_SUBSETS})"
        )
    if k == 1:
        return float(A.size), 0.0
    prod, tail_rel = _subset_products(A, k, cutoff)
    B = math.factorial(k) * math.fsum(prod)
    rad = abs(B) * (tail_rel + 1e-9)
    return B, rad


def s_star(A: tc.TupleH, k: int, cutoff: int = 10**5) -> float:
    """S*(k) = B_A(k) / h^k with h = |A|."""
    B, _ = average_B(A, k, cutoff)
    return B / A.size**k


def quasiprime_density(H: tc.TupleH, z: int) -> Fraction:
    """R(H) = prod_{p <= z} (1 - nu_p(H)/p), exactly."""
    if z < 2:
        raise DomainError("z must be >= 2")
    if z > MAX_QUASIPRIME_Z:
        raise CapacityError(f"z={z} exceeds supported ceiling {MAX_QUASIPRIME_Z}")
    r = Fraction(1)
    for p in sympy.primerange(2, z + 1):
        r *= Fraction(p - tc.nu_p(H, p), p)
    return r


def quasiprime_count(H: tc.TupleH, z: int) -> int:
    """#{1 <= i <= Z : gcd(P_H(i), P(z)) = 1} with Z = primorial(z).

    Direct count, used as the independent oracle for quasiprime_density.
    """
    if z > 13:
        raise CapacityError("direct count limited to z <= 13")
    Z = tc.primorial(z)
    good = np.ones(Z, dtype=bool)  # index i-1 represents i
    i = np.arange(1, Z + 1, dtype=np.int64)
    for p in sympy.primerange(2, z + 1):
        hit = np.zeros(Z, dtype=bool)
        for h in H.shifts:
            hit |= (i + h) % p == 0
        good &= ~hit
    return int(good.sum())


def _s_star_histogram(A: tc.TupleH, k_values, cutoff: int) -> dict:
    """Estimate S*(k) for all requested k via the quasi-prime histogram.

    For z = HISTOGRAM_Z and Z = primorial(z), tabulate
    f_i = #{a in A : i + a coprime to all p <= z} for i in [1, Z]; then
    sum over ordered k-subsets of R(H) equals Z^{-1} sum_i f_i^{(k)}
    (falling factorial), and each S(H) is approximated by
    R(H) * Y_z^k * T(k) with Y_z = prod_{p<=z}(1-1/p)^{-1} and T(k) the
    generic continuation of the Euler product above z.
    """
    z = HISTOGRAM_Z
    Z = tc.primorial(z)
    coprime = np.ones(Z, dtype=bool)  # index r represents residue r mod Z
    for p in sympy.primerange(2, z + 1):
        coprime[::p] = False

    f = np.zeros(Z, dtype=np.uint8)
    chunk = 1 << 24
    for a in A.shifts:
        # f[i] += coprime[(i + a) mod Z], with index i running over [0, Z).
        shifted = np.roll(coprime, -a)
        for lo in range(0, Z, chunk):
            f[lo : lo + chunk] += shifted[lo : lo + chunk]
    hist = np.bincount(f, minlength=A.size + 1)
    del f, coprime

    Y_z = 1.0
    for p in sympy.primerange(2, z + 1):
        Y_z /= 1.0 - 1.0 / p

    table = prime_engine.primes_upto(cutoff)
    gp = table.primes[table.primes > z].astype(np.float64)

    out = {}
    h = A.size
    for k in k_values:
        # Exact integer sum of falling factorials f^(k), weighted by counts.
        total = 0
        for fv, cnt in enumerate(hist.tolist()):
            if cnt and fv >= k:
                term = 1
                for j in range(k):
                    term *= fv - j
                total += cnt * term
        r_avg = total / Z  # ordered-subset sum of R(H), scaled by 1/Z
        tail = math.exp(math.fsum(np.log1p(-k / gp) - k * np.log1p(-1.0 / gp)))
        out[k] = r_avg * (Y_z**k) * tail / h**k
    return out


def check_monotone(
    A: tc.TupleH, k_max: int, cutoff: int = 10**5, floor: float = 0.95
) -> dict:
    """S*(1..k_max) and the minimum consecutive ratio S*(k+1)/S*(k).

    Exact subset enumeration where the budget allows, otherwise the
    quasi-prime histogram estimate; the report records which method
    produced each value.
    """
    if k_max < 1:
        raise DomainError("k_max must be >= 1")
    if k_max > 8:
        raise DomainError("k_max must be <= 8")

    values: dict[int, float] = {}
    methods: dict[int, str] = {}
    need_histogram = []
    for k in range(1, k_max + 1):
        ordered = math.comb(A.size, k) * math.factorial(k)
        if ordered <= MAX_ORDERED_SUBSETS:
            values[k] = s_star(A, k, cutoff)
            methods[k] = "exact"
        else:
            need_histogram.append(k)
    if need_histogram:
        est = _s_star_histogram(A, need_histogram, cutoff)
        for k, v in est.items():
            values[k] = v
            methods[k] = "histogram"

    s_values = [values[k] for k in range(1, k_max + 1)]
    ratios = []
    skipped = []
    for k in range(1, k_max):
        if s_values[k - 1] == 0.0:
            skipped.append(k)
            continue
        ratios.append(s_values[k] / s_values[k - 1])
    min_ratio = min(ratios) if ratios else None
    violations = [r for r in ratios if r < floor]
    return {
        "s_star": s_values,
        "methods": [methods[k] for k in range(1, k_max + 1)],
        "ratios": ratios,
        "min_ratio": min_ratio,
        "floor": floor,
        "violations": violations,
        "skipped_zero": skipped,
    }
