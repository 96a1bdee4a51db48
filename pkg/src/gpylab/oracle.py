"""Predicted main terms and the analytic helpers behind them.

Predictions for the two pair-sum experiments (plain and theta-weighted),
assembled from the singular series and the regular-class counts, plus the
constant G(0,0) = S(H) P / |A(H)|.  Also here: W(it) = it zeta(1 + it) via
Euler-Maclaurin, grid scans of the lower bounds on |W(it)|, the partial
Euler product J(t, X), and the empirical/predicted ratio report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import sympy

from . import primes as prime_engine
from . import tuples as tc
from .errors import DomainError
from .singular import SingularValue, singular_series

# Stieltjes constants gamma_0 .. gamma_3 for the expansion of s*zeta(1+s).
_STIELTJES = (
    0.5772156649015329,
    -0.07281584548367672,
    -0.009690363192872318,
    0.002053834420303346,
)

# Bernoulli numbers B_2, B_4, ..., B_16 for the Euler-Maclaurin tail.
_BERNOULLI = (
    1.0 / 6,
    -1.0 / 30,
    1.0 / 42,
    -1.0 / 30,
    5.0 / 66,
    -691.0 / 2730,
    7.0 / 6,
    -3617.0 / 510,
)


@dataclass(frozen=True)
class MainTermParams:
    """Inputs for the predicted main terms; r and the h0 case are derived."""

    H1: tc.TupleH
    H2: tc.TupleH
    ell1: int
    ell2: int
    R: float
    N: int
    V: int
    h0: int | None = None

    def __post_init__(self):
        if self.ell1 < 0 or self.ell2 < 0:
            raise DomainError("ell1, ell2 must be >= 0")
        if not self.R > 1:
            raise DomainError("R must exceed 1")
        if self.N < 1:
            raise DomainError("N must be >= 1")
        if self.V < 2:
            raise DomainError("V must be >= 2")

    @property
    def r(self) -> int:
        return len(set(self.H1.shifts) & set(self.H2.shifts))

    @property
    def union(self) -> tc.TupleH:
        return self.H1.union(self.H2)

    @property
    def h0_case(self) -> str:
        """One of 'absent', 'outside', 'one_side', 'both_sides'."""
        if self.h0 is None:
            return "absent"
        in1 = self.h0 in self.H1
        in2 = self.h0 in self.H2
        if in1 and in2:
            return "both_sides"
        if in1 or in2:
            return "one_side"
        return "outside"


def g00(H: tc.TupleH, V: int, cutoff: int | None = None) -> SingularValue:
    """G(0,0) = S(H) P / |A(H)|, the per-class density constant."""
    if not tc.is_admissible(H):
        raise DomainError(f"tuple {tuple(H.shifts)} is not admissible")
    S = singular_series(H, cutoff)
    P = tc.primorial(V)
    count = tc.regular_class_count(H, V)
    scale = P / count
    return SingularValue(S.mid * scale, S.rad * scale, S.cutoff)


def main_term_t4(p: MainTermParams, scope: str = "aggregate") -> dict:
    """Predicted plain pair sum.

    aggregate: N binom(l1+l2, l1) (log R)^(r+l1+l2) / (r+l1+l2)! * S(H);
    per_class: aggregate / |A(H)|.  density_adjusted_mid rescales by
    |A(H)|/P so the value is directly comparable to a measured pair sum,
    which only visits that share of the residue classes.  The reported
    error_scale is the relative size K rbar* log2(N) / log R of the
    neglected terms.
    """
    if scope not in ("aggregate", "per_class"):
        raise DomainError(f"unknown scope {scope!r}")
    Hu = p.union
    if not (tc.is_admissible(p.H1) and tc.is_admissible(p.H2) and tc.is_admissible(Hu)):
        raise DomainError("tuples (and their union) must be admissible")
    S = singular_series(Hu)
    e = p.r + p.ell1 + p.ell2
    base = (
        p.N
        * math.comb(p.ell1 + p.ell2, p.ell1)
        * math.log(p.R) ** e
        / math.factorial(e)
    )
    count = tc.regular_class_count(Hu, p.V)
    if scope == "per_class":
        base /= count
    # Share of residue classes mod P the empirical window actually visits.
    # At desk scale the unadjusted main term overshoots by its reciprocal,
    # so the adjusted value is the one to compare against measured sums.
    density = count / tc.primorial(p.V)
    K = max(p.H1.size, p.H2.size)
    rbar_star = max(math.sqrt(K), K - p.r)
    error_scale = K * rbar_star * math.log(math.log(p.N)) / math.log(p.R)
    return {
        "mid": base * S.mid,
        "rad": base * S.rad,
        "density_adjusted_mid": base * S.mid * density,
        "density_adjusted_rad": base * S.rad * density,
        "scope": scope,
        "error_scale": error_scale,
        "singular_cutoff": S.cutoff,
    }


def c_r_factor(p: MainTermParams) -> float:
    """Case-dependent multiplier of the theta-weighted main term."""
    case = p.h0_case
    if case == "absent":
        raise DomainError("h0 is required")
    l1, l2, r = p.ell1, p.ell2, p.r
    if case == "outside":
        return 1.0
    if case == "one_side":
        # Orient so the shared weight sits on the side containing h0.
        if p.h0 in p.H2:
            l1, l2 = l2, l1
        return (l1 + l2 + 1) * math.log(p.R) / ((l1 + 1) * (r + l1 + l2 + 1))
    return (
        (l1 + l2 + 2)
        * (l1 + l2 + 1)
        * math.log(p.R)
        / ((l1 + 1) * (l2 + 1) * (r + l1 + l2 + 1))
    )


def main_term_t5(p: MainTermParams) -> dict:
    """Predicted theta-weighted pair sum:
    N C_R binom(l1+l2, l1) S(H0) (log R)^(r+l1+l2) / (r+l1+l2)! with
    H0 = H1 ∪ H2 ∪ {h0}.  density_adjusted_mid rescales by |A(H0)|/phi(P)
    for direct comparison with a measured theta-weighted sum."""
    if p.h0 is None:
        raise DomainError("h0 is required")
    Hu0 = p.union.union(p.h0)
    S = singular_series(Hu0)
    e = p.r + p.ell1 + p.ell2
    base = (
        p.N
        * c_r_factor(p)
        * math.comb(p.ell1 + p.ell2, p.ell1)
        * math.log(p.R) ** e
        / math.factorial(e)
    )
    # Primes land only in classes coprime to P; of the phi(P) such classes,
    # n + h0 reaches |A(H0)| from the regular window, so the adjusted value
    # rescales by that share for desk-scale comparison.
    phi_P = 1
    for q in sympy.primerange(2, p.V + 1):
        phi_P *= q - 1
    density = tc.regular_class_count(Hu0, p.V) / phi_P
    K = max(p.H1.size, p.H2.size)
    rbar_star = max(math.sqrt(K), K - p.r)
    return {
        "mid": base * S.mid,
        "rad": abs(base) * S.rad,
        "density_adjusted_mid": base * S.mid * density,
        "density_adjusted_rad": abs(base) * S.rad * density,
        "case": p.h0_case,
        "error_scale": K * rbar_star * math.log(math.log(p.N)) / math.log(p.R),
        "singular_cutoff": S.cutoff,
    }


def _zeta_em(s: complex, M: int) -> complex:
    """zeta(s) by Euler-Maclaurin: partial sum to M plus tail corrections."""
    total = sum(n ** (-s) for n in range(1, M))
    total += M ** (1 - s) / (s - 1)
    total += 0.5 * M ** (-s)
    poch = s
    fact = 1.0
    for k, b in enumerate(_BERNOULLI, start=1):
        fact *= (2 * k - 1) * (2 * k)
        total += b / fact * poch * M ** (-s - (2 * k - 1))
        poch *= (s + 2 * k - 1) * (s + 2 * k)
    return total


def w_function(t: float) -> complex:
    """W(it) = it zeta(1 + it); near t = 0 the Stieltjes series is used."""
    if abs(t) > 1e3:
        raise DomainError("|t| must be <= 1000")
    if t == 0.0:
        return 1.0 + 0.0j
    if abs(t) <= 0.05:
        s = 1j * t
        w = 1.0 + 0.0j
        fact = 1.0
        for n, g in enumerate(_STIELTJES):
            if n:
                fact *= n
            w += (-1) ** n * g * s ** (n + 1) / fact
        return w
    s = 1.0 + 1j * t
    M = max(50, int(10 * abs(t)))
    return 1j * t * _zeta_em(s, M)


def verify_w_bounds(t_grid_max: float = 100.0, step: float = 0.01) -> dict:
    """Grid scan of the two lower bounds on |W(it)|.

    Reports t0 = largest prefix endpoint with |W(it)| >= e^{t^2/6} on
    (0, t0], and t1 = smallest grid point >= 1 from which |W(it)| >= t^{2/3}
    holds through t_grid_max.  Either may be absent; the scan reports what
    it finds rather than asserting unstated constants.
    """
    if step <= 0:
        raise DomainError("step must be positive")
    ts = np.arange(step, t_grid_max + step / 2, step)
    w = np.array([abs(w_function(float(t))) for t in ts])

    # exp overflows to inf for large t; the comparison is then correctly False.
    with np.errstate(over="ignore"):
        exp_ok = w >= np.exp(ts**2 / 6.0)
    if exp_ok[0]:
        bad = np.flatnonzero(~exp_ok)
        t0 = float(ts[-1]) if bad.size == 0 else float(ts[bad[0] - 1])
    else:
        t0 = None

    pow_ok = w >= ts ** (2.0 / 3.0)
    t1 = None
    tail_ok = np.flip(np.cumprod(np.flip(pow_ok)).astype(bool))
    for i in np.flatnonzero((ts >= 1.0) & tail_ok):
        t1 = float(ts[i])
        break
    pow_margin = w - ts ** (2.0 / 3.0)
    worst = int(np.argmin(pow_margin))
    return {
        "t_grid_max": t_grid_max,
        "step": step,
        "t0": t0,
        "t1": t1,
        "power_bound_worst_t": float(ts[worst]),
        "power_bound_worst_margin": float(pow_margin[worst]),
    }


def j_product(t: float, X: int) -> float:
    """J(t, X) = prod_{p <= X} |1 - p^{-1-it}| / (1 - 1/p), in log space."""
    if t <= 0:
        raise DomainError("t must be positive")
    if X > 10**8:
        raise DomainError("X limited to 10^8")
    if X < 2:
        return 1.0
    ps = prime_engine.primes_upto(X).primes.astype(np.float64)
    logp = np.log(ps)
    re = 1.0 - np.cos(t * logp) / ps
    im = np.sin(t * logp) / ps
    log_terms = 0.5 * np.log(re * re + im * im) - np.log1p(-1.0 / ps)
    return math.exp(math.fsum(log_terms))


def compare(empirical: float, predicted_mid: float, predicted_rad: float = 0.0) -> dict:
    """Empirical/predicted ratio with the prediction's radius folded in."""
    lo = predicted_mid - predicted_rad
    hi = predicted_mid + predicted_rad
    if lo <= 0.0 <= hi:
        return {
            "comparable": False,
            "empirical": empirical,
            "predicted_mid": predicted_mid,
            "predicted_rad": predicted_rad,
        }
    bounds = sorted((empirical / lo, empirical / hi))
    return {
        "comparable": True,
        "empirical": empirical,
        "predicted_mid": predicted_mid,
        "predicted_rad": predicted_rad,
        "ratio": empirical / predicted_mid,
        "ratio_lo": bounds[0],
        "ratio_hi": bounds[1],
    }
