"""Empirical error statistics for primes in arithmetic progressions.

Three desk-scale statistics: the classical sum over moduli q <= Q of the
worst-residue deviation |theta(N; q, a) - N/phi(q)|, the variant restricted
to moduli Pq with q coprime to a fixed base P (primes counted over the
dyadic window (N, 2N]), and the aggregate of the running maxima E*(X, Mq).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import gcd

import numpy as np

from . import primes as prime_engine
from .errors import CapacityError, DomainError

MAX_N = 10**9


@dataclass(frozen=True)
class BVConfig:
    """N: range; Q: modulus ceiling; M: fixed base modulus (1 = classical);
    use_estar: max over all x <= N instead of the endpoint only."""

    N: int
    Q: int
    M: int = 1
    use_estar: bool = False

    def __post_init__(self):
        if self.N < 100:
            raise DomainError("N must be >= 100")
        if self.Q < 1 or self.M < 1:
            raise DomainError("Q and M must be >= 1")
        if self.M * self.Q > self.N:
            raise DomainError("M*Q must not exceed N (progressions degenerate)")
        if self.N > MAX_N:
            raise CapacityError(f"N={self.N} exceeds guard {MAX_N}")


def _phi(q: int) -> int:
    result, n, p = q, q, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def bv_sum(cfg: BVConfig, table: prime_engine.PrimeTable | None = None) -> float:
    """Classical sum: Sum_{q <= Q} max_{(a,q)=1} |theta(N; q, a) - N/phi(q)|."""
    if cfg.M != 1:
        raise DomainError("classical sum requires M = 1")
    if table is None:
        table = prime_engine.primes_upto(cfg.N)
    p = table.primes[table.primes <= cfg.N]
    logs = np.log(p.astype(np.float64))
    per_q = []
    for q in range(1, cfg.Q + 1):
        theta_by_a = np.bincount(p % q, weights=logs, minlength=q)
        target = cfg.N / _phi(q)
        best = 0.0
        for a in range(q):
            if gcd(a if a else q, q) != 1:
                continue
            best = max(best, abs(float(theta_by_a[a]) - target))
        per_q.append(best)
    return math.fsum(per_q)


def bv_sum_restricted(
    cfg: BVConfig, table: prime_engine.PrimeTable | None = None
) -> float:
    """P-restricted dyadic sum.

    Sum over q <= Q with gcd(q, M) = 1 of the worst-residue deviation
    |sum_{N < p <= 2N, p = a (mod Mq)} log p - N/phi(Mq)|, a coprime to Mq.
    """
    N, M = cfg.N, cfg.M
    if table is None:
        table = prime_engine.sieve_range(N + 1, 2 * N)
    p = table.primes
    logs = np.log(p.astype(np.float64))
    per_q = []
    for q in range(1, cfg.Q + 1):
        if gcd(q, M) != 1:
            continue
        mod = M * q
        theta_by_a = np.bincount(p % mod, weights=logs, minlength=mod)
        target = N / _phi(mod)
        best = 0.0
        for a in range(mod):
            if gcd(a if a else mod, mod) != 1:
                continue
            best = max(best, abs(float(theta_by_a[a]) - target))
        per_q.append(best)
    return math.fsum(per_q)


def estar_aggregate(
    cfg: BVConfig, table: prime_engine.PrimeTable | None = None
) -> float:
    """Sum over q <= Q with gcd(q, M) = 1 of E*(N, Mq).

    With use_estar off, each term degrades to the endpoint deviation
    max_{(a, Mq)=1} |E(N; Mq, a)| instead of the running maximum.
    """
    X, M = cfg.N, cfg.M
    if table is None:
        table = prime_engine.primes_upto(X)
    terms = []
    for q in range(1, cfg.Q + 1):
        if gcd(q, M) != 1:
            continue
        mod = M * q
        if cfg.use_estar:
            terms.append(prime_engine.ap_error_star(X, mod, table))
        else:
            best = 0.0
            for a in range(mod):
                if gcd(a if a else mod, mod) != 1:
                    continue
                best = max(best, abs(prime_engine.ap_error(X, mod, a, table)))
            terms.append(best)
    return math.fsum(terms)
