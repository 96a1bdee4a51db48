"""Prime generation and Chebyshev-theta statistics.

A segmented, odd-only sieve produces immutable prime tables; on top of those
sit theta(x), theta(x; q, a), the progression error E(x; q, a) and its
running maximum E*(X, q).  All log-sums go through ``math.fsum`` so results
are exactly rounded and independent of segmentation.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .errors import CapacityError, DomainError

# Segment length in sieve entries; 2**18 keeps the working set inside L2.
SEGMENT_SIZE = 1 << 18

# Practical ceiling: a full table above this would not fit desk-scale memory.
MAX_SIEVE_HI = 1 << 40

_CACHE_MAGIC = b"GPYPRIM1"
_CACHE_VERSION = 1


@dataclass(frozen=True)
class PrimeTable:
    """All primes in [lo, hi], strictly increasing, immutable."""

    lo: int
    hi: int
    primes: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.primes.setflags(write=False)

    def __len__(self):
        return int(self.primes.size)

    def __iter__(self):
        return iter(self.primes.tolist())

    def __contains__(self, n: int) -> bool:
        i = int(np.searchsorted(self.primes, n))
        return i < self.primes.size and int(self.primes[i]) == n


def _small_primes(limit: int) -> np.ndarray:
    """Dense sieve of Eratosthenes up to ``limit`` inclusive."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


def sieve_range(lo: int, hi: int) -> PrimeTable:
    """Exact primes in [lo, hi] via a segmented odd-only sieve."""
    if lo < 0:
        raise DomainError(f"lo must be non-negative, got {lo}")
    if hi < lo:
        raise DomainError(f"empty range: hi={hi} < lo={lo}")
    if hi > MAX_SIEVE_HI:
        raise CapacityError(f"hi={hi} exceeds supported ceiling {MAX_SIEVE_HI}")
    if hi < 2:
        return PrimeTable(lo, hi, np.empty(0, dtype=np.int64))

    base = _small_primes(math.isqrt(hi))
    chunks = []
    if lo <= 2 <= hi:
        chunks.append(np.array([2], dtype=np.int64))

    # Odd-only segments: entry i of a segment starting at odd `start`
    # represents start + 2*i.
    start = max(lo, 3)
    if start % 2 == 0:
        start += 1
    odd_base = base[base > 2]
    while start <= hi:
        count = min(SEGMENT_SIZE, (hi - start) // 2 + 1)
        flags = np.ones(count, dtype=bool)
        end = start + 2 * (count - 1)
        for p in odd_base.tolist():
            if p * p > end:
                break
            first = max(p * p, ((start + p - 1) // p) * p)
            if first % 2 == 0:
                first += p
            if first > end:
                continue
            flags[(first - start) // 2 :: p] = False
        if start == 1:
            flags[0] = False
        chunks.append(start + 2 * np.flatnonzero(flags).astype(np.int64))
        start = end + 2

    primes = np.concatenate(chunks) if chunks else np.empty(0, dtype=np.int64)
    return PrimeTable(lo, hi, primes)


def primes_upto(x: int) -> PrimeTable:
    return sieve_range(0, max(x, 0))


def theta_sum(x: int, table: PrimeTable | None = None) -> float:
    """Chebyshev theta(x) = sum of log p over primes p <= x."""
    if x < 0:
        raise DomainError("x must be non-negative")
    table = _table_for(x, table)
    p = _primes_le(table, x)
    return math.fsum(np.log(p)) if p.size else 0.0


def theta_progression(x: int, q: int, a: int, table: PrimeTable | None = None) -> float:
    """theta(x; q, a) = sum of log p over primes p <= x with p = a (mod q)."""
    if q < 1:
        raise DomainError("modulus q must be >= 1")
    if not 0 <= a < q:
        raise DomainError(f"residue a={a} outside [0, {q})")
    if x < 0:
        raise DomainError("x must be non-negative")
    table = _table_for(x, table)
    p = _primes_le(table, x)
    p = p[p % q == a]
    return math.fsum(np.log(p)) if p.size else 0.0


def ap_error(x: int, q: int, a: int, table: PrimeTable | None = None) -> float:
    """E(x; q, a) = theta(x; q, a) - [gcd(a, q) = 1] * x / phi(q)."""
    t = theta_progression(x, q, a, table)
    if gcd(a if a else q, q) == 1:
        return t - x / _phi(q)
    return t


def ap_error_star(X: int, q: int, table: PrimeTable | None = None) -> float:
    """E*(X, q): max over real x <= X and residues a coprime to q of |E(x; q, a)|.

    theta(x; q, a) is a step function, so |E| attains its supremum either at a
    prime jump p (value after the jump) or as x -> p from below (theta without
    p), or at the endpoint x = X; all three families are scanned.
    """
    if q < 1:
        raise DomainError("modulus q must be >= 1")
    if X < 2:
        raise DomainError("X must be >= 2")
    table = _table_for(X, table)
    p = _primes_le(table, X)
    phi_q = _phi(q)
    best = 0.0
    for a in range(1, q + 1):
        if gcd(a, q) != 1:
            continue
        pa = p[p % q == a % q]
        if pa.size:
            logs = np.log(pa)
            cum = np.cumsum(logs)
            after = np.abs(cum - pa / phi_q)
            before = np.abs((cum - logs) - pa / phi_q)
            endpoint = abs(cum[-1] - X / phi_q)
            best = max(best, float(after.max()), float(before.max()), endpoint)
        else:
            best = max(best, X / phi_q)
    return best


def _phi(q: int) -> int:
    result = q
    n = q
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def _table_for(x: int, table: PrimeTable | None) -> PrimeTable:
    if table is None:
        return primes_upto(x)
    if table.lo > 0 or table.hi < x:
        raise DomainError(f"prime table [{table.lo}, {table.hi}] does not cover [0, {x}]")
    return table


def _primes_le(table: PrimeTable, x: int) -> np.ndarray:
    return table.primes[: int(np.searchsorted(table.primes, x, side="right"))]


def save_table(table: PrimeTable, path) -> None:
    """Binary cache: 16-byte header (magic, version u32, reserved u32), then
    little-endian u64 prime values.  Purely an optimization; loading must
    reproduce the sieve bit for bit."""
    with open(path, "wb") as fh:
        fh.write(_CACHE_MAGIC)
        fh.write(struct.pack("<II", _CACHE_VERSION, 0))
        fh.write(struct.pack("<qq", table.lo, table.hi))
        fh.write(table.primes.astype("<u8").tobytes())


def load_table(path) -> PrimeTable:
    with open(path, "rb") as fh:
        magic = fh.read(8)
        if magic != _CACHE_MAGIC:
            raise DomainError(f"bad cache magic {magic!r}")
        version, _reserved = struct.unpack("<II", fh.read(8))
        if version != _CACHE_VERSION:
            raise DomainError(f"unsupported cache version {version}")
        lo, hi = struct.unpack("<qq", fh.read(16))
        primes = np.frombuffer(fh.read(), dtype="<u8").astype(np.int64)
    return PrimeTable(lo, hi, primes)
