"""Exact arithmetic over a sieved integer range.

Smallest-prime-factor tables, canonical factorizations, sigma(n) mod q,
ordered prime-factor statistics, 2-adic square decompositions, and exact
smooth/rough counts. Everything is exact integer arithmetic; floating point
only enters through smoothness cutoffs supplied by the caller.

Conventions: P+(1) = P-(1) = 1, the k-th largest prime factor of n is taken
with multiplicity and defaults to 1 when n has fewer than k prime factors,
and n = 1 counts both as z-smooth and as y-rough.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._scan import map_segments, segment_bounds
from .errors import OutOfRangeError, ResourceBudgetError

DEFAULT_SEGMENT_LENGTH = 1 << 20
DEFAULT_MEMORY_BUDGET = 2_000_000_000  # bytes allowed for one spf table


@dataclass(frozen=True)
class Factorization:
    """Canonical factorization: (prime, exponent) pairs, primes ascending."""

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        primes = [p for p, _ in self.factors]
        if primes != sorted(primes) or len(set(primes)) != len(primes):
            raise ValueError("factors must list distinct primes in ascending order")
        if any(e < 1 for _, e in self.factors):
            raise ValueError("exponents must be >= 1")

    @property
    def n(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out

    @property
    def num_prime_factors(self) -> int:
        """Prime factors counted with multiplicity (Omega)."""
        return sum(e for _, e in self.factors)

    @property
    def num_distinct_primes(self) -> int:
        """Distinct prime factors (omega)."""
        return len(self.factors)

    @property
    def largest_prime_factor(self) -> int:
        return self.factors[-1][0] if self.factors else 1

    @property
    def smallest_prime_factor(self) -> int:
        return self.factors[0][0] if self.factors else 1


def kth_largest_prime_factor(fact: Factorization, k: int) -> int:
    """k-th largest prime factor with multiplicity; 1 when fewer than k exist.

    With n = p1^e1 * ... the multiset {p1 x e1, ...} is read in descending
    order, so e.g. n = 12 = 2^2 * 3 gives 3, 2, 2, 1, 1, ...
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    seen = 0
    for p, e in reversed(fact.factors):
        seen += e
        if seen >= k:
            return p
    return 1


def sigma_mod(fact: Factorization, q: int) -> int:
    """Sum of divisors of n modulo q, via Horner geometric sums.

    sigma(p^e) = 1 + p + ... + p^e is accumulated as g -> g*p + 1 (e steps),
    never dividing by p - 1, so q need not be coprime to anything.
    """
    if q < 1:
        raise ValueError("modulus must be >= 1")
    total = 1 % q
    for p, e in fact.factors:
        g = 1 % q
        pm = p % q
        for _ in range(e):
            g = (g * pm + 1) % q
        total = total * g % q
    return total


@dataclass(frozen=True)
class TwoAdicSquareForm:
    """Decomposition n = 2^k * m^2 with m odd, when it exists."""

    valid: bool
    two_exponent: int | None = None
    odd_root: int | None = None


def two_adic_square_form(fact: Factorization) -> TwoAdicSquareForm:
    """Write n = 2^k * m^2 (m odd) if possible; n = 1 gives (0, 1)."""
    k = 0
    m = 1
    for p, e in fact.factors:
        if p == 2:
            k = e
        elif e % 2:
            return TwoAdicSquareForm(False)
        else:
            m *= p ** (e // 2)
    return TwoAdicSquareForm(True, k, m)


def odd_part_is_square_array(n: np.ndarray) -> np.ndarray:
    """Vectorized test that the odd part of each n >= 1 is a perfect square."""
    n = np.asarray(n, dtype=np.int64)
    low = n & (-n)  # 2^{v2(n)}
    odd = n // low
    r = np.rint(np.sqrt(odd.astype(np.float64))).astype(np.int64)
    return r * r == odd


def _simple_spf(limit: int) -> np.ndarray:
    """Dense smallest-prime-factor table for 0..limit (small limits only)."""
    spf = np.zeros(limit + 1, dtype=np.uint32)
    for i in range(2, math.isqrt(limit) + 1):
        if spf[i] == 0:
            view = spf[i * i :: i]
            view[view == 0] = i
    rest = np.flatnonzero(spf == 0)
    rest = rest[rest >= 2]
    spf[rest] = rest
    if limit >= 1:
        spf[1] = 1
    return spf


class FactorSieve:
    """Smallest-prime-factor table for 2..limit, built in segments.

    The table is one uint32 per integer; construction walks fixed-length
    segments so that the marking passes stay cache-resident. A memory budget
    guards against accidentally huge tables.
    """

    def __init__(self, limit: int, segment_length: int = DEFAULT_SEGMENT_LENGTH,
                 memory_budget: int = DEFAULT_MEMORY_BUDGET) -> None:
        if limit < 2:
            raise ValueError("limit must be >= 2")
        need = 4 * (limit + 1)
        if need > memory_budget:
            raise ResourceBudgetError(
                f"spf table for limit {limit} needs {need} bytes, "
                f"budget is {memory_budget} bytes")
        if limit >= 2**32:
            raise ResourceBudgetError("spf entries are uint32; limit must be < 2^32")
        self.limit = int(limit)
        self.segment_length = int(segment_length)
        root = math.isqrt(self.limit)
        base = _simple_spf(root)
        base_primes = np.flatnonzero(base[2:] == np.arange(2, root + 1, dtype=np.uint32)) + 2
        spf = np.zeros(self.limit + 1, dtype=np.uint32)
        for lo, hi in segment_bounds(2, self.limit + 1, self.segment_length):
            for p in base_primes:
                p = int(p)
                if p * p >= hi:
                    break
                start = max(p * p, ((lo + p - 1) // p) * p)
                view = spf[start:hi:p]
                view[view == 0] = p
            seg = spf[lo:hi]
            fresh = np.flatnonzero(seg == 0) + lo
            spf[fresh] = fresh
        if self.limit >= 1:
            spf[1] = 1
        self._spf = spf
        self._primes: np.ndarray | None = None

    def smallest_prime_factor(self, n: int) -> int:
        if n < 2 or n > self.limit:
            raise OutOfRangeError(f"n={n} outside sieve range 2..{self.limit}")
        return int(self._spf[n])

    def is_prime(self, n: int) -> bool:
        if n < 2 or n > self.limit:
            raise OutOfRangeError(f"n={n} outside sieve range 2..{self.limit}")
        return int(self._spf[n]) == n

    def factorize(self, n: int) -> Factorization:
        """Canonical factorization of 1 <= n <= limit by spf chasing."""
        if n < 1 or n > self.limit:
            raise OutOfRangeError(f"n={n} outside sieve range 1..{self.limit}")
        out: list[tuple[int, int]] = []
        while n > 1:
            p = int(self._spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return Factorization(tuple(out))

    def primes(self) -> np.ndarray:
        """Ascending array of all primes <= limit (cached)."""
        if self._primes is None:
            chunks = []
            for lo, hi in segment_bounds(2, self.limit + 1, self.segment_length):
                sl = self._spf[lo:hi]
                idx = np.flatnonzero(sl == np.arange(lo, hi, dtype=np.uint32))
                chunks.append((idx + lo).astype(np.int64))
            self._primes = np.concatenate(chunks) if chunks else np.zeros(0, np.int64)
        return self._primes

    def primes_up_to(self, bound: int) -> np.ndarray:
        if bound > self.limit:
            raise OutOfRangeError(f"bound {bound} exceeds sieve limit {self.limit}")
        ps = self.primes()
        return ps[: int(np.searchsorted(ps, bound, side="right"))]


def build_sieve(x: int, segment_length: int = DEFAULT_SEGMENT_LENGTH,
                memory_budget: int = DEFAULT_MEMORY_BUDGET) -> FactorSieve:
    """Smallest-prime-factor table covering 2..x, ready for factorize()."""
    return FactorSieve(x, segment_length=segment_length, memory_budget=memory_budget)


def psi_smooth_count(x: int, z: float, sieve: FactorSieve,
                     segment_length: int | None = None, workers: int = 1) -> int:
    """Exact count of z-smooth n <= x (largest prime factor <= z); 1 is smooth.

    Streams segments, divides out all prime factors <= min(z, sqrt(x)); the
    leftover cofactor is 1 or a single prime > sqrt(x), so n is z-smooth
    exactly when the leftover is <= z.
    """
    if x < 1:
        raise ValueError("x must be >= 1")
    if z < 2:
        raise ValueError("z must be >= 2")
    if x > sieve.limit:
        raise OutOfRangeError(f"x={x} exceeds sieve limit {sieve.limit}")
    seg_len = segment_length or sieve.segment_length
    zf = math.floor(z)
    bound = min(zf, math.isqrt(x))
    ps = [int(p) for p in sieve.primes_up_to(bound)]

    def one_segment(lo: int, hi: int) -> int:
        rem = np.arange(lo, hi, dtype=np.int64)
        for p in ps:
            start = ((lo + p - 1) // p) * p
            if start >= hi:
                continue
            sl = rem[start - lo :: p]
            sl //= p
            idx = np.flatnonzero(sl % p == 0)
            while idx.size:
                sl[idx] //= p
                idx = idx[sl[idx] % p == 0]
        return int(np.count_nonzero(rem <= zf))

    parts = map_segments(1, x + 1, seg_len, one_segment, workers)
    return sum(parts)


def rough_count(x: int, y: float, sieve: FactorSieve,
                segment_length: int | None = None, workers: int = 1) -> int:
    """Exact count of y-rough n <= x (least prime factor > y); 1 is rough."""
    if x < 1:
        raise ValueError("x must be >= 1")
    if y < 1:
        raise ValueError("y must be >= 1")
    if x > sieve.limit:
        raise OutOfRangeError(f"x={x} exceeds sieve limit {sieve.limit}")
    seg_len = segment_length or sieve.segment_length
    yf = math.floor(y)
    ps = [int(p) for p in sieve.primes_up_to(min(yf, math.isqrt(x)))]

    def one_segment(lo: int, hi: int) -> int:
        alive = np.ones(hi - lo, dtype=bool)
        for p in ps:
            start = ((lo + p - 1) // p) * p
            if start < hi:
                alive[start - lo :: p] = False
        n = np.arange(lo, hi, dtype=np.int64)
        alive &= (n == 1) | (n > yf)
        return int(np.count_nonzero(alive))

    parts = map_segments(1, x + 1, seg_len, one_segment, workers)
    return sum(parts)
