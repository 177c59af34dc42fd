"""Censuses of σ(n) in coprime residue classes.

The core question: among n ≤ x whose divisor sum σ(n) is coprime to q,
how evenly do the values σ(n) mod q spread over the unit classes?  The
engine here streams [1, x] in fixed-length segments, reconstructing
σ(n) mod q for a whole segment at once from prime-power marking (no
per-n factorization, no big integers), so desk-scale x = 10⁷..10⁸ runs
in seconds.

Filters restrict which n enter the census:

  * all          -- every n ≤ x,
  * coprime-only -- n with gcd(n, q) = 1,
  * pk-threshold -- n whose k-th largest prime factor (with
                    multiplicity) exceeds a threshold t; equivalently,
                    n with at least k prime factors > t.

Alongside the census sit the twisted partial sums Σ χ(σ(n)) that
control it through orthogonality, the prime reciprocal sums
Σ_{p ≤ x} 1_{gcd(F(p),q)=1}/p whose log log x coefficient is the
equidistribution exponent, a discrepancy statistic, and the main-term
shapes x/(log x)^{1−α} and √x/(log x)^{1−α̃} for coprime-σ counts.

All counting is exact 64-bit integer arithmetic; parallel runs merge
per-segment results in segment order, so outputs are identical for any
worker count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

import numpy as np

from ._scan import map_segments, segment_bounds
from .characters import DirichletCharacter, Modulus
from .charsums import PolynomialSpec
from .errors import DegenerateCensusError, OutOfRangeError, UnsupportedModulusError
from .factor import DEFAULT_SEGMENT_LENGTH, FactorSieve
from .lsd import _primes_up_to

__all__ = [
    "CensusFilter",
    "CensusReport",
    "census",
    "twisted_partial_sum",
    "prime_reciprocal_sum",
    "discrepancy",
    "rough_count_estimate",
    "iter_sigma_segments",
    "proof_threshold_y",
    "proof_threshold_z",
]

_FILTER_KINDS = ("all", "coprime-only", "pk-threshold")


@dataclass(frozen=True)
class CensusFilter:
    """Restriction on which n ≤ x enter a census.

    kind 'all' admits everything, 'coprime-only' admits n with
    gcd(n, q) = 1, and 'pk-threshold' admits n whose k-th largest
    prime factor (with multiplicity) exceeds threshold.  Since the
    k-th largest prime factor exceeds t exactly when at least k prime
    factors exceed t, the engine only ever counts large prime factors
    and never sorts anything.
    """

    kind: str
    k: Optional[int] = None
    threshold: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind not in _FILTER_KINDS:
            raise ValueError(f"filter kind must be one of {_FILTER_KINDS}, got {self.kind!r}")
        if self.kind == "pk-threshold":
            if self.k is None or self.k < 1:
                raise ValueError("pk-threshold filter needs k >= 1")
            if self.threshold is None or self.threshold < 1:
                raise ValueError("pk-threshold filter needs threshold >= 1")
            object.__setattr__(self, "k", int(self.k))
            object.__setattr__(self, "threshold", int(self.threshold))

    @classmethod
    def all_integers(cls) -> "CensusFilter":
        return cls("all")

    @classmethod
    def coprime_only(cls) -> "CensusFilter":
        return cls("coprime-only")

    @classmethod
    def pk_threshold(cls, k: int, threshold: int) -> "CensusFilter":
        return cls("pk-threshold", k=k, threshold=threshold)

    def describe(self) -> str:
        if self.kind == "pk-threshold":
            return f"P_{self.k}(n) > {self.threshold}"
        return self.kind


def proof_threshold_y(x: int, epsilon: float) -> float:
    """The split point y = exp((log x)^{ε/2}) used when separating
    integers by the size of their second-largest prime factor."""
    if x < 3:
        raise OutOfRangeError(f"x must be >= 3, got {x}")
    if not 0 < epsilon <= 1:
        raise OutOfRangeError(f"epsilon must lie in (0, 1], got {epsilon}")
    return math.exp(math.log(x) ** (epsilon / 2.0))


def proof_threshold_z(x: int) -> float:
    """The split point z = x^{1/log log x} separating the very rough
    top range of prime factors."""
    if x < 16:
        raise OutOfRangeError(f"x must be >= 16, got {x}")
    return x ** (1.0 / math.log(math.log(x)))


@dataclass(frozen=True)
class CensusReport:
    """Per-class counts of σ(n) mod q together with summary statistics.

    counts maps each unit class a to #{filtered n ≤ x : σ(n) ≡ a},
    total_coprime is their sum, mean the uniform share, and
    max_rel_deviation the worst relative departure from that share
    (NaN when the census is empty).  alpha and alpha_tilde are the
    exact densities of units v with v+1, resp. v²+v+1, again a unit;
    exponent_used names which of the two governs the main term for
    this modulus (alpha for odd q, alpha_tilde for even q).
    """

    x: int
    q: int
    filter: CensusFilter
    counts: dict[int, int]
    total_coprime: int
    mean: float
    max_rel_deviation: float
    alpha: Fraction
    alpha_tilde: Fraction
    exponent_used: str


def _segment_sigma_stats(
    lo: int,
    hi: int,
    q: int,
    primes: np.ndarray,
    threshold: Optional[int],
) -> tuple[np.ndarray, Optional[np.ndarray]]:
    """σ(n) mod q for lo ≤ n < hi, plus (optionally) the number of
    prime factors of n exceeding threshold, with multiplicity.

    Works entirely from primes ≤ sqrt(hi−1): marking passes recover
    each prime's exact exponent via nested stride slices, the
    geometric sums σ(p^e) = (p^{e+1}−1)/(p−1) are computed exactly in
    int64 (p^{e+1} ≤ p·n stays below 2^63 for any n below ~3·10^12),
    and whatever remains of n after division is either 1 or a single
    prime > sqrt(hi−1).
    """
    size = hi - lo
    rem = np.arange(lo, hi, dtype=np.int64)
    sig = np.full(size, 1 % q, dtype=np.int64)
    cnt = np.zeros(size, dtype=np.int64) if threshold is not None else None
    if lo == 0:
        rem[0] = 1
    top = hi - 1
    for p in primes:
        p = int(p)
        if p * p > top:
            break
        first = ((lo + p - 1) // p) * p
        if first > top:
            continue
        idx = np.arange(first - lo, size, p)
        e = np.ones(idx.shape[0], dtype=np.int64)
        pj = p * p
        while pj <= top:
            firstj = ((lo + pj - 1) // pj) * pj
            if firstj <= top:
                e[(firstj - first) // p :: pj // p] += 1
            pj *= p
        p_pow = np.power(p, e)
        sigma_pe = (p_pow * p - 1) // (p - 1) % q
        sig[idx] = sig[idx] * sigma_pe % q
        rem[idx] //= p_pow
        if cnt is not None and p > threshold:
            cnt[idx] += e
    leftover = rem > 1
    if leftover.any():
        sig[leftover] = sig[leftover] * ((1 + rem[leftover]) % q) % q
    if cnt is not None:
        cnt += leftover & (rem > threshold)
    return sig, cnt


def _filter_mask(
    lo: int,
    hi: int,
    q: int,
    f: CensusFilter,
    cnt: Optional[np.ndarray],
) -> Optional[np.ndarray]:
    """Boolean admission mask for the filter, or None for 'admit all'."""
    if f.kind == "coprime-only":
        return np.gcd(np.arange(lo, hi, dtype=np.int64), q) == 1
    if f.kind == "pk-threshold":
        return cnt >= f.k
    return None


def iter_sigma_segments(
    x: int,
    q: int,
    sieve: Optional[FactorSieve] = None,
    *,
    segment_length: Optional[int] = None,
    threshold: Optional[int] = None,
) -> Iterator[tuple[int, int, np.ndarray, Optional[np.ndarray]]]:
    """Stream (lo, hi, σ mod q, large-factor counts) over [1, x].

    The σ array aligns with np.arange(lo, hi); the count array (number
    of prime factors > threshold, with multiplicity) is None unless a
    threshold was given.  Sequential by construction; the parallel
    census path reduces segments to bincounts instead of exposing
    them.
    """
    x = int(x)
    if x < 1:
        raise OutOfRangeError(f"x must be >= 1, got {x}")
    if q < 1:
        raise ValueError(f"modulus must be >= 1, got {q}")
    if sieve is not None and x > sieve.limit:
        raise OutOfRangeError(f"x = {x} exceeds sieve limit {sieve.limit}")
    primes = _primes_up_to(math.isqrt(x), sieve)
    seg_len = segment_length or DEFAULT_SEGMENT_LENGTH
    for lo, hi in segment_bounds(1, x + 1, seg_len):
        sig, cnt = _segment_sigma_stats(lo, hi, q, primes, threshold)
        yield lo, hi, sig, cnt


def census(
    x: int,
    m: Modulus,
    f: Optional[CensusFilter] = None,
    sieve: Optional[FactorSieve] = None,
    *,
    segment_length: Optional[int] = None,
    workers: int = 1,
) -> CensusReport:
    """Count filtered n ≤ x by the class of σ(n) among the units mod q.

    Only n with gcd(σ(n), q) = 1 are counted at all (σ values sharing
    a factor with q belong to no coprime class).  Deterministic for
    any worker count: per-segment bincounts are summed in segment
    order and all arithmetic is integral.
    """
    x = int(x)
    if x < 1:
        raise OutOfRangeError(f"x must be >= 1, got {x}")
    if f is None:
        f = CensusFilter.all_integers()
    if sieve is not None and x > sieve.limit:
        raise OutOfRangeError(f"x = {x} exceeds sieve limit {sieve.limit}")
    q = m.q
    primes = _primes_up_to(math.isqrt(x), sieve)
    seg_len = segment_length or DEFAULT_SEGMENT_LENGTH
    threshold = f.threshold if f.kind == "pk-threshold" else None
    unit_mask = m.unit_mask

    def one_segment(lo: int, hi: int) -> np.ndarray:
        sig, cnt = _segment_sigma_stats(lo, hi, q, primes, threshold)
        keep = unit_mask[sig]
        extra = _filter_mask(lo, hi, q, f, cnt)
        if extra is not None:
            keep &= extra
        return np.bincount(sig[keep], minlength=q)

    parts = map_segments(1, x + 1, seg_len, one_segment, workers)
    totals = np.zeros(q, dtype=np.int64)
    for part in parts:
        totals += part
    units = m.units
    counts = {int(a): int(totals[a]) for a in units}
    total = int(totals[units].sum())
    phi = m.phi
    mean = total / phi
    if total > 0:
        max_rel = float(np.max(np.abs(totals[units] * phi / total - 1.0)))
    else:
        max_rel = float("nan")
    return CensusReport(
        x=x,
        q=q,
        filter=f,
        counts=counts,
        total_coprime=total,
        mean=mean,
        max_rel_deviation=max_rel,
        alpha=m.alpha,
        alpha_tilde=m.alpha_tilde,
        exponent_used="alpha" if q % 2 else "alpha_tilde",
    )


def twisted_partial_sum(
    x: int,
    chi: DirichletCharacter,
    f: Optional[CensusFilter] = None,
    sieve: Optional[FactorSieve] = None,
    *,
    segment_length: Optional[int] = None,
    workers: int = 1,
) -> complex:
    """Σ χ(σ(n)) over filtered n ≤ x.

    Terms with gcd(σ(n), q) > 1 contribute 0 through the character's
    zero extension.  For the principal character this is exactly the
    coprime total of the census; for nonprincipal characters
    orthogonality makes it the error term of equidistribution.
    """
    x = int(x)
    if x < 1:
        raise OutOfRangeError(f"x must be >= 1, got {x}")
    if f is None:
        f = CensusFilter.all_integers()
    if sieve is not None and x > sieve.limit:
        raise OutOfRangeError(f"x = {x} exceeds sieve limit {sieve.limit}")
    q = chi.modulus.q
    primes = _primes_up_to(math.isqrt(x), sieve)
    seg_len = segment_length or DEFAULT_SEGMENT_LENGTH
    threshold = f.threshold if f.kind == "pk-threshold" else None
    table = chi.complex_table()

    def one_segment(lo: int, hi: int) -> complex:
        sig, cnt = _segment_sigma_stats(lo, hi, q, primes, threshold)
        extra = _filter_mask(lo, hi, q, f, cnt)
        if extra is not None:
            sig = sig[extra]
        return complex(table[sig].sum())

    parts = map_segments(1, x + 1, seg_len, one_segment, workers)
    total = 0j
    for part in parts:
        total += part
    return total


def prime_reciprocal_sum(
    F: PolynomialSpec,
    m: Modulus,
    x: int,
    sieve: Optional[FactorSieve] = None,
    *,
    chunk: int = 1 << 20,
) -> float:
    """Σ_{p ≤ x} 1/p over primes with gcd(F(p), q) = 1.

    The admission test reduces F(p) mod q, so only p mod q matters.
    Grows like (density)·log log x, where the density is the fraction
    of unit classes u mod q with F(u) again a unit; the q = 1 case is
    the classic Σ 1/p.  Summation is sequential in ascending prime
    order with a fixed chunk size, hence reproducible to the bit.
    """
    x = int(x)
    if x < 2:
        raise OutOfRangeError(f"x must be >= 2, got {x}")
    if sieve is not None and x > sieve.limit:
        raise OutOfRangeError(f"x = {x} exceeds sieve limit {sieve.limit}")
    primes = _primes_up_to(x, sieve)
    q = m.q
    total = 0.0
    for start in range(0, primes.shape[0], chunk):
        block = primes[start : start + chunk]
        values = F.evaluate_array(block % q, q)
        ok = np.gcd(values, q) == 1
        total += float(np.sum(1.0 / block[ok].astype(np.float64)))
    return total


def discrepancy(report: CensusReport) -> float:
    """Worst relative deviation of a census from perfect uniformity:
    max over classes a of |count(a)·φ(q)/total − 1|.

    An empty census admits no comparison and raises
    DegenerateCensusError.
    """
    if report.total_coprime <= 0:
        raise DegenerateCensusError(
            f"census of x = {report.x}, q = {report.q} has no coprime values"
        )
    phi = len(report.counts)
    total = report.total_coprime
    return max(abs(c * phi / total - 1.0) for c in report.counts.values())


def rough_count_estimate(x: int, m: Modulus, which: Optional[str] = None) -> float:
    """Main-term shape for #{n ≤ x : gcd(σ(n), q) = 1}.

    Odd q: x/(log x)^{1−α(q)}.  Even q (with 3 ∤ q): the coprime set
    thins to numbers 2^k·m² and the shape is √x/(log x)^{1−α̃(q)}.
    The multiplicative exp(O(...)) correction has an inexplicit
    constant and is omitted entirely; values are shapes for trend
    comparison, not calibrated predictions.  Moduli divisible by 6
    admit no such estimate (σ(n) is then coprime to q only on a
    negligible set) and are rejected.
    """
    x = int(x)
    if x < 2:
        raise OutOfRangeError(f"x must be >= 2, got {x}")
    q = m.q
    inferred = "odd" if q % 2 else "even"
    if which is None:
        which = inferred
    if which not in ("odd", "even"):
        raise ValueError(f"which must be 'odd' or 'even', got {which!r}")
    if which != inferred:
        raise ValueError(f"q = {q} is {inferred}, not {which}")
    logx = math.log(x)
    if which == "odd":
        exponent = 1.0 - float(m.alpha)
        return x / logx**exponent
    if q % 3 == 0:
        raise UnsupportedModulusError(
            f"q = {q} is divisible by 6; sigma values coprime to q are negligible"
        )
    exponent = 1.0 - float(m.alpha_tilde)
    return math.sqrt(x) / logx**exponent
