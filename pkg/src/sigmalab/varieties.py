"""Point counts for the congruences that break uniform equidistribution.

Three families of counting problems live here, all exact:

  * V_q(w): tuples of units (v_1, .., v_r) mod q, r ∈ {2, 3}, with
    ∏ (v_j² + v_j + 1) ≡ w.  Computed blockwise per prime power via
    the value distribution of v² + v + 1 over units, convolved under
    multiplication in the unit group, then stitched by CRT.

  * Counts over 𝔽_ℓ of the plane curves (X²+3)(Y²+3) = 9 (the
    completed-square form) and (X²+X+1)(Y²+Y+1) = w (the σ-product
    form), plus the companion count of unit pairs mod ℓ² hitting the
    distinguished target 9·16^{−1}.  The curves are absolutely
    irreducible for ℓ ≥ 5, so their counts stay within O(√ℓ) of ℓ;
    we verify that window numerically rather than certifying
    irreducibility.

  * Witness constructions: explicit moduli q built from primes
    5 ≤ ℓ ≤ Y and the residue classes that scoop up all n = (P₁P₂)²
    (resp. n = P²) in a designated class of σ(n) mod q, making that
    class over-represented.  Each witness count is computed two ways,
    by local residue classes (CRT) and by a direct σ evaluation, so
    the two routes validate each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .characters import Modulus, _crt_pair, build_modulus, trial_factorization
from .census import CensusFilter, census
from .errors import OutOfRangeError, ResourceBudgetError
from .factor import DEFAULT_SEGMENT_LENGTH, Factorization, FactorSieve, sigma_mod
from .lsd import _primes_up_to

__all__ = [
    "SolutionCount",
    "CurveCount",
    "OverrepWitnessReport",
    "v_count",
    "lift_count_mod_ell_squared",
    "curve_point_count",
    "overrep_witness_even",
    "overrep_witness_sqfree",
]

#: Work cap for one convolution block, in unit-pair operations.
DEFAULT_WORK_BUDGET = 200_000_000


@dataclass(frozen=True)
class SolutionCount:
    """#{unit tuples (v_1..v_arity) mod q : ∏(v_j²+v_j+1) ≡ w}."""

    q: int
    w: int
    arity: int
    count: int


@dataclass(frozen=True)
class CurveCount:
    """Exact number of 𝔽_ℓ points on one of the witness curves.

    which is 'completed-square' for (X²+3)(Y²+3)−9 and 'sigma-product'
    for (X²+X+1)(Y²+Y+1)−w (w recorded alongside).  bound_certified
    marks whether ℓ ≥ 5, the range where the O(√ℓ) window rests on
    absolute irreducibility; smaller primes still get exact counts.
    """

    ell: int
    which: str
    w: Optional[int]
    count: int
    bound_certified: bool


def _require_prime(ell: int, floor: int = 2) -> int:
    ell = int(ell)
    if ell < floor or trial_factorization(ell) != ((ell, 1),):
        raise OutOfRangeError(f"need a prime >= {floor}, got {ell}")
    return ell


def _block_value_distribution(pp: int, ell: int) -> tuple[np.ndarray, np.ndarray]:
    """(distribution, units) for v ↦ v²+v+1 on U_{pp}, pp = ell^e.

    distribution[t] counts units v with v²+v+1 ≡ t, with non-unit
    targets zeroed (a tuple whose product is a unit never passes
    through them); units is the ascending array of unit residues.
    """
    v = np.arange(pp, dtype=np.int64)
    unit = (v % ell) != 0
    values = (v * v + v + 1) % pp
    dist = np.bincount(values[unit], minlength=pp).astype(np.int64)
    dist[~unit] = 0
    return dist, np.flatnonzero(unit).astype(np.int64)


def _convolve_block(
    dist: np.ndarray, units: np.ndarray, pp: int, arity: int
) -> np.ndarray:
    """arity-fold multiplicative convolution of dist over U_{pp}.

    result[t] = #{(v_1..v_arity) : ∏(v_j²+v_j+1) ≡ t (mod pp)}.  Each
    pass scatters along s·units mod pp, a permutation of the units for
    each unit s, so plain fancy indexing accumulates without
    collisions.
    """
    acc = dist
    for _ in range(arity - 1):
        nxt = np.zeros(pp, dtype=np.int64)
        for s in np.flatnonzero(acc):
            weight = acc[s]
            idx = (int(s) * units) % pp
            nxt[idx] += weight * dist[units]
        acc = nxt
    return acc


def v_count(
    m: Modulus,
    w: int,
    arity: int = 3,
    *,
    work_budget: int = DEFAULT_WORK_BUDGET,
) -> SolutionCount:
    """Exact #{(v_1..v_arity) ∈ U_q^arity : ∏(v_j²+v_j+1) ≡ w (mod q)}.

    Splits by CRT into prime-power blocks; each block convolves the
    unit-value distribution of v²+v+1 with itself arity−1 times.  Work
    is Σ φ(ℓ^e)² per extra factor, guarded by work_budget so that an
    accidental huge prime power fails fast instead of thrashing.
    """
    q = m.q
    w = int(w) % q if q > 1 else 0
    if arity not in (2, 3):
        raise ValueError(f"arity must be 2 or 3, got {arity}")
    if q == 1:
        return SolutionCount(q=1, w=0, arity=arity, count=1)
    if math.gcd(w, q) != 1:
        raise OutOfRangeError(f"target w = {w} shares a factor with q = {q}")
    total = 1
    for ell, e in m.factorization:
        pp = ell**e
        phi_pp = pp // ell * (ell - 1)
        if phi_pp * phi_pp * (arity - 1) > work_budget:
            raise ResourceBudgetError(
                f"block {ell}^{e} needs ~{phi_pp * phi_pp * (arity - 1)} "
                f"unit-pair operations, budget is {work_budget}"
            )
        dist, units = _block_value_distribution(pp, ell)
        local = _convolve_block(dist, units, pp, arity)
        total *= int(local[w % pp])
        if total == 0:
            break
    return SolutionCount(q=q, w=w, arity=arity, count=total)


def _modpow_array(base: np.ndarray, exponent: int, mod: int) -> np.ndarray:
    """base**exponent mod `mod`, elementwise, by binary powering.

    Safe in int64 as long as mod² < 2^63, i.e. mod below ~3·10⁹.
    """
    result = np.ones_like(base)
    b = base % mod
    e = int(exponent)
    while e:
        if e & 1:
            result = result * b % mod
        b = b * b % mod
        e >>= 1
    return result


def lift_count_mod_ell_squared(ell: int) -> int:
    """#{(v_1, v_2) ∈ U_{ℓ²}² : (v_1²+v_1+1)(v_2²+v_2+1) ≡ 9·16^{−1}}.

    The target 9·16^{−1} mod ℓ² is the value hit by the diagonal
    family v_1 + v_2 ≡ −1, which alone contributes ℓ² pairs, so the
    count is at least ℓ²; the full count sits near 2ℓ².  Evaluated
    directly from the value distribution and an inverse table, a
    different route from v_count's convolution, so the two serve as
    mutual oracles.
    """
    ell = _require_prime(ell, floor=5)
    pp = ell * ell
    w = 9 * pow(16, -1, pp) % pp
    dist, units = _block_value_distribution(pp, ell)
    # t ranges over unit values; the cofactor needed is w·t^{−1},
    # with t^{−1} = t^{φ(ℓ²)−1} and φ(ℓ²)−1 = ℓ²−ℓ−1.
    inv_units = _modpow_array(units, pp - ell - 1, pp)
    cofactor = (w * inv_units) % pp
    return int(np.sum(dist[units] * dist[cofactor]))


def curve_point_count(ell: int, which: str = "completed-square", w: int = 1) -> CurveCount:
    """Exact 𝔽_ℓ point count of a witness curve.

    'completed-square' counts (X²+3)(Y²+3) = 9; 'sigma-product'
    counts (X²+X+1)(Y²+Y+1) = w.  Both run over all of 𝔽_ℓ², pairing
    the value histograms of the two factors: for a nonzero target the
    pairs are Σ_{s≠0} h[s]·h[target/s], and for target ≡ 0 they are
    h[0]·(2ℓ − h[0]).
    """
    ell = _require_prime(ell, floor=2)
    if which not in ("completed-square", "sigma-product"):
        raise ValueError(f"which must be 'completed-square' or 'sigma-product', got {which!r}")
    x = np.arange(ell, dtype=np.int64)
    if which == "completed-square":
        values = (x * x + 3) % ell
        target = 9 % ell
        w_field: Optional[int] = None
    else:
        values = (x * x + x + 1) % ell
        target = int(w) % ell
        w_field = int(w)
    hist = np.bincount(values, minlength=ell).astype(np.int64)
    if target == 0:
        count = int(hist[0] * (2 * ell - hist[0]))
    else:
        s = np.arange(1, ell, dtype=np.int64)
        inv_s = _modpow_array(s, ell - 2, ell)
        count = int(np.sum(hist[s] * hist[(target * inv_s) % ell]))
    return CurveCount(
        ell=ell,
        which=which,
        w=w_field,
        count=count,
        bound_certified=ell >= 5,
    )


@dataclass(frozen=True)
class OverrepWitnessReport:
    """Outcome of one over-representation witness construction.

    witness_count is the number of witnesses found (pairs P₁ > P₂ of
    primes with (P₁P₂)² ≤ x in the even construction; single primes P
    with x^{1/4} < P ≤ x^{1/2} in the squarefree one); crt_count and
    direct_count are the same quantity computed by residue classes
    and by evaluating σ, and must agree.  The census fields compare
    the witness class against the all-class mean in the filtered
    census of σ(n) mod q; ratio is class·φ(q)/total, None when the
    filtered census is empty at this scale (the constructions only
    bite for x enormous relative to q, which census_note records).
    """

    kind: str
    q: int
    y_cut: int
    x: int
    witness_class: int
    crt_count: int
    direct_count: int
    witness_count: int
    num_prime_classes: Optional[int]
    census_class_count: Optional[int]
    census_total: Optional[int]
    mean_count: Optional[float]
    ratio: Optional[float]
    census_note: str


def _witness_primes(y: int) -> list[int]:
    ells = [int(p) for p in _primes_up_to(int(y), None) if p >= 5]
    if not ells:
        raise OutOfRangeError(f"witness cut y = {y} admits no primes in [5, y]")
    return ells


def overrep_witness_even(
    y: int,
    x: int,
    sieve: Optional[FactorSieve] = None,
    *,
    segment_length: Optional[int] = None,
    workers: int = 1,
) -> OverrepWitnessReport:
    """Witnesses n = (P₁P₂)² landing in one class mod q = 2(∏ℓ)².

    The modulus collects every prime 5 ≤ ℓ ≤ y squared; the class
    w_q ≡ 9·16^{−1} mod each ℓ² (and 1 mod 2) receives all n = (P₁P₂)²
    with x^{1/10} < P₂ ≤ x^{1/6} < P₁ whose pair of residues solves
    (v₁²+v₁+1)(v₂²+v₂+1) ≡ w_q.  Prime pairs are counted both by the
    local class conditions and by evaluating σ(P₁²P₂²) mod q; the
    census under the P₄(n) > q filter supplies the comparison mean.
    """
    x = int(x)
    y = int(y)
    if x < 4:
        raise OutOfRangeError(f"x must be >= 4, got {x}")
    ells = _witness_primes(y)
    q = 2
    for ell in ells:
        q *= ell * ell
        if q >= 1 << 63:
            raise ResourceBudgetError(
                f"witness modulus for y = {y} exceeds 64 bits"
            )
    targets = {ell: 9 * pow(16, -1, ell * ell) % (ell * ell) for ell in ells}
    w_q = 1  # the mod-2 component
    mod_so_far = 2
    for ell in ells:
        w_q = _crt_pair(w_q, mod_so_far, targets[ell], ell * ell)
        mod_so_far *= ell * ell

    # Prime windows by exact integer power comparisons.
    root = math.isqrt(x)
    all_primes = [int(p) for p in _primes_up_to(root, sieve)]
    p2_list = [p for p in all_primes if p**10 > x and p**6 <= x]
    crt_count = 0
    direct_count = 0

    def local_ok(p: int) -> bool:
        if p % 2 == 0:
            return False
        for ell in ells:
            if p % ell == 0:
                return False
        return True

    def pair_in_class(p1: int, p2: int) -> bool:
        for ell in ells:
            ll = ell * ell
            f1 = (p1 * p1 + p1 + 1) % ll
            f2 = (p2 * p2 + p2 + 1) % ll
            if f1 * f2 % ll != targets[ell]:
                return False
        return True

    for p2 in p2_list:
        if not local_ok(p2):
            continue
        p1_top = root // p2
        for p1 in all_primes:
            if p1 > p1_top:
                break
            if p1**6 <= x or p1 <= p2 or not local_ok(p1):
                continue
            if pair_in_class(p1, p2):
                crt_count += 1
            fact = Factorization(((p2, 2), (p1, 2)))
            if sigma_mod(fact, q) == w_q % q:
                direct_count += 1

    report = census(
        x,
        build_modulus(q),
        CensusFilter.pk_threshold(4, q),
        sieve,
        segment_length=segment_length,
        workers=workers,
    )
    klass = w_q % q
    class_count = report.counts.get(klass, 0)
    total = report.total_coprime
    phi = len(report.counts)
    if total > 0:
        mean = total / phi
        ratio: Optional[float] = class_count * phi / total
        note = "filtered census is nonempty; ratio compares the witness class to the mean"
    else:
        mean = None
        ratio = None
        note = (
            f"no n <= {x} has four prime factors above q = {q}; the census "
            "comparison only becomes meaningful for far larger x"
        )
    return OverrepWitnessReport(
        kind="even",
        q=q,
        y_cut=y,
        x=x,
        witness_class=klass,
        crt_count=crt_count,
        direct_count=direct_count,
        witness_count=direct_count,
        num_prime_classes=None,
        census_class_count=class_count,
        census_total=total,
        mean_count=mean,
        ratio=ratio,
        census_note=note,
    )


def overrep_witness_sqfree(
    y: int,
    x: int,
    sieve: Optional[FactorSieve] = None,
    *,
    segment_length: Optional[int] = None,
    workers: int = 1,
) -> OverrepWitnessReport:
    """Witnesses n = P² landing in class 3 mod q = 2·∏ ℓ.

    For squarefree even q assembled from the primes 5 ≤ ℓ ≤ y, every
    prime P with P ≡ 1 or −2 mod each odd ℓ | q has
    σ(P²) = P²+P+1 ≡ 3 (mod q): the 2^{ω(q)−1} residue classes of
    such P all funnel into the single class 3.  Primes in
    (x^{1/4}, x^{1/2}] are counted by class membership and by direct
    σ evaluation, and the class-3 count of the P₂(n) > q census
    gives the over-representation ratio.
    """
    x = int(x)
    y = int(y)
    if x < 4:
        raise OutOfRangeError(f"x must be >= 4, got {x}")
    ells = _witness_primes(y)
    q = 2
    for ell in ells:
        q *= ell
        if q >= 1 << 63:
            raise ResourceBudgetError(f"witness modulus for y = {y} exceeds 64 bits")

    root = math.isqrt(x)
    primes = [int(p) for p in _primes_up_to(root, sieve)]
    crt_count = 0
    direct_count = 0
    for p in primes:
        if p**4 <= x:
            continue
        in_class = p % 2 == 1 and all(p % ell in (1, ell - 2) for ell in ells)
        if in_class:
            crt_count += 1
        if sigma_mod(Factorization(((p, 2),)), q) == 3 % q:
            direct_count += 1

    report = census(
        x,
        build_modulus(q),
        CensusFilter.pk_threshold(2, q),
        sieve,
        segment_length=segment_length,
        workers=workers,
    )
    klass = 3 % q
    class_count = report.counts.get(klass, 0)
    total = report.total_coprime
    phi = len(report.counts)
    if total > 0:
        mean = total / phi
        ratio: Optional[float] = class_count * phi / total
        note = "filtered census is nonempty; ratio compares class 3 to the mean"
    else:
        mean = None
        ratio = None
        note = (
            f"no n <= {x} has two prime factors above q = {q}; the census "
            "comparison only becomes meaningful for far larger x"
        )
    return OverrepWitnessReport(
        kind="squarefree",
        q=q,
        y_cut=y,
        x=x,
        witness_class=klass,
        crt_count=crt_count,
        direct_count=direct_count,
        witness_count=direct_count,
        num_prime_classes=2 ** len(ells),
        census_class_count=class_count,
        census_total=total,
        mean_count=mean,
        ratio=ratio,
        census_note=note,
    )
