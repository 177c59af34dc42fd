"""Dirichlet characters mod q as exponent vectors against unit-group generators.

The unit group U_q splits over the prime powers ell^e || q. Each local factor
gets explicit generators with known orders:

  * odd ell:            one generator, the least primitive root mod ell lifted
                        to ell^e, of order phi(ell^e);
  * 2^e, e >= 3:        the pair (-1, 5) of orders (2, 2^(e-2));
  * 4:                  the single generator 3 of order 2;
  * 2 and 1:            trivial group, no generators.

A character is the tuple of exponents it assigns to those generators, and a
character value is an exact root of unity zeta_N^k (N = group exponent),
materialized to complex only at the edge of a computation. Discrete-log
tables per prime power make bulk evaluation a few numpy gathers.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import OutOfRangeError, ResourceBudgetError

MAX_MODULUS = 10_000_000  # dlog tables are dense per prime power; cap guards misuse


def trial_factorization(n: int) -> tuple[tuple[int, int], ...]:
    """(prime, exponent) pairs of n >= 1 by trial division, primes ascending."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def _phi_prime_power(ell: int, e: int) -> int:
    return 1 if e == 0 else ell ** (e - 1) * (ell - 1)


def _valuation(n: int, ell: int) -> int:
    v = 0
    while n % ell == 0:
        n //= ell
        v += 1
    return v


def _least_primitive_root(ell: int) -> int:
    """Least primitive root modulo an odd prime ell."""
    m1 = ell - 1
    prime_divs = [p for p, _ in trial_factorization(m1)]
    g = 2
    while True:
        if all(pow(g, m1 // r, ell) != 1 for r in prime_divs):
            return g
        g += 1


def _primitive_root_prime_power(ell: int, e: int) -> int:
    """Primitive root mod ell^e for odd ell (least root mod ell, lifted)."""
    g = _least_primitive_root(ell)
    if e == 1:
        return g
    # g generates mod ell^2 (hence mod ell^e) unless g^(ell-1) = 1 mod ell^2
    if pow(g, ell - 1, ell * ell) == 1:
        g += ell
    return g


def _power_table(g: int, order: int, mod: int) -> np.ndarray:
    """powers[j] = g^j mod `mod` for 0 <= j < order, via baby/giant steps."""
    if order == 1:
        return np.ones(1, dtype=np.int64)
    s = math.isqrt(order) + 1
    baby = np.empty(s, dtype=np.int64)
    v = 1
    for j in range(s):
        baby[j] = v
        v = v * g % mod
    giant_step = pow(g, s, mod)
    n_giant = (order + s - 1) // s
    giant = np.empty(n_giant, dtype=np.int64)
    w = 1
    for j in range(n_giant):
        giant[j] = w
        w = w * giant_step % mod
    powers = (giant[:, None] * baby[None, :]) % mod
    return powers.reshape(-1)[:order]


@dataclass(frozen=True)
class Generator:
    """One unit-group generator living in the block mod prime_power."""

    prime: int
    prime_power: int
    residue: int
    order: int


class UnitGroupBasis:
    """Generators plus dense discrete-log tables, one table per generator."""

    def __init__(self, generators: list[Generator], dlogs: list[np.ndarray]) -> None:
        self.generators = tuple(generators)
        self.dlogs = tuple(dlogs)
        exp = 1
        for g in self.generators:
            exp = math.lcm(exp, g.order)
        self.exponent = exp  # lcm of generator orders; 1 for a trivial group


def _build_basis(factorization: tuple[tuple[int, int], ...]) -> UnitGroupBasis:
    generators: list[Generator] = []
    dlogs: list[np.ndarray] = []
    for ell, e in factorization:
        pp = ell**e
        if ell == 2:
            if e == 1:
                continue
            if e == 2:
                table = np.full(4, -1, dtype=np.int32)
                table[1] = 0
                table[3] = 1
                generators.append(Generator(2, 4, 3, 2))
                dlogs.append(table)
                continue
            order_b = pp // 4  # order of 5 mod 2^e
            pow5 = _power_table(5, order_b, pp)
            t_sign = np.full(pp, -1, dtype=np.int32)
            t_five = np.full(pp, -1, dtype=np.int32)
            t_sign[pow5] = 0
            t_five[pow5] = np.arange(order_b, dtype=np.int32)
            neg = pp - pow5
            t_sign[neg] = 1
            t_five[neg] = np.arange(order_b, dtype=np.int32)
            generators.append(Generator(2, pp, pp - 1, 2))
            dlogs.append(t_sign)
            generators.append(Generator(2, pp, 5, order_b))
            dlogs.append(t_five)
        else:
            order = _phi_prime_power(ell, e)
            g = _primitive_root_prime_power(ell, e)
            powers = _power_table(g, order, pp)
            table = np.full(pp, -1, dtype=np.int32)
            table[powers] = np.arange(order, dtype=np.int32)
            generators.append(Generator(ell, pp, g, order))
            dlogs.append(table)
    return UnitGroupBasis(generators, dlogs)


@dataclass(frozen=True)
class RootOfUnityValue:
    """Exact character value: zeta_order^numerator in lowest terms, or zero.

    Normalization keeps 0 <= numerator < order and gcd(numerator, order) = 1
    (with the value 1 stored as (0, 1)), so equality of values is equality of
    the dataclass fields even across characters of different moduli.
    """

    numerator: int
    order: int
    is_zero: bool = False

    def __post_init__(self) -> None:
        if self.is_zero:
            object.__setattr__(self, "numerator", 0)
            object.__setattr__(self, "order", 1)
            return
        if self.order < 1:
            raise ValueError("order must be >= 1")
        k = self.numerator % self.order
        g = math.gcd(k, self.order)
        object.__setattr__(self, "numerator", k // g)
        object.__setattr__(self, "order", self.order // g)

    @classmethod
    def zero(cls) -> "RootOfUnityValue":
        return cls(0, 1, True)

    @classmethod
    def one(cls) -> "RootOfUnityValue":
        return cls(0, 1)

    def to_complex(self) -> complex:
        if self.is_zero:
            return 0j
        return cmath.exp(2j * math.pi * self.numerator / self.order)

    def conjugate(self) -> "RootOfUnityValue":
        if self.is_zero:
            return self
        return RootOfUnityValue(-self.numerator, self.order)

    def __mul__(self, other: "RootOfUnityValue") -> "RootOfUnityValue":
        if self.is_zero or other.is_zero:
            return RootOfUnityValue.zero()
        n = math.lcm(self.order, other.order)
        k = self.numerator * (n // self.order) + other.numerator * (n // other.order)
        return RootOfUnityValue(k, n)


class Modulus:
    """Arithmetic environment mod q: factorization, phi, densities, unit basis.

    alpha(q)       = prod over primes ell | q of (1 - 1/(ell - 1)); zero for
                     even q since the local factor at 2 vanishes.
    alpha_tilde(q) = prod over primes ell | q, ell = 1 mod 3, of (1 - 2/(ell-1)).

    Both are exact fractions. Unit-group structures are built lazily.
    """

    def __init__(self, q: int, modulus_cap: int = MAX_MODULUS) -> None:
        if q < 1:
            raise OutOfRangeError("q must be >= 1")
        if q > modulus_cap:
            raise ResourceBudgetError(
                f"modulus {q} exceeds the dlog-table cap {modulus_cap}")
        self.q = int(q)
        self.factorization = trial_factorization(self.q)
        phi = 1
        alpha = Fraction(1)
        alpha_tilde = Fraction(1)
        for ell, e in self.factorization:
            phi *= _phi_prime_power(ell, e)
            alpha *= Fraction(ell - 2, ell - 1)
            if ell % 3 == 1:
                alpha_tilde *= Fraction(ell - 3, ell - 1)
        self.phi = phi
        self.alpha = alpha
        self.alpha_tilde = alpha_tilde
        self._basis: UnitGroupBasis | None = None
        self._unit_mask: np.ndarray | None = None
        self._units: np.ndarray | None = None
        self._residue_tables: dict[int, np.ndarray] = {}

    def __repr__(self) -> str:
        return f"Modulus({self.q})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Modulus) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("Modulus", self.q))

    @property
    def basis(self) -> UnitGroupBasis:
        if self._basis is None:
            basis = _build_basis(self.factorization)
            order_product = 1
            for g in basis.generators:
                order_product *= g.order
            assert order_product == self.phi, "generator orders must multiply to phi(q)"
            self._basis = basis
        return self._basis

    @property
    def exponent(self) -> int:
        """Exponent of U_q: the lcm of the generator orders (1 if trivial)."""
        return self.basis.exponent

    @property
    def unit_mask(self) -> np.ndarray:
        if self._unit_mask is None:
            self._unit_mask = np.gcd(np.arange(self.q, dtype=np.int64), self.q) == 1
        return self._unit_mask

    @property
    def units(self) -> np.ndarray:
        if self._units is None:
            self._units = np.flatnonzero(self.unit_mask).astype(np.int64)
        return self._units

    def residue_table(self, prime_power: int) -> np.ndarray:
        """Cached arange(q) % prime_power used for per-block dlog gathers."""
        tbl = self._residue_tables.get(prime_power)
        if tbl is None:
            tbl = np.arange(self.q, dtype=np.int64) % prime_power
            self._residue_tables[prime_power] = tbl
        return tbl

    def characters(self):
        """All phi(q) characters, in a fixed deterministic order.

        Index 0 is the principal character; the exponent on the last
        generator varies fastest.
        """
        ranges = [range(g.order) for g in self.basis.generators]
        for exps in itertools.product(*ranges):
            yield DirichletCharacter(self, exps)

    def character(self, index: int) -> "DirichletCharacter":
        """The index-th character in enumeration order."""
        if index < 0 or index >= self.phi:
            raise ValueError(f"character index must lie in 0..{self.phi - 1}")
        exps = []
        rem = index
        for g in reversed(self.basis.generators):
            exps.append(rem % g.order)
            rem //= g.order
        return DirichletCharacter(self, tuple(reversed(exps)))

    def principal_character(self) -> "DirichletCharacter":
        return DirichletCharacter(self, (0,) * len(self.basis.generators))


def build_modulus(q: int, modulus_cap: int = MAX_MODULUS) -> Modulus:
    """Construct the arithmetic environment mod q."""
    return Modulus(q, modulus_cap=modulus_cap)


@lru_cache(maxsize=512)
def shared_modulus(q: int) -> Modulus:
    """Cached Modulus builder for internal reuse across characters."""
    return Modulus(q)


def _crt_pair(a1: int, m1: int, a2: int, m2: int) -> int:
    """x mod m1*m2 with x = a1 (m1), x = a2 (m2); moduli must be coprime."""
    if m2 == 1:
        return a1 % m1
    t = ((a2 - a1) * pow(m1, -1, m2)) % m2
    return (a1 + m1 * t) % (m1 * m2)


class DirichletCharacter:
    """A character mod q, stored as exponents against the basis generators."""

    __slots__ = ("modulus", "exponents", "_conductor", "_order")

    def __init__(self, modulus: Modulus, exponents) -> None:
        gens = modulus.basis.generators
        exps = tuple(int(t) for t in exponents)
        if len(exps) != len(gens):
            raise ValueError(
                f"expected {len(gens)} exponents for modulus {modulus.q}, got {len(exps)}")
        self.modulus = modulus
        self.exponents = tuple(t % g.order for t, g in zip(exps, gens))
        self._conductor: int | None = None
        self._order: int | None = None

    def __repr__(self) -> str:
        return f"DirichletCharacter(q={self.modulus.q}, exponents={self.exponents})"

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, DirichletCharacter)
                and other.modulus.q == self.modulus.q
                and other.exponents == self.exponents)

    def __hash__(self) -> int:
        return hash((self.modulus.q, self.exponents))

    @property
    def is_principal(self) -> bool:
        return all(t == 0 for t in self.exponents)

    @property
    def index(self) -> int:
        """Position of this character in the enumeration order."""
        idx = 0
        for t, g in zip(self.exponents, self.modulus.basis.generators):
            idx = idx * g.order + t
        return idx

    @property
    def order(self) -> int:
        if self._order is None:
            n = 1
            for t, g in zip(self.exponents, self.modulus.basis.generators):
                n = math.lcm(n, g.order // math.gcd(t, g.order))
            self._order = n
        return self._order

    def __call__(self, v: int) -> RootOfUnityValue:
        m = self.modulus
        v = v % m.q
        if math.gcd(v, m.q) != 1:
            return RootOfUnityValue.zero()
        n = m.exponent
        k = 0
        for t, gen, dlog in zip(self.exponents, m.basis.generators, m.basis.dlogs):
            if t == 0:
                continue
            k += t * (n // gen.order) * int(dlog[v % gen.prime_power])
        return RootOfUnityValue(k % n, n)

    def exponent_table(self) -> np.ndarray:
        """int64 array k over 0..q-1 with chi(v) = zeta_N^k[v]; -1 where chi = 0.

        N is the unit-group exponent of the modulus (``modulus.exponent``).
        """
        m = self.modulus
        n = m.exponent
        k = np.zeros(m.q, dtype=np.int64)
        for t, gen, dlog in zip(self.exponents, m.basis.generators, m.basis.dlogs):
            if t == 0:
                continue
            w = t * (n // gen.order)
            k += w * dlog[m.residue_table(gen.prime_power)].astype(np.int64)
        k %= n
        k[~m.unit_mask] = -1
        return k

    def complex_table(self) -> np.ndarray:
        """complex128 array of chi(v) for v = 0..q-1, zeros at non-units."""
        k = self.exponent_table()
        n = self.modulus.exponent
        tbl = np.exp(2j * np.pi * np.where(k < 0, 0, k) / n)
        tbl[k < 0] = 0
        return tbl

    @property
    def conductor(self) -> int:
        """Smallest f | q such that the character factors through U_f."""
        if self._conductor is None:
            f = 1
            m = self.modulus
            pairs = list(zip(self.exponents, m.basis.generators))
            for ell, e in m.factorization:
                block = [(t, g) for t, g in pairs if g.prime == ell]
                f *= _local_conductor(ell, e, block)
            self._conductor = f
        return self._conductor

    def component(self, ell: int) -> "DirichletCharacter":
        """Restriction to the block mod ell^e (ell^e || q)."""
        m = self.modulus
        e = dict(m.factorization).get(ell)
        if e is None:
            raise ValueError(f"{ell} does not divide q={m.q}")
        sub = [t for t, g in zip(self.exponents, m.basis.generators) if g.prime == ell]
        return DirichletCharacter(shared_modulus(ell**e), tuple(sub))

    def primitive(self) -> "DirichletCharacter":
        """The primitive character at conductor level inducing this one."""
        f = self.conductor
        mf = shared_modulus(f)
        q = self.modulus.q
        exps = []
        for gen in mf.basis.generators:
            e_q = _valuation(q, gen.prime)
            block_q = gen.prime**e_q
            rest = q // block_q
            u = _crt_pair(gen.residue, block_q, 1, rest)
            val = self(u)
            assert not val.is_zero and gen.order % val.order == 0
            exps.append(val.numerator * (gen.order // val.order))
        return DirichletCharacter(mf, tuple(exps))


def _local_conductor(ell: int, e: int, block: list[tuple[int, Generator]]) -> int:
    if ell == 2:
        if e == 1:
            return 1
        if e == 2:
            (t, _), = block
            return 4 if t else 1
        (a, _), (b, gen_b) = block
        if b:
            d = gen_b.order // math.gcd(b, gen_b.order)  # order of the 5-part
            return 4 * d
        return 4 if a else 1
    (t, gen), = block
    d = gen.order // math.gcd(t, gen.order)
    if d == 1:
        return 1
    return ell ** (1 + _valuation(d, ell))


def enumerate_characters(m: Modulus) -> list[DirichletCharacter]:
    """All characters mod q as a list, principal first."""
    return list(m.characters())


def character_with_conductor_count(m: Modulus, d: int) -> int:
    """Number of characters mod q whose conductor is exactly d.

    Each such character is induced by exactly one primitive character mod d,
    so the count is the (multiplicative) number of primitive characters
    mod d: prod over ell^a || d of (phi(ell^a) - phi(ell^(a-1))).
    """
    if d < 1 or m.q % d:
        raise ValueError(f"d={d} must divide q={m.q}")
    out = 1
    for ell, a in trial_factorization(d):
        out *= _phi_prime_power(ell, a) - _phi_prime_power(ell, a - 1)
    return out
