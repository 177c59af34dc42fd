"""Character machinery against first-principles oracles.

The oracles only use gcd arithmetic and the defining properties
(multiplicativity, orthogonality, periodicity mod candidate conductors),
never the generator/discrete-log representation under test.
"""

import cmath
import math

import pytest

from sigmalab import (
    DirichletCharacter,
    Modulus,
    OutOfRangeError,
    ResourceBudgetError,
    RootOfUnityValue,
    build_modulus,
    character_with_conductor_count,
    enumerate_characters,
    shared_modulus,
)


def brute_units(q: int) -> list[int]:
    if q == 1:
        return [1 % q] if q > 1 else [0]
    return [u for u in range(1, q + 1) if math.gcd(u, q) == 1 and u <= q]


def test_unit_group_sizes():
    for q in range(1, 201):
        m = build_modulus(q)
        want = sum(1 for u in range(q) if math.gcd(u, q) == 1) or 1
        if q == 1:
            assert m.phi == 1
            continue
        assert m.phi == want
        assert len(m.units) == want
        assert sorted(int(u) for u in m.units) == sorted(
            u % q for u in brute_units(q))


def test_character_count_equals_phi():
    for q in range(1, 121):
        m = build_modulus(q)
        chars = list(enumerate_characters(m))
        assert len(chars) == m.phi
        assert len({chi.exponents for chi in chars}) == m.phi
        assert chars[0].is_principal
        for i, chi in enumerate(chars):
            assert chi.index == i
            assert m.character(i) == chi


def test_values_are_exact_roots_of_unity():
    for q in (7, 9, 15, 16, 24, 40):
        m = build_modulus(q)
        for chi in enumerate_characters(m):
            for v in range(q):
                val = chi(v)
                if math.gcd(v, q) != 1:
                    assert val.is_zero
                else:
                    assert not val.is_zero
                    assert math.gcd(val.numerator, val.order) == 1 or val.numerator == 0
                    assert chi.order % val.order == 0
                    z = val.to_complex()
                    assert abs(abs(z) - 1.0) < 1e-12


def test_multiplicativity_exhaustive():
    for q in (5, 8, 12, 15, 16, 21, 35, 45):
        m = build_modulus(q)
        units = brute_units(q)
        for chi in enumerate_characters(m):
            for u in units:
                for v in units:
                    assert chi(u) * chi(v) == chi(u * v % q)


def test_row_orthogonality():
    """sum_v chi(v) = phi for principal chi and 0 otherwise."""
    for q in range(1, 101):
        m = build_modulus(q)
        for chi in enumerate_characters(m):
            total = sum(chi(int(v)).to_complex() for v in m.units)
            want = m.phi if chi.is_principal else 0.0
            assert abs(total - want) < 1e-9


def test_column_orthogonality():
    """sum_chi chi(v) = phi when v = 1 and 0 for other units."""
    for q in (7, 9, 15, 16, 24):
        m = build_modulus(q)
        for v in brute_units(q):
            total = sum(chi(v).to_complex() for chi in enumerate_characters(m))
            want = m.phi if v % q == 1 % q else 0.0
            assert abs(total - want) < 1e-9


def brute_conductor(chi: DirichletCharacter, q: int) -> int:
    """Smallest d | q such that chi is trivial on units u = 1 (mod d)."""
    for d in sorted(d for d in range(1, q + 1) if q % d == 0):
        ok = True
        for u in range(1, q + 1):
            if math.gcd(u, q) == 1 and u % d == 1 % d:
                if chi(u) != RootOfUnityValue.one():
                    ok = False
                    break
        if ok:
            return d
    return q


def test_conductor_matches_brute():
    for q in range(1, 121):
        m = build_modulus(q)
        for chi in enumerate_characters(m):
            assert chi.conductor == brute_conductor(chi, q)


def test_conductor_counts_partition_phi():
    for q in range(1, 121):
        m = build_modulus(q)
        by_cond = {}
        for chi in enumerate_characters(m):
            by_cond[chi.conductor] = by_cond.get(chi.conductor, 0) + 1
        assert sum(by_cond.values()) == m.phi
        for d, n in by_cond.items():
            assert q % d == 0
            assert character_with_conductor_count(m, d) == n
        # primitive characters mod q are exactly those of conductor q
        assert character_with_conductor_count(m, q) == by_cond.get(q, 0)


def test_primitive_character_induces_original():
    """chi'(v mod f) = chi(v) for every unit v of q, chi' = chi.primitive()."""
    for q in range(1, 121):
        m = build_modulus(q)
        for chi in enumerate_characters(m):
            prim = chi.primitive()
            f = chi.conductor
            assert prim.modulus.q == f
            assert prim.conductor == f
            for v in brute_units(q):
                assert prim(v % f if f > 1 else 0 if f == 1 else v) == chi(v) or f == 1
            if f == 1:
                assert all(chi(v) == RootOfUnityValue.one()
                           for v in brute_units(q))


def test_order_is_minimal_annihilator():
    for q in (5, 9, 15, 16, 40):
        m = build_modulus(q)
        for chi in enumerate_characters(m):
            k = chi.order
            assert k >= 1 and m.exponent % k == 0
            for v in brute_units(q):
                val = chi(v)
                assert (val.order if not val.is_zero else 1) <= k
            # k-th power is principal, no smaller power is
            for j in range(1, k):
                if all((chi(v).numerator * j) % chi(v).order == 0
                       for v in brute_units(q)):
                    pytest.fail(f"order {k} not minimal for q={q}")


def test_primitive_count_mod_25():
    m = build_modulus(25)
    assert character_with_conductor_count(m, 25) == 16


def test_exponent_table_matches_calls():
    for q in (15, 16, 21):
        m = build_modulus(q)
        for chi in enumerate_characters(m):
            table = chi.complex_table()
            for v in range(q):
                assert abs(table[v] - chi(v).to_complex()) < 1e-12


def test_root_of_unity_arithmetic():
    i = RootOfUnityValue(1, 4)
    assert i.to_complex() == pytest.approx(1j)
    assert i * i == RootOfUnityValue(1, 2)
    assert i.conjugate() == RootOfUnityValue(3, 4)
    assert RootOfUnityValue(2, 8) == RootOfUnityValue(1, 4)
    assert RootOfUnityValue.zero().is_zero
    z = RootOfUnityValue(5, 6).to_complex()
    assert abs(z - cmath.exp(2j * math.pi * 5 / 6)) < 1e-15


def test_shared_modulus_caches():
    assert shared_modulus(91) is shared_modulus(91)
    assert shared_modulus(91) == build_modulus(91)


def test_modulus_validation():
    with pytest.raises(OutOfRangeError):
        Modulus(0)
    with pytest.raises(OutOfRangeError):
        Modulus(-5)
    with pytest.raises(ResourceBudgetError):
        Modulus(10**8)
