"""Residue classes of sigma(n) that beat the average.

Equidistribution of sigma over coprime classes can fail by a bounded
factor once the modulus is allowed to grow with x.  The witnesses are
explicit: pick the class hit by sigma(P^2) = P^2 + P + 1 for primes P
in prescribed residue classes, and the class count exceeds the all-class
mean by a factor growing like 2^{omega(q)}.

Two constructions are implemented.  The squarefree one (q = 2 prod ell)
counts primes P in (x^{1/4}, x^{1/2}] with P = 1 or -2 mod every odd
ell | q, so that sigma(P^2) = 3 mod q.  The even one (q = 2 (prod ell)^2)
counts n = P1^2 P2^2 with the pair (P1, P2) in a prescribed set of
classes mod q.  Both count the same set two ways, by CRT classes and by
direct enumeration, as a built-in oracle check.

The final section scans the Weil-bounded point counts N(ell) of the
curve (X^2+3)(Y^2+3) = 9 that underlie the class constructions: the
observed max of |N - ell| / sqrt(ell) stays near 1, far inside the
guaranteed 6 + 10/sqrt(ell).
"""

import math
import time

from sigmalab import (
    build_sieve,
    curve_point_count,
    overrep_witness_even,
    overrep_witness_sqfree,
)


def _show(rep) -> None:
    print(f"  q = {rep.q} (cut Y = {rep.y_cut}), x = {rep.x}, "
          f"witness class {rep.witness_class} mod {rep.q}")
    print(f"  count by CRT classes:     {rep.crt_count}")
    print(f"  count by direct scan:     {rep.direct_count}")
    print(f"  prime classes per modulus: {rep.num_prime_classes}")
    if rep.ratio is not None:
        print(f"  census count in class:    {rep.census_class_count} "
              f"(all-class mean {rep.mean_count:.2f})")
        print(f"  over-representation ratio: {rep.ratio:.4f}")
    else:
        print(f"  census comparison: {rep.census_note}")
    print()


def squarefree_witness() -> None:
    print("squarefree construction, Y = 5, x = 1e6 "
          "(q = 10, sigma(P^2) = 3 mod 10)")
    _show(overrep_witness_sqfree(5, 10 ** 6))


def even_witness() -> None:
    print("even-modulus construction, Y = 5, x = 1e6 (q = 2 * 5^2 = 50)")
    _show(overrep_witness_even(5, 10 ** 6))


def demonstrator() -> None:
    print("demonstrator at the next cut: Y = 11, x = 1e7 "
          "(q = 2 (5*7*11)^2 = 296450)")
    t0 = time.perf_counter()
    rep = overrep_witness_even(11, 10 ** 7)
    _show(rep)
    print(f"  ({time.perf_counter() - t0:.1f}s; the witness set is empty "
          f"at this x because the pair")
    print("  classes sit above x^(1/6), and the comparison census needs n")
    print("  with four prime factors above q, so the over-representation")
    print("  is a genuinely asymptotic statement at this modulus size)")
    print()


def curve_scan(limit: int = 10 ** 4) -> None:
    sieve = build_sieve(limit)
    worst, at = 0.0, 0
    t0 = time.perf_counter()
    for ell in sieve.primes_up_to(limit):
        if ell < 5:
            continue
        n = curve_point_count(int(ell)).count
        r = abs(n - ell) / math.sqrt(ell)
        if r > worst:
            worst, at = r, int(ell)
    dt = time.perf_counter() - t0
    print(f"point counts N(ell) of (X^2+3)(Y^2+3) = 9 over F_ell, "
          f"primes 5 <= ell <= {limit}:")
    print(f"  max |N - ell| / sqrt(ell) = {worst:.4f} at ell = {at} "
          f"({dt:.1f}s)")
    print("  the square-root bound predicts a constant near 6; the")
    print("  observed constant stays close to 1, the generic size for a")
    print("  curve with a few rational branch points.")


if __name__ == "__main__":
    squarefree_witness()
    even_witness()
    demonstrator()
    curve_scan()
