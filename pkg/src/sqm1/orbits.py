"""Exact orbit arithmetic over the integers.

The sequence a_0 = n, a_{k+1} = a_k^2 - 1 doubles in bit length every step,
so every depth-taking operation carries a hard cap and raises DepthTooLarge
past it rather than attempting the allocation.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from . import _kernels
from .errors import BadN, DepthTooLarge, Sqm1Error
from .primes import check_prime, sieve

ORBIT_CAP = 24
VALUATION_CAP = 16
GCD_CAP = 6
GCD_TRIAL_LIMIT = 10_000


@dataclass(frozen=True)
class OrbitRecord:
    n: int
    terms: tuple


@dataclass(frozen=True, eq=False)
class GcdExperimentReport:
    """Common divisors of two orbits sampled at even indices.

    gcds[k] = gcd(a_{2k}(n), a_{2k}(n2)).  valuations maps each prime
    p <= 10^4 dividing some gcd to its valuation row (v_p(g_0), ..), and
    first_index to the smallest k with a positive entry.  cofactors[k] is the
    part of g_k not reached by the trial primes (1 when fully factored).
    """

    n: int
    n2: int
    k_max: int
    gcds: tuple
    valuations: dict
    first_index: dict
    cofactors: tuple

    @property
    def has_unfactored(self) -> bool:
        return any(c > 1 for c in self.cofactors)


def orbit_terms(n: int, k_max: int) -> OrbitRecord:
    """Terms a_0 .. a_{k_max}, exactly."""
    if n < 2:
        raise BadN(n)
    if k_max < 0:
        raise Sqm1Error("k_max must be >= 0")
    if k_max > ORBIT_CAP:
        raise DepthTooLarge(k_max, ORBIT_CAP)
    terms = [n]
    for _ in range(k_max):
        terms.append(terms[-1] * terms[-1] - 1)
    return OrbitRecord(n=n, terms=tuple(terms))


def prime_set_truncated(n: int, prime_limit: int) -> list:
    """Primes p <= prime_limit dividing some orbit term of n, ascending.

    p divides some a_k(n) iff the orbit of n mod p reaches 0, so membership
    is a residue walk, never a big-integer factorization.
    """
    if n < 2:
        raise BadN(n)
    out = []
    for p in sieve(prime_limit):
        p = int(p)
        if _kernels.reaches_zero(p, n % p):
            out.append(p)
    return out


def _trial_factor(m: int) -> dict:
    """Full factorization by trial division (cofactor past isqrt is prime)."""
    fac = {}
    d = 2
    while d * d <= m:
        while m % d == 0:
            fac[d] = fac.get(d, 0) + 1
            m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        fac[m] = fac.get(m, 0) + 1
    return fac


def restricted_set(n: int) -> list:
    """Primes p = +-3 mod 8 dividing some orbit term of n, ascending.

    For such p the basin is just {0, 1, -1}, so p divides an orbit term iff
    p divides (n-1)n(n+1); trial division of those three integers is the
    whole computation.
    """
    if n < 2:
        raise BadN(n)
    found = set()
    for m in (n - 1, n, n + 1):
        if m > 1:
            for p in _trial_factor(m):
                if p % 8 in (3, 5):
                    found.add(p)
    return sorted(found)


def _v(p: int, m: int) -> int:
    v = 0
    while m % p == 0:
        v += 1
        m //= p
    return v


def valuation_profile(n: int, p: int, k_max: int) -> list:
    """p-adic valuations [v_p(a_0), .., v_p(a_k_max)] for an odd prime p."""
    check_prime(p)
    if p == 2:
        raise Sqm1Error("valuation profile is defined for odd primes only")
    if k_max > VALUATION_CAP:
        raise DepthTooLarge(k_max, VALUATION_CAP)
    record = orbit_terms(n, k_max)
    return [_v(p, t) for t in record.terms]


def gcd_experiment(n: int, n2: int, k_max: int) -> GcdExperimentReport:
    """gcd(a_{2k}(n), a_{2k}(n2)) for k = 0..k_max, with small-prime valuations.

    Only primes <= 10^4 are tried against the gcds; whatever they leave
    behind is reported as an unfactored cofactor.
    """
    if n < 2:
        raise BadN(n)
    if n2 < 2:
        raise BadN(n2)
    if k_max > GCD_CAP:
        raise DepthTooLarge(k_max, GCD_CAP)
    terms_a = orbit_terms(n, 2 * k_max).terms
    terms_b = orbit_terms(n2, 2 * k_max).terms
    gcds = tuple(gcd(terms_a[2 * k], terms_b[2 * k]) for k in range(k_max + 1))

    valuations = {}
    first_index = {}
    for q in sieve(GCD_TRIAL_LIMIT):
        q = int(q)
        row = [_v(q, g) for g in gcds]
        if any(row):
            valuations[q] = tuple(row)
            first_index[q] = next(k for k, v in enumerate(row) if v)

    cofactors = []
    for k, g in enumerate(gcds):
        c = g
        for q, row in valuations.items():
            c //= q ** row[k]
        cofactors.append(c)
    return GcdExperimentReport(
        n=n,
        n2=n2,
        k_max=k_max,
        gcds=gcds,
        valuations=valuations,
        first_index=first_index,
        cofactors=tuple(cofactors),
    )
