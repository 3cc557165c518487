"""Model predictions and their comparison against bulk scans.

The random-tree model assigns basin size 2n+1 the probability
C(2n, n) / ((2n-1) 4^n); everything downstream of it stays an exact rational
until the reporting boundary.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from . import _kernels
from .dynamics import basin_sizes_up_to
from .errors import BadBand, BoundTooSmall, DepthTooLarge, Sqm1Error
from .polys import necklace_count
from .primes import sieve

TREE_CAP = 10_000
FPF_CAP = 30
DELTA_DEPTH_CAP = 6
DELTA_PRIME_CAP = 1_000_000


def tree_size_probability(n: int) -> Fraction:
    """Model probability that a basin has size exactly 2n+1."""
    if n < 1:
        raise Sqm1Error("tree size index must be >= 1")
    if n > TREE_CAP:
        raise DepthTooLarge(n, TREE_CAP)
    return Fraction(comb(2 * n, n), (2 * n - 1) * 4**n)


@dataclass(frozen=True, eq=False)
class SizeHistogram:
    """Observed vs predicted counts of primes with basin size 2n+1.

    bins maps n to (observed, predicted) for 1 <= n <= max_n; larger sizes
    are pooled in the overflow pair.  Only odd primes are counted (p = 2 is
    the lone even basin).  predicted = model probability times the number of
    odd primes below the limit, kept as an exact rational.
    """

    prime_limit: int
    max_n: int
    bins: dict
    overflow_observed: int
    overflow_predicted: Fraction
    odd_prime_count: int


def size_histogram(prime_limit: int, max_n: int = 20) -> SizeHistogram:
    if prime_limit < 5:
        raise BoundTooSmall(prime_limit, 5)
    ps, sizes = basin_sizes_up_to(prime_limit)
    odd_sizes = [int(s) for p, s in zip(ps, sizes) if p != 2]
    total = len(odd_sizes)
    counts = {}
    overflow = 0
    for s in odd_sizes:
        n = (s - 1) // 2
        if n <= max_n:
            counts[n] = counts.get(n, 0) + 1
        else:
            overflow += 1
    bins = {}
    mass = Fraction(0)
    for n in range(1, max_n + 1):
        prob = tree_size_probability(n)
        mass += prob
        bins[n] = (counts.get(n, 0), prob * total)
    return SizeHistogram(
        prime_limit=prime_limit,
        max_n=max_n,
        bins=bins,
        overflow_observed=overflow,
        overflow_predicted=(1 - mass) * total,
        odd_prime_count=total,
    )


@dataclass(frozen=True)
class BandReport:
    """Primes whose relative basin size lands in [a, b], endpoints inclusive."""

    prime_limit: int
    a: Fraction
    b: Fraction
    observed: int
    primes: tuple
    shape: float  # sqrt(X)/log X * (1/sqrt a - 1/sqrt b), constant left free
    fitted_const: float  # observed / shape, reported but never asserted


def band_count(prime_limit: int, a, b) -> BandReport:
    a = Fraction(a)
    b = Fraction(b)
    if not (0 < a <= b < 1):
        raise BadBand(a, b)
    ps, sizes = basin_sizes_up_to(prime_limit)
    hits = [int(p) for p, s in zip(ps, sizes) if a <= Fraction(int(s), int(p)) <= b]
    x = float(prime_limit)
    shape = math.sqrt(x) / math.log(x) * (1 / math.sqrt(a) - 1 / math.sqrt(b))
    fitted = len(hits) / shape if shape else 0.0
    return BandReport(
        prime_limit=prime_limit,
        a=a,
        b=b,
        observed=len(hits),
        primes=tuple(hits),
        shape=shape,
        fitted_const=fitted,
    )


def fpf_fraction(n: int) -> Fraction:
    """Fraction of permutation-model samples fixing at least one necklace.

    Exact double sum over k <= k_n with derangement-style inner weights.
    """
    if n < 1:
        raise Sqm1Error("n must be >= 1")
    if n > FPF_CAP:
        raise DepthTooLarge(n, FPF_CAP)
    kn = necklace_count(n)
    total = Fraction(0)
    ratio = Fraction(n - 1, n)
    for k in range(kn + 1):
        inner = sum(Fraction((-1) ** j, math.factorial(j)) for j in range(kn - k + 1))
        total += inner * ratio**k / math.factorial(k)
    return total


@dataclass(frozen=True)
class FullBasinPrediction:
    """Expected number of full-basin primes up to x under the drift model."""

    x: int
    base_constant: float  # e^(3/2 - gamma) / 2
    refined_constant: float  # doubled by the early-cycle refinement
    prime_harmonic_sum: float
    base_expected: float
    refined_expected: float


def full_basin_prediction(x: int) -> FullBasinPrediction:
    if x < 3:
        raise BoundTooSmall(x, 3)
    c = math.exp(1.5 - np.euler_gamma) / 2
    hsum = float(np.sum(1.0 / sieve(x)))
    return FullBasinPrediction(
        x=x,
        base_constant=c,
        refined_constant=2 * c,
        prime_harmonic_sum=hsum,
        base_expected=c * hsum,
        refined_expected=2 * c * hsum,
    )


def delta_estimate(m: int, prime_limit: int, threads: int = 1) -> Fraction:
    """Fraction of primes p <= prime_limit where iterating m times can land on 1.

    Exhaustive evaluation of the m-th image over F_p per prime, cost m*p.
    """
    if m < 0:
        raise Sqm1Error("depth must be >= 0")
    if m > DELTA_DEPTH_CAP:
        raise DepthTooLarge(m, DELTA_DEPTH_CAP)
    if prime_limit < 2:
        raise BoundTooSmall(prime_limit, 2)
    if prime_limit > DELTA_PRIME_CAP:
        raise Sqm1Error(f"prime_limit {prime_limit} exceeds the cap {DELTA_PRIME_CAP}")
    ps = [int(p) for p in sieve(prime_limit)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            flags = list(pool.map(lambda p: _kernels.has_root_at_depth(p, m), ps))
    else:
        flags = [_kernels.has_root_at_depth(p, m) for p in ps]
    return Fraction(sum(bool(f) for f in flags), len(ps))
