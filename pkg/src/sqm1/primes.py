"""Prime utilities: sieve, deterministic primality, ascending prime streams."""

import numpy as np

from .errors import NotPrime

# Witness set making Miller-Rabin deterministic for all n < 3.3 * 10^24,
# which comfortably covers the 64-bit range used by the scanners.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test (valid for 64-bit inputs)."""
    n = int(n)
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_prime(p) -> int:
    """Return p as an int, raising NotPrime if it fails the primality test."""
    p = int(p)
    if not is_prime(p):
        raise NotPrime(p)
    return p


def sieve(limit: int) -> np.ndarray:
    """All primes <= limit as an ascending int64 array."""
    limit = int(limit)
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for q in range(2, int(limit**0.5) + 1):
        if flags[q]:
            flags[q * q :: q] = False
    return np.flatnonzero(flags).astype(np.int64)


def primes_from(start: int, cap: int):
    """Yield primes p with start <= p <= cap in ascending order.

    The sieve is grown by doubling, so callers can consume an unbounded-looking
    stream while the cap acts as a hard safety budget.
    """
    limit = max(64, 2 * start)
    while True:
        limit = min(limit, cap)
        for p in sieve(limit):
            p = int(p)
            if p >= start:
                yield p
        if limit >= cap:
            return
        start = limit + 1
        limit *= 4


def count_primes(limit: int) -> int:
    """pi(limit), the number of primes <= limit."""
    return int(sieve(limit).size)
