"""Basins, functional-graph censuses, and bulk prime scans for x -> x^2 - 1.

Everything here is pure: tables are immutable after construction and safe to
share across threads.  The JIT kernels release the GIL, so a thread pool gives
real parallelism on bulk scans while output order stays deterministic.
"""

from __future__ import annotations

import os
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

import numpy as np

from . import _kernels
from .errors import Sqm1Error
from .primes import check_prime, sieve

# The kernels square a residue in plain int64, so (p-1)^2 must stay below 2^63.
KERNEL_P_MAX = 3_037_000_499


def _check_modulus(p: int) -> None:
    check_prime(p)
    if p > KERNEL_P_MAX:
        raise Sqm1Error(f"modulus {p} exceeds the 64-bit kernel bound {KERNEL_P_MAX}")


def _balance(size: int, p: int) -> Fraction:
    return Fraction(abs(2 * size - p), 2 * p)


@dataclass(frozen=True, eq=False)
class BasinTable:
    """The subset of F_p whose forward orbit under x^2 - 1 reaches 0."""

    p: int
    members: np.ndarray  # bool, indexed by residue, read-only
    size: int

    @property
    def balance(self) -> Fraction:
        """Exact distance of the relative basin size from one half."""
        return _balance(self.size, self.p)

    @property
    def is_full(self) -> bool:
        return self.size == self.p

    def __contains__(self, n: int) -> bool:
        return bool(self.members[n % self.p])


@dataclass(frozen=True)
class GraphCensus:
    """Component and cycle decomposition of the map x -> x^2 - 1 on F_p."""

    p: int
    n_components: int
    cycle_lengths: tuple  # ascending, one entry per component
    component_sizes: tuple  # ascending
    basin_size: int


@dataclass(frozen=True)
class PrimeRecord:
    """One row of a bulk scan."""

    p: int
    basin_size: int
    balance: Fraction
    is_full: bool
    census: Optional[GraphCensus] = None


def compute_basin(p: int) -> BasinTable:
    """Residues of F_p that reach 0 under iteration of x^2 - 1.

    Forward traversal with memoized reaches-zero flags, amortized O(p).
    """
    _check_modulus(p)
    members = _kernels.basin_status(p) == 1
    members.flags.writeable = False
    return BasinTable(p=p, members=members, size=int(members.sum()))


def functional_census(p: int) -> GraphCensus:
    _check_modulus(p)
    comp, cyc = _kernels.component_labels(p)
    sizes = np.bincount(comp, minlength=len(cyc))
    return GraphCensus(
        p=p,
        n_components=len(cyc),
        cycle_lengths=tuple(sorted(int(c) for c in cyc)),
        component_sizes=tuple(sorted(int(s) for s in sizes)),
        basin_size=int(sizes[comp[0]]),
    )


def is_member(n: int, basin: BasinTable) -> bool:
    """True iff n mod p lies in the basin, i.e. p divides some orbit term of n."""
    return bool(basin.members[n % basin.p])


def _record(p: int, with_census: bool) -> PrimeRecord:
    if with_census:
        census = functional_census(p)
        size = census.basin_size
    else:
        census = None
        size = int(_kernels.basin_size_only(p))
    return PrimeRecord(
        p=p, basin_size=size, balance=_balance(size, p), is_full=size == p, census=census
    )


def scan_primes(limit: int, with_census: bool = False, threads: int = 1) -> Iterator[PrimeRecord]:
    """Yield one record per prime p <= limit, in ascending order.

    limit < 2 yields nothing.  With threads > 1 the per-prime work runs on a
    pool but records are still emitted ascending, so output is byte-for-byte
    identical to a sequential scan.
    """
    ps = [int(q) for q in sieve(limit)] if limit >= 2 else []
    if threads <= 1:
        for p in ps:
            yield _record(p, with_census)
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        yield from pool.map(lambda p: _record(p, with_census), ps)


def full_basin_primes(limit: int) -> list:
    """Ascending primes p <= limit whose basin is all of F_p."""
    ps, sizes = basin_sizes_up_to(limit)
    return [int(p) for p, s in zip(ps, sizes) if s == p]


# Bulk basin sizes are the expensive shared input of several reports, so one
# monotone cache serves every consumer.  Guarded: concurrent callers must not
# duplicate a multi-second scan.
_cache_lock = threading.Lock()
_cache_limit = 0
_cache_ps = np.empty(0, dtype=np.int64)
_cache_sizes = np.empty(0, dtype=np.int64)


def basin_sizes_up_to(limit: int, threads: Optional[int] = None):
    """Basin size of every prime <= limit, as parallel (primes, sizes) arrays.

    Cached for the largest limit seen; repeated calls at or below it are free.
    """
    global _cache_limit, _cache_ps, _cache_sizes
    with _cache_lock:
        if limit > _cache_limit:
            ps = sieve(limit)
            start = int(np.searchsorted(ps, _cache_limit, side="right"))
            new_ps = [int(q) for q in ps[start:]]
            if threads is None:
                threads = min(8, os.cpu_count() or 1)
            if threads > 1 and len(new_ps) > 64:
                with ThreadPoolExecutor(max_workers=threads) as pool:
                    new_sizes = list(pool.map(_kernels.basin_size_only, new_ps))
            else:
                new_sizes = [_kernels.basin_size_only(p) for p in new_ps]
            _cache_ps = np.concatenate([_cache_ps, np.asarray(new_ps, dtype=np.int64)])
            _cache_sizes = np.concatenate([_cache_sizes, np.asarray(new_sizes, dtype=np.int64)])
            _cache_limit = limit
        hi = int(np.searchsorted(_cache_ps, limit, side="right"))
        return _cache_ps[:hi].copy(), _cache_sizes[:hi].copy()
