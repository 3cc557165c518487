"""Partition refinement: which primes tell apart the integers up to X.

The universe is {2 <= n <= X : n + 1 is not a perfect square}.  Each prime p
splits a block of integers by whether n mod p falls in the basin of 0, i.e.
whether p divides some orbit term of n.  Integers left alone in a block are
separated from everything else; the run succeeds when no block of size >= 2
remains.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterator, Optional

import numpy as np

from .dynamics import BasinTable, basin_sizes_up_to, compute_basin
from .errors import BoundTooSmall, DuplicatePrime, Sqm1Error
from .primes import primes_from

# Ascending runs are open-ended in principle; cap them so a bug cannot spin
# forever.  Hitting the cap reports failure, it does not raise.
ASCENDING_CAP = 1_000_000

_CHUNK = 1 << 24  # residues computed chunkwise to bound transient memory


@dataclass(frozen=True, eq=False)
class PartitionState:
    x_max: int
    blocks: tuple  # disjoint sorted int arrays, every block has >= 2 elements
    separated_count: int
    primes_used: tuple  # ascending

    @property
    def universe_size(self) -> int:
        return self.separated_count + sum(len(b) for b in self.blocks)


@dataclass(frozen=True)
class SeparationReport:
    x_max: int
    order: str
    traversal: str
    prime_limit: int
    separated: bool
    max_prime_used: int
    primes_consumed: int
    residual_blocks: int
    residual_sample: tuple = ()


def universe_size(x_max: int) -> int:
    return x_max - 1 - (isqrt(x_max + 1) - 1)


def initial_universe(x_max: int) -> PartitionState:
    """One block holding {2..x_max} minus the values m^2 - 1."""
    if x_max < 2:
        raise BoundTooSmall(x_max, 2)
    dtype = np.int32 if x_max < 2**31 else np.int64
    arr = np.arange(2, x_max + 1, dtype=dtype)
    ms = np.arange(2, isqrt(x_max + 1) + 1, dtype=np.int64)
    arr = np.delete(arr, ms * ms - 3)  # value v sits at index v - 2
    if len(arr) < 2:
        return PartitionState(x_max, (), len(arr), ())
    arr.flags.writeable = False
    return PartitionState(x_max, (arr,), 0, ())


def _member_mask(block: np.ndarray, members: np.ndarray, p: int) -> np.ndarray:
    if block.size <= _CHUNK:
        return members[block % p]
    mask = np.empty(block.size, dtype=bool)
    for i in range(0, block.size, _CHUNK):
        part = block[i : i + _CHUNK]
        mask[i : i + _CHUNK] = members[part % p]
    return mask


def _split(block: np.ndarray, members: np.ndarray, p: int):
    mask = _member_mask(block, members, p)
    inside = block[mask]
    outside = block[~mask]
    inside.flags.writeable = False
    outside.flags.writeable = False
    return inside, outside


def refine(state: PartitionState, basin: BasinTable) -> PartitionState:
    """Split every block by membership of n mod p; drop pieces of size <= 1.

    A full-basin prime cannot split anything and only gets recorded.
    """
    p = basin.p
    if p in state.primes_used:
        raise DuplicatePrime(p)
    used = tuple(sorted(state.primes_used + (p,)))
    if basin.is_full:
        return PartitionState(state.x_max, state.blocks, state.separated_count, used)
    blocks = []
    separated = state.separated_count
    for block in state.blocks:
        for part in _split(block, basin.members, p):
            if len(part) >= 2:
                blocks.append(part)
            else:
                separated += len(part)
    return PartitionState(state.x_max, tuple(blocks), separated, used)


def _normalize(order: str, traversal: str):
    orders = {"ascending": "ascending", "balance": "balance_sorted", "balance_sorted": "balance_sorted"}
    traversals = {
        "bfs": "breadth_first",
        "breadth_first": "breadth_first",
        "dfs": "depth_first",
        "depth_first": "depth_first",
    }
    if order not in orders:
        raise Sqm1Error(f"unknown prime order {order!r}")
    if traversal not in traversals:
        raise Sqm1Error(f"unknown traversal {traversal!r}")
    return orders[order], traversals[traversal]


def balance_order(prime_limit: int):
    """All primes <= prime_limit sorted by |#basin/p - 1/2|, ties by p.

    Full-basin primes have balance exactly 1/2, the maximum, so they land at
    the tail.  Comparisons are exact rationals, never floats.
    """
    if prime_limit < 5:
        raise BoundTooSmall(prime_limit, 5)
    ps, sizes = basin_sizes_up_to(prime_limit)
    pairs = [
        (int(p), Fraction(abs(2 * int(s) - int(p)), 2 * int(p))) for p, s in zip(ps, sizes)
    ]
    pairs.sort(key=lambda t: (t[1], t[0]))
    return pairs


class _Schedule:
    """Lazy prime schedule with a per-run basin cache.

    Depth-first branches revisit the same prefix of primes, so basins are
    computed once and indexed by position.
    """

    def __init__(self, source: Iterator[int], skip_full: bool):
        self._source = source
        self._skip_full = skip_full
        self._basins = []

    def basin_at(self, i: int) -> Optional[BasinTable]:
        while i >= len(self._basins):
            for p in self._source:
                b = compute_basin(p)
                if self._skip_full and b.is_full:
                    continue
                self._basins.append(b)
                break
            else:
                return None
        return self._basins[i]

    def prime_at(self, i: int) -> int:
        return self._basins[i].p

    def max_prime(self, count: int) -> int:
        return max((b.p for b in self._basins[:count]), default=0)


def _make_schedule(order: str, prime_limit: Optional[int], skip_full: bool):
    if order == "ascending":
        cap = ASCENDING_CAP if prime_limit is None else prime_limit
        return _Schedule(primes_from(5, cap), skip_full), cap
    if prime_limit is None:
        raise BoundTooSmall(0, 5)
    ps = [p for p, _ in balance_order(prime_limit)]
    return _Schedule(iter(ps), skip_full), prime_limit


def separate(
    x_max: int,
    order: str = "ascending",
    traversal: str = "breadth_first",
    prime_limit: Optional[int] = None,
    skip_full: bool = False,
) -> SeparationReport:
    """Run refinement to completion or prime exhaustion.

    Breadth-first applies each scheduled prime to every surviving block;
    depth-first finishes one block (and its descendants) before the next,
    which bounds live memory by a single root-to-leaf chain.  Both reach the
    same verdict, and with the ascending order the same max_prime_used, since
    the final partition depends only on the set of primes applied.
    """
    order, traversal = _normalize(order, traversal)
    schedule, effective_limit = _make_schedule(order, prime_limit, skip_full)
    state = initial_universe(x_max)

    if traversal == "breadth_first":
        consumed = 0
        while state.blocks:
            basin = schedule.basin_at(consumed)
            if basin is None:
                break
            state = refine(state, basin)
            consumed += 1
        residual = state.blocks
    else:
        stack = [(b, 0) for b in reversed(state.blocks)]
        separated = state.separated_count
        consumed = 0
        residual = []
        while stack:
            block, i = stack.pop()
            basin = schedule.basin_at(i)
            if basin is None:
                residual.append(block)
                continue
            consumed = max(consumed, i + 1)
            if basin.is_full:
                stack.append((block, i + 1))
                continue
            inside, outside = _split(block, basin.members, basin.p)
            # push outside first so the inside branch is finished first
            for part in (outside, inside):
                if len(part) >= 2:
                    stack.append((part, i + 1))
                else:
                    separated += len(part)

    sample = tuple(tuple(int(v) for v in b[:8]) for b in residual[:3])
    return SeparationReport(
        x_max=x_max,
        order=order,
        traversal=traversal,
        prime_limit=effective_limit,
        separated=not residual,
        max_prime_used=schedule.max_prime(consumed),
        primes_consumed=consumed,
        residual_blocks=len(residual),
        residual_sample=sample,
    )


def minimal_separating_prime(
    x_max: int, traversal: str = "breadth_first", prime_limit: Optional[int] = None
) -> int:
    """Smallest p such that the primes up to p separate the numbers up to x_max."""
    report = separate(x_max, "ascending", traversal, prime_limit)
    if not report.separated:
        raise Sqm1Error(f"primes up to {report.prime_limit} do not separate up to {x_max}")
    return report.max_prime_used
