"""Hot per-prime loops, JIT-compiled.

Each kernel walks the functional graph of x -> x^2 - 1 on Z/p with plain
64-bit arithmetic, so p must stay below isqrt(2^63) for the squares not to
overflow; the public wrappers enforce that.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def basin_status(p):
    """Forward traversal with memoized reaches-zero flags.

    Returns a uint8 array over the residues: 1 if the forward orbit reaches 0,
    2 if it does not.  The two-cycle {0, p-1} is seeded as reaching; every
    walk then either runs into a resolved residue or closes a new cycle, which
    cannot contain 0 and condemns the whole path.  Amortized O(p): each
    residue is pushed at most once.
    """
    status = np.zeros(p, dtype=np.uint8)
    status[0] = 1
    status[p - 1] = 1
    stack = np.empty(p, dtype=np.int64)
    for x0 in range(p):
        if status[x0] != 0:
            continue
        x = x0
        top = 0
        while status[x] == 0:
            status[x] = 3  # on the current path
            stack[top] = x
            top += 1
            x = (x * x - 1) % p
        verdict = np.uint8(1) if status[x] == 1 else np.uint8(2)
        for i in range(top):
            status[stack[i]] = verdict
    return status


@njit(cache=True, nogil=True)
def basin_size_only(p):
    """Count of residues whose forward orbit reaches 0 (no flag array kept)."""
    status = basin_status(p)
    n = 0
    for i in range(p):
        if status[i] == 1:
            n += 1
    return n


@njit(cache=True, nogil=True)
def component_labels(p):
    """Label every residue with its connected component, iteratively.

    Returns (labels, cycle_lengths) where labels[x] is a component index and
    cycle_lengths[c] is the length of the unique cycle inside component c.
    Same path-stacking idea as basin_status; when a walk closes a fresh cycle
    the cycle is measured on the spot.
    """
    comp = np.full(p, -1, dtype=np.int64)
    cyc_len = np.zeros(p, dtype=np.int64)
    stack = np.empty(p, dtype=np.int64)
    n_comp = 0
    for x0 in range(p):
        if comp[x0] >= 0:
            continue
        x = x0
        top = 0
        while comp[x] == -1:
            comp[x] = -2  # on the current path
            stack[top] = x
            top += 1
            x = (x * x - 1) % p
        if comp[x] == -2:
            label = n_comp
            n_comp += 1
            length = 1
            y = (x * x - 1) % p
            while y != x:
                length += 1
                y = (y * y - 1) % p
            cyc_len[label] = length
        else:
            label = comp[x]
        for i in range(top):
            comp[stack[i]] = label
    return comp, cyc_len[:n_comp]


@njit(cache=True, nogil=True)
def reaches_zero(p, x0):
    """True iff the forward orbit of the single residue x0 hits 0.

    If 0 appears in an orbit the orbit is trapped in the two-cycle {0, p-1},
    so it suffices to locate the eventual cycle (Floyd) and scan it for 0.
    O(tail + cycle) time, O(1) memory; used for membership queries where a
    whole basin table would be waste.
    """
    if x0 == 0:
        return True
    slow = x0
    fast = (x0 * x0 - 1) % p
    while slow != fast:
        slow = (slow * slow - 1) % p
        fast = (fast * fast - 1) % p
        fast = (fast * fast - 1) % p
    if slow == 0:
        return True
    y = (slow * slow - 1) % p
    while y != slow:
        if y == 0:
            return True
        y = (y * y - 1) % p
    return False


@njit(cache=True, nogil=True)
def has_root_at_depth(p, m):
    """True if the m-th forward image of some residue equals 1 mod p."""
    for x in range(p):
        y = x
        for _ in range(m):
            y = (y * y - 1) % p
        if y == 1:
            return True
    return False
