from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import sqm1.dynamics as dynamics
from sqm1.dynamics import (
    KERNEL_P_MAX,
    compute_basin,
    full_basin_primes,
    functional_census,
    is_member,
    scan_primes,
)
from sqm1.errors import NotPrime, Sqm1Error
from sqm1.primes import sieve

from oracles import basin_backward

SMALL_PRIMES = [int(p) for p in sieve(500)]
prime_st = st.sampled_from(SMALL_PRIMES)


def test_basin_smallest_fields():
    b2 = compute_basin(2)
    assert b2.size == 2 and set(np.flatnonzero(b2.members)) == {0, 1}
    b5 = compute_basin(5)
    assert set(np.flatnonzero(b5.members)) == {0, 1, 4}
    assert b5.size == 3
    assert b5.balance == Fraction(1, 10)
    b7 = compute_basin(7)
    assert b7.is_full and b7.size == 7


def test_basin_2713_matches_sorted_list_entry():
    b = compute_basin(2713)
    assert b.size == 1347
    assert format(float(b.balance), "#.3g") == "0.00350"


def test_composite_rejected():
    with pytest.raises(NotPrime):
        compute_basin(9)
    with pytest.raises(NotPrime):
        functional_census(15)


def test_modulus_beyond_kernel_bound_rejected():
    import sympy

    big = int(sympy.nextprime(KERNEL_P_MAX))
    with pytest.raises(Sqm1Error):
        compute_basin(big)


def test_members_are_read_only():
    b = compute_basin(13)
    with pytest.raises(ValueError):
        b.members[0] = False


@given(prime_st)
def test_contains_core_residues(p):
    b = compute_basin(p)
    assert b.members[0] and b.members[p - 1] and b.members[1 % p]


@given(prime_st)
def test_size_parity(p):
    b = compute_basin(p)
    if p > 2:
        assert b.size % 2 == 1


@given(prime_st)
def test_forward_closure_both_ways(p):
    b = compute_basin(p)
    for x in range(p):
        assert b.members[x] == b.members[(x * x - 1) % p]


@given(prime_st)
def test_backward_search_oracle(p):
    b = compute_basin(p)
    assert set(np.flatnonzero(b.members)) == set(basin_backward(p))


def test_census_examples():
    c7 = functional_census(7)
    assert (c7.n_components, c7.cycle_lengths, c7.basin_size) == (1, (2,), 7)
    c13 = functional_census(13)
    assert c13.n_components == 2
    assert c13.cycle_lengths == (2, 3)
    assert c13.component_sizes == (3, 10)
    assert c13.basin_size == 3
    c5 = functional_census(5)
    assert c5.n_components == 2
    assert c5.cycle_lengths == (1, 2)
    c2 = functional_census(2)
    assert c2.n_components == 1 and c2.cycle_lengths == (2,)


@given(prime_st)
def test_census_structure(p):
    c = functional_census(p)
    assert sum(c.component_sizes) == p
    assert len(c.cycle_lengths) == c.n_components == len(c.component_sizes)
    assert 2 in c.cycle_lengths
    assert c.basin_size == compute_basin(p).size


def test_full_iff_single_component():
    for p in SMALL_PRIMES:
        assert (compute_basin(p).size == p) == (functional_census(p).n_components == 1)


def test_is_member_examples():
    assert is_member(10, compute_basin(3))
    assert not is_member(2, compute_basin(5))
    assert is_member(7, compute_basin(7))


def test_scan_small_and_empty():
    recs = list(scan_primes(10))
    assert [r.p for r in recs] == [2, 3, 5, 7]
    assert [r.basin_size for r in recs] == [2, 3, 3, 7]
    assert [r.is_full for r in recs] == [True, True, False, True]
    assert list(scan_primes(1)) == []


def test_scan_census_flag():
    recs = list(scan_primes(30, with_census=True))
    for r in recs:
        assert r.census is not None
        assert r.census.basin_size == r.basin_size


def test_scan_parallel_matches_sequential():
    seq = list(scan_primes(300, with_census=True, threads=1))
    par = list(scan_primes(300, with_census=True, threads=4))
    assert seq == par


def test_full_basin_prefixes():
    assert full_basin_primes(6) == [2, 3]
    assert full_basin_primes(100) == [2, 3, 7, 23]


def test_size_cache_is_monotone_and_consistent():
    ps1, sz1 = dynamics.basin_sizes_up_to(200)
    ps2, sz2 = dynamics.basin_sizes_up_to(500)
    assert list(ps1) == list(ps2[: len(ps1)])
    assert list(sz1) == list(sz2[: len(sz1)])
    for p, s in zip(ps1, sz1):
        assert compute_basin(int(p)).size == int(s)
