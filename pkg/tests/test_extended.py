"""Long-running reproduction targets, deselected by default.

Run with `pytest -m extended`.  The largest case needs roughly 6 GB of free
memory for the 2^29 universe and its first split.
"""

import pytest

from sqm1.separation import separate, universe_size

pytestmark = pytest.mark.extended


def _mem_available_bytes() -> int:
    with open("/proc/meminfo") as fh:
        for line in fh:
            if line.startswith("MemAvailable:"):
                return int(line.split()[1]) * 1024
    return 0


def test_minimal_prime_ten_million():
    report = separate(10_000_000)
    assert report.separated
    assert report.max_prime_used == 4793


def test_minimal_prime_hundred_million():
    report = separate(100_000_000)
    assert report.separated
    assert report.max_prime_used == 5791


def test_small_primes_separate_up_to_2_pow_29():
    if _mem_available_bytes() < 6 * 1024**3:
        pytest.skip("needs about 6 GB of free memory")
    report = separate(2**29, "ascending", "dfs", 10_000)
    assert report.separated
    assert report.max_prime_used < 10_000
    assert universe_size(2**29) == 536_847_742
