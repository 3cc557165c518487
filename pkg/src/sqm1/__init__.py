"""Experimentation toolkit for the arithmetic dynamics of x^2 - 1.

Core objects: basins of 0 over prime fields, functional-graph censuses,
partition-refinement separation, exact orbit arithmetic, iterate/cycle
polynomial algebra, and the heuristic size models.
"""

from .dynamics import (
    BasinTable,
    GraphCensus,
    PrimeRecord,
    basin_sizes_up_to,
    compute_basin,
    full_basin_primes,
    functional_census,
    is_member,
    scan_primes,
)
from .errors import (
    BadBand,
    BadN,
    BoundTooSmall,
    CertificateFailed,
    DepthTooLarge,
    DuplicatePrime,
    NonExactDivision,
    NotPrime,
    Sqm1Error,
    ZeroPolynomial,
)
from .heuristics import (
    BandReport,
    FullBasinPrediction,
    SizeHistogram,
    band_count,
    delta_estimate,
    fpf_fraction,
    full_basin_prediction,
    size_histogram,
    tree_size_probability,
)
from .orbits import (
    GcdExperimentReport,
    OrbitRecord,
    gcd_experiment,
    orbit_terms,
    prime_set_truncated,
    restricted_set,
    valuation_profile,
)
from .polys import (
    BigPoly,
    EisensteinCertificate,
    F,
    X,
    discriminant,
    eisenstein_certificate,
    iterate_poly,
    necklace_count,
    phi,
    resultant,
)
from .primes import count_primes, is_prime, sieve
from .separation import (
    PartitionState,
    SeparationReport,
    balance_order,
    initial_universe,
    minimal_separating_prime,
    refine,
    separate,
    universe_size,
)

__version__ = "0.1.0"
