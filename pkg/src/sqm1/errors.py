"""Exception types shared across the toolkit."""


class Sqm1Error(Exception):
    """Base class for all toolkit errors."""


class NotPrime(Sqm1Error):
    def __init__(self, p):
        super().__init__(f"{p} is not a prime number")
        self.p = p


class BoundTooSmall(Sqm1Error):
    def __init__(self, bound, minimum):
        super().__init__(f"bound {bound} is below the minimum {minimum}")
        self.bound = bound
        self.minimum = minimum


class DuplicatePrime(Sqm1Error):
    def __init__(self, p):
        super().__init__(f"prime {p} was already consumed by this partition")
        self.p = p


class BadN(Sqm1Error):
    def __init__(self, n):
        super().__init__(f"starting value must be an integer >= 2, got {n}")
        self.n = n


class DepthTooLarge(Sqm1Error):
    def __init__(self, depth, cap):
        super().__init__(f"depth {depth} exceeds the supported cap {cap}")
        self.depth = depth
        self.cap = cap


class BadBand(Sqm1Error):
    def __init__(self, a, b):
        super().__init__(f"band endpoints must satisfy 0 < a <= b < 1, got ({a}, {b})")


class ZeroPolynomial(Sqm1Error):
    pass


class NonExactDivision(Sqm1Error):
    """Raised when a polynomial division expected to be exact leaves a remainder.

    Seeing this from library code signals an implementation bug, not bad input.
    """


class CertificateFailed(Sqm1Error):
    """Raised when neither irreducibility certificate variant checks out.

    This cannot happen for valid iterate depths; it signals an implementation bug.
    """
