"""Exact integer-polynomial algebra around f = x^2 - 1.

Iterates f^m, irreducibility certificates for f^m - 1, the cycle polynomials
dividing f^n - x, necklace counts, and discriminants.  Everything stays in Z;
a division that was supposed to come out even raising NonExactDivision means
a bug, not bad input.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    CertificateFailed,
    DepthTooLarge,
    NonExactDivision,
    Sqm1Error,
    ZeroPolynomial,
)

ITERATE_CAP = 12  # deg f^m = 2^m
PHI_CAP = 8
NECKLACE_CAP = 60


class BigPoly:
    """Immutable polynomial over Z, coefficients stored constant term first."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients=()):
        coeffs = tuple(int(c) for c in coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coefficients", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("BigPoly is immutable")

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def degree(self) -> int:
        """Index of the leading coefficient; -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    @property
    def leading(self) -> int:
        if self.is_zero:
            raise ZeroPolynomial("the zero polynomial has no leading coefficient")
        return self.coefficients[-1]

    def __eq__(self, other):
        if isinstance(other, int):
            other = BigPoly((other,))
        if not isinstance(other, BigPoly):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    @staticmethod
    def _coerce(value):
        if isinstance(value, BigPoly):
            return value
        if isinstance(value, int):
            return BigPoly((value,))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        return BigPoly(tuple(x + y for x, y in zip(a, b)) + a[len(b):])

    __radd__ = __add__

    def __neg__(self):
        return BigPoly(tuple(-c for c in self.coefficients))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return BigPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return BigPoly(out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        """Division where every quotient step must divide exactly in Z."""
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero:
            raise ZeroPolynomial("division by the zero polynomial")
        rem = list(self.coefficients)
        lead = other.coefficients[-1]
        dq = len(rem) - len(other.coefficients)
        if dq < 0:
            return BigPoly(), self
        quot = [0] * (dq + 1)
        for k in range(dq, -1, -1):
            top = rem[k + other.degree]
            if top == 0:
                continue
            q, r = divmod(top, lead)
            if r:
                raise NonExactDivision(
                    f"leading term {top} not divisible by {lead} during division"
                )
            quot[k] = q
            for j, c in enumerate(other.coefficients):
                rem[k + j] -= q * c
        return BigPoly(quot), BigPoly(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "BigPoly":
        q, r = divmod(self, other)
        if not r.is_zero:
            raise NonExactDivision(f"{self} is not a multiple of {other}")
        return q

    def compose(self, inner) -> "BigPoly":
        """self(inner(x)), by Horner's scheme in poly arithmetic."""
        inner = self._coerce(inner)
        acc = BigPoly()
        for c in reversed(self.coefficients):
            acc = acc * inner + c
        return acc

    def derivative(self) -> "BigPoly":
        return BigPoly(tuple(i * c for i, c in enumerate(self.coefficients))[1:])

    def __call__(self, value: int) -> int:
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * value + c
        return acc

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coefficients[i]
            if c == 0:
                continue
            if i == 0:
                term = str(abs(c))
            else:
                x = "x" if i == 1 else f"x^{i}"
                term = x if abs(c) == 1 else f"{abs(c)}{x}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    def __repr__(self):
        return f"BigPoly({self.coefficients!r})"


X = BigPoly((0, 1))
F = BigPoly((-1, 0, 1))  # x^2 - 1


@dataclass(frozen=True)
class EisensteinCertificate:
    """Witness that an iterate-derived polynomial satisfies Eisenstein at 2.

    variant "direct" certifies f^m - 1, "shifted" certifies f^m(x-1) - 1;
    either way irreducibility over Z follows.
    """

    m: int
    variant: str
    poly: BigPoly
    verified: bool


def iterate_poly(m: int) -> BigPoly:
    """Coefficients of the m-th iterate; the 0-th iterate is x itself."""
    if m < 0:
        raise Sqm1Error("iterate depth must be >= 0")
    if m > ITERATE_CAP:
        raise DepthTooLarge(m, ITERATE_CAP)
    acc = X
    for _ in range(m):
        acc = acc * acc - 1
    return acc


def _eisenstein_at_2(poly: BigPoly) -> bool:
    coeffs = poly.coefficients
    if coeffs[-1] % 2 == 0:
        return False
    if any(c % 2 for c in coeffs[:-1]):
        return False
    return coeffs[0] % 4 == 2


def eisenstein_certificate(m: int) -> EisensteinCertificate:
    """Pick whichever of f^m - 1 and f^m(x-1) - 1 is Eisenstein at 2.

    The constant term of f^m is -1 for odd m and 0 for even m, so the direct
    variant works exactly when m is odd; the shift repairs the even case.
    """
    if m < 1:
        raise Sqm1Error("iterate depth must be >= 1")
    fm = iterate_poly(m)
    direct = fm - 1
    if _eisenstein_at_2(direct):
        return EisensteinCertificate(m=m, variant="direct", poly=direct, verified=True)
    shifted = fm.compose(X - 1) - 1
    if _eisenstein_at_2(shifted):
        return EisensteinCertificate(m=m, variant="shifted", poly=shifted, verified=True)
    raise CertificateFailed(f"neither variant certifies at depth {m}")


def _divisors(n: int):
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def _phi(n: int) -> BigPoly:
    target = iterate_poly(n) - X
    acc = BigPoly((1,))
    for d in _divisors(n)[:-1]:
        acc = acc * _phi(d)
    return target.exact_div(acc)


def phi(n: int) -> BigPoly:
    """Cycle polynomial of period n: f^n - x = prod of phi(d) over d | n."""
    if n < 1:
        raise Sqm1Error("period must be >= 1")
    if n > PHI_CAP:
        raise DepthTooLarge(n, PHI_CAP)
    return _phi(n)


def _mobius(m: int) -> int:
    res = 1
    d = 2
    while d * d <= m:
        if m % d == 0:
            m //= d
            if m % d == 0:
                return 0
            res = -res
        d += 1
    if m > 1:
        res = -res
    return res


def necklace_count(n: int) -> int:
    """deg phi(n) / n, via the Moebius sum over binary necklaces."""
    if n < 1:
        raise Sqm1Error("period must be >= 1")
    if n > NECKLACE_CAP:
        raise DepthTooLarge(n, NECKLACE_CAP)
    total = sum(_mobius(n // d) * 2**d for d in _divisors(n))
    q, r = divmod(total, n)
    if r:
        raise Sqm1Error(f"necklace sum {total} not divisible by {n}")
    return q


def _sylvester(g: BigPoly, h: BigPoly):
    d, e = g.degree, h.degree
    n = d + e
    gd = tuple(reversed(g.coefficients))
    hd = tuple(reversed(h.coefficients))
    rows = []
    for i in range(e):
        rows.append([0] * i + list(gd) + [0] * (n - i - d - 1))
    for i in range(d):
        rows.append([0] * i + list(hd) + [0] * (n - i - e - 1))
    return rows


def _det_bareiss(rows) -> int:
    # fraction-free elimination: every interior division is exact
    n = len(rows)
    if n == 0:
        return 1
    m = [row[:] for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def resultant(g: BigPoly, h: BigPoly) -> int:
    if g.is_zero or h.is_zero:
        raise ZeroPolynomial("resultant of the zero polynomial")
    return _det_bareiss(_sylvester(g, h))


def discriminant(g: BigPoly) -> int:
    """disc g = (-1)^(d(d-1)/2) Res(g, g') / lc(g), computed exactly."""
    if g.is_zero:
        raise ZeroPolynomial("discriminant of the zero polynomial")
    d = g.degree
    if d < 1:
        raise Sqm1Error("discriminant requires degree >= 1")
    num = (-1) ** (d * (d - 1) // 2) * resultant(g, g.derivative())
    q, r = divmod(num, g.leading)
    if r:
        raise NonExactDivision("resultant not divisible by the leading coefficient")
    return q
