"""Exact arithmetic on Q/Z and canonical Bezout coefficients.

Everything here works on Python ints, so nothing overflows.  Residues are
always kept in the half-open interval [0, 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True, order=True)
class ResidueClass:
    """An element of Q/Z stored as a reduced fraction ``num/den`` in [0, 1)."""

    num: int
    den: int

    def __post_init__(self):
        if self.den <= 0 or not 0 <= self.num < self.den or math.gcd(self.num, self.den) != 1:
            raise ValueError(f"non-canonical residue {self.num}/{self.den}")

    @classmethod
    def from_fraction(cls, x: Fraction | int) -> "ResidueClass":
        x = Fraction(x)
        return qz_normalize(x.numerator, x.denominator)

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def scaled(self, n: int) -> int:
        """Return ``n * self`` as an integer; ``n`` must be a multiple of ``den``."""
        if n % self.den:
            raise ValueError(f"{self} is not in (1/{n})Z/Z")
        return self.num * (n // self.den)

    def __add__(self, other: "ResidueClass") -> "ResidueClass":
        return qz_arith(self, other, 1)

    def __sub__(self, other: "ResidueClass") -> "ResidueClass":
        return qz_arith(self, other, -1)

    def __neg__(self) -> "ResidueClass":
        return qz_arith(ZERO, self, -1)

    def __str__(self):
        return f"{self.num}/{self.den}" if self.num else "0"


def qz_normalize(num: int, den: int) -> ResidueClass:
    """Canonical representative of ``num/den`` modulo 1."""
    if den == 0:
        raise ZeroDivisionError("degenerate fraction")
    if den < 0:
        num, den = -num, -den
    g = math.gcd(num, den)
    num, den = num // g, den // g
    return ResidueClass(num % den, den)


ZERO = ResidueClass(0, 1)


def qz_arith(a: ResidueClass, b: ResidueClass, k: int = 1) -> ResidueClass:
    """Return ``a + k*b`` modulo 1."""
    den = a.den * b.den // math.gcd(a.den, b.den)
    return qz_normalize(a.num * (den // a.den) + k * b.num * (den // b.den), den)


@dataclass(frozen=True)
class BezoutPair:
    g: int
    s: int
    t: int


def ext_gcd(lam: int, mu: int) -> BezoutPair:
    """Bezout coefficients ``s*lam + t*mu = g`` with a canonical choice.

    Among all solutions the one with the smallest ``|s|`` is returned, ties
    going to ``s >= 0``.  When ``mu == 0`` the coefficient ``s`` is forced and
    ``t = 0`` is used.
    """
    if lam == 0 and mu == 0:
        raise ValueError("ext_gcd(0, 0) is undefined")
    r0, r1, s0, s1, t0, t1 = lam, mu, 1, 0, 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0 < 0:
        r0, s0, t0 = -r0, -s0, -t0
    g = r0
    if mu == 0:
        return BezoutPair(g, lam // g, 0)
    step = abs(mu) // g
    s = s0 % step
    if 2 * s > step:
        s -= step
    t = (g - s * lam) // mu
    return BezoutPair(g, s, t)
