"""Exact rational and quadratic-surd arithmetic used by the bound checks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from numbers import Rational


def binom3(x: Rational | int) -> Fraction:
    """Generalized binomial coefficient C(x, 3) = x(x-1)(x-2)/6; negative for some x < 2."""
    x = Fraction(x)
    return x * (x - 1) * (x - 2) / 6


def potential(n: int, e: int) -> Fraction:
    """(n/2) * C(2e/n, 3), the lower bound on disjoint pairs for average degree 2e/n."""
    if n <= 0:
        raise ValueError("potential needs at least one vertex")
    return Fraction(n, 2) * binom3(Fraction(2 * e, n))


def _sign(value) -> int:
    return (value > 0) - (value < 0)


@dataclass(frozen=True)
class Surd:
    """The real number ``rational + coeff * sqrt(radicand)``.

    Perfect-square radicands are folded into the rational part on
    construction, so a surd with ``coeff == 0`` is exactly rational.
    """

    rational: Fraction
    coeff: Fraction = Fraction(0)
    radicand: int = 0

    def __post_init__(self):
        if self.radicand < 0:
            raise ValueError("negative radicand")
        object.__setattr__(self, "rational", Fraction(self.rational))
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        root = isqrt(self.radicand)
        if root * root == self.radicand:
            object.__setattr__(self, "rational", self.rational + self.coeff * root)
            object.__setattr__(self, "coeff", Fraction(0))
            object.__setattr__(self, "radicand", 0)
        elif self.coeff == 0:
            object.__setattr__(self, "radicand", 0)

    @property
    def is_rational(self) -> bool:
        return self.coeff == 0

    def sign(self) -> int:
        a, b = self.rational, self.coeff
        sa, sb = _sign(a), _sign(b)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        diff = a * a - b * b * self.radicand
        return sa if diff > 0 else sb if diff < 0 else 0

    def _minus(self, other) -> Surd:
        if isinstance(other, Surd):
            if other.coeff and self.coeff and other.radicand != self.radicand:
                raise TypeError("cannot compare surds with different radicands")
            radicand = self.radicand or other.radicand
            return Surd(self.rational - other.rational, self.coeff - other.coeff, radicand)
        if isinstance(other, (int, Rational)):
            return Surd(self.rational - Fraction(other), self.coeff, self.radicand)
        return NotImplemented

    def compare(self, other) -> int:
        return self._minus(other).sign()

    def __eq__(self, other):
        if not isinstance(other, (Surd, int, Rational)):
            return NotImplemented
        return self.compare(other) == 0

    def __hash__(self):
        return hash((self.rational, self.coeff, self.radicand))

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __str__(self):
        if self.is_rational:
            return str(self.rational)
        root = f"{abs(self.coeff)}*sqrt({self.radicand})"
        if self.rational == 0:
            return root if self.coeff > 0 else f"-{root}"
        return f"{self.rational}{'+' if self.coeff > 0 else '-'}{root}"


def as_surd(value) -> Surd:
    return value if isinstance(value, Surd) else Surd(Fraction(value))


def surd_max(a, b) -> Surd:
    a, b = as_surd(a), as_surd(b)
    return a if a >= b else b


def sqrt_edge_bound(n: int, m: int) -> Surd:
    """n(sqrt(1 + 8m) + 3) / 4."""
    return Surd(Fraction(3 * n, 4), Fraction(n, 4), 1 + 8 * m)


def within_sqrt_bound(n: int, e: int, m: int) -> bool:
    """Exact test of e <= n(sqrt(1 + 8m) + 3)/4 for non-negative integers."""
    lhs = 4 * e - 3 * n
    if lhs <= 0:
        return True
    return lhs * lhs <= n * n * (1 + 8 * m)


def conjecture_threshold(m: int) -> Surd:
    """3(sqrt(1 + 8m) - 3) m / (2(m - 1)), defined for m >= 2."""
    if m < 2:
        raise ValueError("threshold is undefined for m < 2")
    scale = Fraction(3 * m, 2 * (m - 1))
    return Surd(-3 * scale, scale, 1 + 8 * m)
