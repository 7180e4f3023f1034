"""Exact Gaussian-rational scalars.

All coefficients in the toolkit live in Q(i): a pair of arbitrary-precision
rationals. Every identity checked by the test suite is an exact equality, so
floats never appear.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


@dataclass(frozen=True)
class GaussianRational:
    """A complex number re + im*i with rational parts."""

    re: Fraction
    im: Fraction = Fraction(0)

    @staticmethod
    def of(x) -> "GaussianRational":
        """Coerce an int, Fraction or GaussianRational."""
        if isinstance(x, GaussianRational):
            return x
        return GaussianRational(_frac(x))

    def __add__(self, other) -> "GaussianRational":
        other = GaussianRational.of(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other) -> "GaussianRational":
        return self + (-GaussianRational.of(other))

    def __rsub__(self, other) -> "GaussianRational":
        return GaussianRational.of(other) + (-self)

    def __mul__(self, other) -> "GaussianRational":
        other = GaussianRational.of(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    @property
    def is_real(self) -> bool:
        return not self.im

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        return f"({self.re},{self.im})"


ZERO = GaussianRational(Fraction(0))
ONE = GaussianRational(Fraction(1))


def scalar(re, im=0) -> GaussianRational:
    """Build a Gaussian rational from int/Fraction parts."""
    return GaussianRational(_frac(re), _frac(im))
