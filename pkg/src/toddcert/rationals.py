"""Exact rational helpers shared across the package.

All arithmetic in this package is done with ``fractions.Fraction``, which
already guarantees canonical form (positive denominator, reduced).  This
module adds the two pieces the standard library does not provide: the
generalized binomial coefficient at rational arguments, and a string form
for rationals that round-trips exactly ("num/den").
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial


def binomial(x: Fraction | int, n: int) -> Fraction:
    """Generalized binomial coefficient binom(x, n) = x(x-1)...(x-n+1)/n!.

    ``x`` may be any rational; ``n`` must be a non-negative integer.
    """
    if n < 0:
        raise ValueError(f"binomial: lower index must be >= 0, got {n}")
    x = Fraction(x)
    num = Fraction(1)
    for j in range(n):
        num *= x - j
    return num / factorial(n)


def rational_str(x: Fraction | int) -> str:
    """Serialize a rational as "num/den" (den always present, always positive)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    """Parse "num/den" or a plain integer string back into a Fraction."""
    s = s.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(s))
