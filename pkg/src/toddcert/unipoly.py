"""Dense univariate polynomials over Q as ascending coefficient tuples.

Small helper used for chi-polynomials, Chebyshev polynomials, and the
product expansions in the non-vanishing certificates.  The zero polynomial
is the empty tuple; otherwise the trailing coefficient is nonzero.
"""

from __future__ import annotations

from fractions import Fraction

Coeffs = tuple[Fraction, ...]


def trim(cs) -> Coeffs:
    cs = [Fraction(c) for c in cs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def const(c) -> Coeffs:
    return trim([c])


def add(a, b) -> Coeffs:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def scale(a, c) -> Coeffs:
    return trim([Fraction(c) * x for x in a])


def mul(a, b) -> Coeffs:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim(out)


def coefficient(a, i: int) -> Fraction:
    return a[i] if 0 <= i < len(a) else Fraction(0)


def evaluate(a, x) -> Fraction:
    x = Fraction(x)
    total = Fraction(0)
    for c in reversed(a):
        total = total * x + c
    return total


def compose(outer, inner) -> Coeffs:
    """outer(inner(x)) by Horner's scheme."""
    total: Coeffs = ()
    for c in reversed(outer):
        total = add(mul(total, inner), const(c))
    return total


def linear_binomial(a, b, n: int) -> Coeffs:
    """Coefficients of binom(a*x + b, n) = prod_{j=0}^{n-1} (a*x + b - j) / n!."""
    out: Coeffs = const(1)
    for j in range(n):
        out = mul(out, trim([Fraction(b) - j, Fraction(a)]))
    fact = Fraction(1)
    for j in range(1, n + 1):
        fact *= j
    return scale(out, 1 / fact)
