"""Brute-force validation of the two arithmetic lemmas behind the bounds.

Integer lemma.  For rational lambda = p/q in lowest terms with q >= 2:
(1) for n >= 2, (n+1) * binom(lambda + n, n) is never an integer;
(2) for n >= 1, binom(lambda + n + 1, n) is never an integer.
The searches below enumerate all reduced non-integral rationals inside a
box and return the violations found (expected: none, except the documented
n = 1 failure of part (1), e.g. 2 * binom(3/2, 1) = 3).

Positive-polynomial lemma.  For non-negative q_alpha^s, the homogeneous
polynomial

    f(x_1..x_m) = (-x_1 + sum_alpha l_alpha) * prod_alpha (x_1 + l_alpha) + x_1^{K+1},
    l_alpha = sum_{s>=2} q_alpha^s x_s,

has only non-negative coefficients.  Both the brute expansion and the
closed-form slice formula from the proof (the coefficient of x_1^{K-k} is
sum over alpha_1 < ... < alpha_k of (sum_{alpha <= alpha_k} l_alpha) *
prod_j l_{alpha_j}) are computed, so each validates the other.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd

from .exactpoly import MultiPoly, TruncatedRing
from .rationals import binomial

CASE_SCALED = "case1"   # (n+1) * binom(lambda + n, n)
CASE_SHIFTED = "case2"  # binom(lambda + n + 1, n)


@dataclass(frozen=True)
class SearchBounds:
    """Search box: denominators 2..qmax, numerators |p| <= pmax, gcd(p, q) = 1."""

    n: int
    qmax: int = 50
    pmax: int = 500

    def __post_init__(self) -> None:
        if self.qmax < 1 or self.pmax < 1:
            raise ValueError("qmax and pmax must be >= 1")


def _scaled_is_integer(p: int, q: int, n: int) -> bool:
    """(n+1) * binom(p/q + n, n) in Z, by pure integer arithmetic:
    binom(lambda + n, n) = prod_{j=1}^{n} (p + j q) / (q^n n!)."""
    num = n + 1
    for j in range(1, n + 1):
        num *= p + j * q
    return num % (q**n * factorial(n)) == 0


def _shifted_is_integer(p: int, q: int, n: int) -> bool:
    """binom(p/q + n + 1, n) in Z: binom = prod_{j=2}^{n+1} (p + j q) / (q^n n!)."""
    num = 1
    for j in range(2, n + 2):
        num *= p + j * q
    return num % (q**n * factorial(n)) == 0


def _search(bounds: SearchBounds, predicate) -> list[Fraction]:
    found = []
    for q in range(2, bounds.qmax + 1):
        for p in range(-bounds.pmax, bounds.pmax + 1):
            if gcd(p, q) != 1:
                continue
            if predicate(p, q, bounds.n):
                found.append(Fraction(p, q))
    return sorted(found)

def integer_lemma_case1(bounds: SearchBounds) -> list[Fraction]:
    """Non-integral lambda with (n+1) * binom(lambda + n, n) integral.
    Empty for n >= 2; non-empty at n = 1 (the hypothesis is sharp)."""
    if bounds.n < 1:
        raise ValueError("n must be >= 1")
    return _search(bounds, _scaled_is_integer)


def integer_lemma_case2(bounds: SearchBounds) -> list[Fraction]:
    """Non-integral lambda with binom(lambda + n + 1, n) integral.  Empty for n >= 1."""
    if bounds.n < 1:
        raise ValueError("n must be >= 1")
    return _search(bounds, _shifted_is_integer)


def integrality_decision(value: Fraction | int, n: int, family: str) -> bool:
    """Whether the lemma's binomial expression is an integer at this value.

    Used to justify that q/2, (n+1)lambda/4 and lambda are positive integers
    once the corresponding chi value is (family "case1" for the scaled
    binomial, "case2" for the shifted one).
    """
    value = Fraction(value)
    if family == CASE_SCALED:
        result = (n + 1) * binomial(value + n, n)
    elif family == CASE_SHIFTED:
        result = binomial(value + n + 1, n)
    else:
        raise ValueError(f"unknown family {family!r}")
    return result.denominator == 1


@dataclass(frozen=True)
class PositivePolyResult:
    """Expansion of f plus the closed-form slices, for cross-checking."""

    poly: MultiPoly
    verdict: bool  # every coefficient of f is >= 0
    closed_form_slices: dict[int, MultiPoly]  # x_1-power -> polynomial in x_2..x_m

    @property
    def closed_form_agrees(self) -> bool:
        ring = self.poly.ring
        m = ring.var_count
        degree = max((e[0] for e, _ in self.poly.items()), default=0)
        for power in range(degree + 1):
            slice_terms = {
                (0,) + e[1:]: c for e, c in self.poly.items() if e[0] == power
            }
            expected = self.closed_form_slices.get(power, ring.zero())
            if ring.poly(slice_terms) != expected:
                return False
        # closed-form slices with no counterpart in the expansion must be zero
        for power, value in self.closed_form_slices.items():
            if not value.is_zero() and not any(
                    e[0] == power for e, _ in self.poly.items()):
                return False
        return True


def positive_poly_expand(qtable) -> PositivePolyResult:
    """Expand f for a K x (m-1) table of non-negative rational q_alpha^s.

    Returns the full expansion over x_1..x_m, the non-negativity verdict,
    and the per-x_1-power closed forms rebuilt independently from the
    combinatorial slice formula.
    """
    rows = [tuple(Fraction(q) for q in row) for row in qtable]
    if not rows or not rows[0]:
        raise ValueError("need K >= 1 rows and m - 1 >= 1 columns")
    K = len(rows)
    m = len(rows[0]) + 1
    if any(len(row) != m - 1 for row in rows):
        raise ValueError("ragged q table")
    if any(q < 0 for row in rows for q in row):
        raise ValueError("q entries must be non-negative")

    ring = TruncatedRing((K + 1,) * m)
    x1 = ring.var(0)

    def linear_form(row) -> MultiPoly:
        return ring.poly({
            tuple(1 if i == s + 1 else 0 for i in range(m)): q
            for s, q in enumerate(row) if q
        })

    forms = [linear_form(row) for row in rows]
    total = ring.zero()
    for form in forms:
        total = total + form
    f = (total - x1)
    for form in forms:
        f = f * (x1 + form)
    f = f + x1 ** (K + 1)

    verdict = all(c >= 0 for _, c in f.items())

    slices: dict[int, MultiPoly] = {K + 1: ring.zero(), K: ring.zero()}
    prefix = [ring.zero()]
    for form in forms:
        prefix.append(prefix[-1] + form)
    for k in range(1, K + 1):
        acc = ring.zero()
        for chosen in itertools.combinations(range(K), k):
            product = prefix[chosen[-1] + 1]
            for alpha in chosen:
                product = product * forms[alpha]
            acc = acc + product
        slices[K - k] = acc

    return PositivePolyResult(f, verdict, slices)
