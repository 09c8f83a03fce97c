"""Euler characteristics and Todd positivity for the known hyperkahler families.

For a hyperkahler variety of complex dimension 2n the Euler characteristic of
a line bundle is a polynomial in a single quadratic invariant of the bundle:
chi(X, L) = P(q(c_1 L)) = P'(lambda(L)), where q is the Beauville-Bogomolov-
Fujiki form and lambda the characteristic value (a fixed positive multiple of
q).  All Todd classes of X are fakely effective exactly when that polynomial
has non-negative coefficients, so the checks here reduce to expanding exact
binomial expressions:

* Hilbert schemes of n points on a K3:  chi = binom(q/2 + n + 1, n)
  (equivalently the Ellingsrud-Goettsche-Lehn form
  binom(chi(S,H) - (r^2-1)(n-1), n));
* generalized Kummer varieties:  chi = (n+1) binom((n+1) lambda / 4 + n, n)
  (Britze-Nieper);
* the six-dimensional O'Grady variety:  chi = 4 binom(lambda + 3, 3).

For an arbitrary deformation type with known Chern numbers, Nieper's
Riemann-Roch formula expresses chi(X, L) as

    int_X exp( -2 sum_k B_{2k}/(4k) ch_{2k}(X) T_{2k}( sqrt(lambda/4 + 1) ) )

with Bernoulli numbers B_{2k} and even Chebyshev polynomials T_{2k}.  The
engine here expands that exponential generically over formal Chern-character
symbols and integrates against a user-supplied table of Chern-monomial
integrals, converted through Newton's identities.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Mapping

from . import unipoly
from .exactpoly import MultiPoly, TruncatedRing, exp_series
from .rationals import binomial

HILB = "hilb"
KUMMER = "kummer"
OG6 = "og6"


@dataclass(frozen=True)
class HKModel:
    """A known hyperkahler deformation type of complex dimension 2n."""

    kind: str
    n: int

    def __post_init__(self) -> None:
        if self.kind == HILB:
            if self.n < 1:
                raise ValueError("Hilbert-scheme model needs n >= 1")
        elif self.kind == KUMMER:
            if self.n < 2:
                raise ValueError(
                    "Kummer model needs n >= 2 (the integrality argument fails at n = 1)")
        elif self.kind == OG6:
            if self.n != 3:
                raise ValueError("the O'Grady 6-dimensional model has n = 3")
        else:
            raise ValueError(f"unknown model kind {self.kind!r}")

    @property
    def dim(self) -> int:
        return 2 * self.n

    @classmethod
    def parse(cls, spec: str) -> "HKModel":
        """Parse "hilb:n", "kummer:n", or "og6"."""
        spec = spec.strip().lower()
        if spec == OG6:
            return cls(OG6, 3)
        match = re.fullmatch(r"(hilb|kummer):(\d+)", spec)
        if not match:
            raise ValueError(f"unknown model spec {spec!r}; expected hilb:n, kummer:n, or og6")
        return cls(match.group(1), int(match.group(2)))


@dataclass(frozen=True)
class ChiPolynomial:
    """chi(X, L) as an exact polynomial in q(c_1 L) or the characteristic value."""

    var: str  # "q", "lambda", or "t"
    coeffs: tuple[Fraction, ...]  # ascending degree, trailing coefficient nonzero

    def __post_init__(self) -> None:
        if not self.coeffs or self.coeffs[-1] == 0:
            raise ValueError("chi polynomial needs a nonzero trailing coefficient")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, value: Fraction | int) -> Fraction:
        return unipoly.evaluate(self.coeffs, value)

    def all_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*{self.var}")
            else:
                parts.append(f"{c}*{self.var}^{i}")
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class FujikiData:
    """Topological inputs: half-dimension n, second Betti number, Fujiki constant."""

    n: int
    b2: int
    c_x: Fraction

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("half-dimension must be >= 1")
        if self.b2 < 1:
            raise ValueError("second Betti number must be >= 1")
        if self.c_x <= 0:
            raise ValueError("Fujiki constant must be positive")


# --- Euler characteristics of the known families ---------------------------


def chi_hilb_q(n: int, qval: Fraction | int) -> Fraction:
    """chi of a line bundle on Hilb^n(K3) from q = q(c_1 L): binom(q/2 + n + 1, n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return binomial(Fraction(qval) / 2 + n + 1, n)


def chi_hilb_egl(n: int, chi_s_h: int, r: int) -> Fraction:
    """Ellingsrud-Goettsche-Lehn form: binom(chi(S, H) - (r^2 - 1)(n - 1), n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return binomial(Fraction(chi_s_h - (r * r - 1) * (n - 1)), n)


def chi_kummer(n: int, lam: Fraction | int) -> Fraction:
    """Britze-Nieper: chi on a generalized Kummer 2n-fold is
    (n+1) binom((n+1) lambda / 4 + n, n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return (n + 1) * binomial(Fraction(n + 1) * Fraction(lam) / 4 + n, n)


def chi_og6(lam: Fraction | int) -> Fraction:
    """chi on the 6-dimensional O'Grady variety: 4 binom(lambda + 3, 3)."""
    return 4 * binomial(Fraction(lam) + 3, 3)


def chi_polynomial(model: HKModel) -> ChiPolynomial:
    """The chi polynomial of a known family, expanded exactly.

    Hilbert schemes are polynomials in q = q(c_1 L); Kummer and O'Grady
    models in the characteristic value lambda.
    """
    if model.kind == HILB:
        coeffs = unipoly.linear_binomial(Fraction(1, 2), model.n + 1, model.n)
        return ChiPolynomial("q", coeffs)
    if model.kind == KUMMER:
        coeffs = unipoly.scale(
            unipoly.linear_binomial(Fraction(model.n + 1, 4), model.n, model.n),
            model.n + 1,
        )
        return ChiPolynomial("lambda", coeffs)
    coeffs = unipoly.scale(unipoly.linear_binomial(1, 3, 3), 4)
    return ChiPolynomial("lambda", coeffs)


def todd_all_effective(model: HKModel) -> tuple[bool, tuple[Fraction, ...]]:
    """All Todd classes of the model are fakely effective iff every chi
    coefficient is non-negative; returns the verdict and the coefficients."""
    poly = chi_polynomial(model)
    return poly.all_nonnegative(), poly.coeffs


def h0_lower_bound(model: HKModel) -> int:
    """Sections guaranteed for a nef and big line bundle: chi evaluated at the
    smallest argument allowed by integrality (q/2, (n+1)lambda/4, or lambda
    must be a positive integer, so the minimum is 1)."""
    n = model.n
    if model.kind == HILB:
        value = chi_hilb_q(n, 2)
    elif model.kind == KUMMER:
        value = chi_kummer(n, Fraction(4, n + 1))
    else:
        value = chi_og6(1)
    assert value.denominator == 1
    return int(value)


# --- Fujiki-relation arithmetic ---------------------------------------------


@dataclass(frozen=True)
class MonomialIntegrals:
    """Integrals of orthonormal-basis monomials e_i^a e_j^b e_k^c of top degree."""

    n: int
    top: Fraction        # int e_i^{2n}
    square: Fraction     # int e_i^{2n-2} e_j^2
    fourth: Fraction     # int e_i^{2n-4} e_j^4
    two_two: Fraction    # int e_i^{2n-4} e_j^2 e_k^2


def fujiki_monomial_integrals(data: FujikiData) -> MonomialIntegrals:
    """Expand c_X (1 + t^2 + s^2)^n = int (e_i + t e_j + s e_k)^{2n} and divide
    each coefficient by its multinomial weight.  Genuine series expansion; the
    closed forms c_X/(2n-1) etc. are only used as test oracles."""
    if data.n < 2:
        raise ValueError("monomial integrals need n >= 2")
    n, c_x = data.n, data.c_x
    ring = TruncatedRing((4, 4))
    t, s = ring.var(0), ring.var(1)
    series = (ring.one() + t * t + s * s) ** n

    def lhs_weight(b: int, c: int) -> Fraction:
        return binomial(2 * n, b) * binomial(2 * n - b, c)

    def integral(b: int, c: int) -> Fraction:
        return c_x * series.coefficient((b, c)) / lhs_weight(b, c)

    return MonomialIntegrals(
        n=n,
        top=integral(0, 0),
        square=integral(2, 0),
        fourth=integral(4, 0),
        two_two=integral(2, 2),
    )


def c_q_squared(data: FujikiData) -> Fraction:
    """The Fujiki functional of Q^2, where Q is the dual of the BBF form:

        C(Q^2) = c_X + 2(b2-1) c_X/(2n-1) + 3(b2-1) c_X/((2n-1)(2n-3))
                 + (b2-1)(b2-2) c_X/((2n-1)(2n-3)),

    always positive, which makes c_2^2 pair non-negatively with nef classes.
    """
    if data.n < 2:
        raise ValueError("C(Q^2) needs n >= 2")
    n, b2, c_x = data.n, data.b2, data.c_x
    d1 = 2 * n - 1
    d2 = (2 * n - 1) * (2 * n - 3)
    value = (c_x
             + 2 * (b2 - 1) * c_x / Fraction(d1)
             + 3 * (b2 - 1) * c_x / Fraction(d2)
             + (b2 - 1) * (b2 - 2) * c_x / Fraction(d2))
    if value <= 0:
        raise ArithmeticError(f"C(Q^2) = {value} is not positive")
    return value


def lambda_from_q(qval: Fraction | int, data: FujikiData,
                  c2_constant: Fraction) -> Fraction:
    """Characteristic value from the BBF square:
    lambda(L) = 12 c_X q(c_1 L) / ((2n - 1) C(c_2))."""
    if c2_constant <= 0:
        raise ValueError(f"C(c_2) must be positive, got {c2_constant}")
    return 12 * data.c_x * Fraction(qval) / ((2 * data.n - 1) * c2_constant)


def sqrt_td_pairing_identity(n: int, lam: Fraction | int,
                             sqrt_td_total: Fraction) -> Fraction:
    """int_X sqrt(td) . L^{2n-4} = (2n-4)! binom(n, n-2) lambda^{n-2} int_X sqrt(td).

    The total integral of sqrt(td) is positive (Hitchin-Sawon), so the pairing
    is positive for lambda > 0."""
    if n < 2:
        raise ValueError("identity needs n >= 2")
    if sqrt_td_total <= 0:
        raise ValueError("int sqrt(td) must be positive")
    return (factorial(2 * n - 4) * binomial(n, n - 2)
            * Fraction(lam) ** (n - 2) * sqrt_td_total)


# --- Chebyshev and Bernoulli data -------------------------------------------


def chebyshev_even(k: int) -> tuple[int, ...]:
    """Coefficients of the even Chebyshev polynomial T_{2k} (ascending powers),
    from the recurrence T_{j+1} = 2x T_j - T_{j-1}."""
    if k < 1:
        raise ValueError("k must be >= 1")
    prev, cur = (1,), (0, 1)  # T_0, T_1
    for _ in range(2 * k - 1):
        nxt = [0] * (len(cur) + 1)
        for i, c in enumerate(cur):
            nxt[i + 1] += 2 * c
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, tuple(nxt)
    return cur


def _chebyshev_even_in_u(k: int) -> unipoly.Coeffs:
    """T_{2k}(x) rewritten in u = x^2 (only even powers of x occur)."""
    coeffs = chebyshev_even(k)
    assert all(c == 0 for c in coeffs[1::2])
    return unipoly.trim([Fraction(c) for c in coeffs[0::2]])


@lru_cache(maxsize=None)
def bernoulli(index: int) -> Fraction:
    """Bernoulli number B_{2k} by the defining recurrence
    sum_{j=0}^{m} binom(m+1, j) B_j = 0; only even indices >= 2 are served."""
    if index < 2 or index % 2:
        raise ValueError(f"only even Bernoulli indices >= 2 are supported, got {index}")
    values = [Fraction(1)]
    for m in range(1, index + 1):
        acc = sum(binomial(m + 1, j) * values[j] for j in range(m))
        values.append(-acc / (m + 1))
    return values[index]


# --- Chern-number tables and Nieper's Riemann-Roch engine --------------------

_FACTOR_RE = re.compile(r"c(\d+)(?:\^(\d+))?$")


def parse_chern_monomial(key: str, half_dim: int) -> tuple[int, ...]:
    """Parse a descriptor like "c2^3" or "c2*c4" into an exponent tuple over
    (c_2, c_4, ..., c_{2n})."""
    expo = [0] * half_dim
    for factor in key.split("*"):
        match = _FACTOR_RE.fullmatch(factor.strip())
        if not match:
            raise ValueError(f"bad Chern monomial factor {factor!r} in {key!r}")
        degree = int(match.group(1))
        power = int(match.group(2) or 1)
        if degree % 2 or degree < 2 or degree > 2 * half_dim:
            raise ValueError(
                f"Chern class c{degree} out of range in {key!r} (even classes up to c{2 * half_dim})")
        expo[degree // 2 - 1] += power
    return tuple(expo)


def chern_monomial_key(expo: tuple[int, ...]) -> str:
    parts = []
    for j, e in enumerate(expo, start=1):
        if e == 1:
            parts.append(f"c{2 * j}")
        elif e > 1:
            parts.append(f"c{2 * j}^{e}")
    return "*".join(parts) if parts else "1"


def _weighted_degree(expo: tuple[int, ...]) -> int:
    """Cohomological degree of a monomial in (c_2, c_4, ...): sum of 2j * e_j."""
    return 2 * sum(j * e for j, e in enumerate(expo, start=1))


def top_degree_monomials(half_dim: int) -> list[tuple[int, ...]]:
    """All exponent tuples over (c_2 ... c_{2n}) of total degree exactly 2n
    (one per partition of n)."""
    out = []
    for expo in itertools.product(*(range(half_dim // j + 1) for j in range(1, half_dim + 1))):
        if _weighted_degree(expo) == 2 * half_dim:
            out.append(expo)
    return out


@dataclass(frozen=True)
class ChernNumberTable:
    """Integrals of top-degree monomials in the even Chern classes of a 2n-fold.

    ``numbers`` is keyed by exponent tuples over (c_2, c_4, ..., c_{2n}); odd
    Chern classes vanish on a hyperkahler variety and never appear.
    """

    dim: int
    numbers: Mapping[tuple[int, ...], int]

    def __post_init__(self) -> None:
        if self.dim < 2 or self.dim % 2:
            raise ValueError(f"dimension must be even and >= 2, got {self.dim}")
        for expo in self.numbers:
            if len(expo) != self.half_dim:
                raise ValueError(f"exponent tuple {expo} has wrong length")
            if _weighted_degree(expo) != self.dim:
                raise ValueError(
                    f"monomial {chern_monomial_key(expo)} has degree "
                    f"{_weighted_degree(expo)}, expected {self.dim}")

    @property
    def half_dim(self) -> int:
        return self.dim // 2

    def value(self, expo: tuple[int, ...]) -> Fraction:
        if expo not in self.numbers:
            raise KeyError(
                f"table missing required monomial {chern_monomial_key(expo)}")
        return Fraction(self.numbers[expo])


def chern_table_from_dict(data: dict) -> ChernNumberTable:
    """Parse the JSON schema {"dim": 2n, "numbers": {"c2^3": ..., ...}}."""
    if not isinstance(data, dict) or "dim" not in data or "numbers" not in data:
        raise ValueError('expected an object with "dim" and "numbers"')
    dim = data["dim"]
    if not isinstance(dim, int):
        raise ValueError("dim must be an integer")
    numbers = {}
    for key, value in data["numbers"].items():
        if not isinstance(value, int):
            raise ValueError(f"Chern number for {key!r} must be an integer")
        numbers[parse_chern_monomial(key, dim // 2)] = value
    return ChernNumberTable(dim, numbers)


OG6_CHERN_NUMBERS = ChernNumberTable(6, {(3, 0, 0): 30720, (1, 1, 0): 7680, (0, 0, 1): 1920})


def _chern_symbol_ring(half_dim: int, extra: int = 0) -> TruncatedRing:
    caps = tuple(half_dim // j for j in range(1, half_dim + 1))
    return TruncatedRing(caps + (half_dim,) * extra)


def _power_sums(half_dim: int, ring: TruncatedRing) -> list[MultiPoly]:
    """Power sums p_1..p_{2n} of the Chern roots via Newton's identities, with
    all odd Chern classes set to zero; indexed from 1 (slot 0 is a placeholder)."""
    n = half_dim

    def chern(i: int) -> MultiPoly:
        if i % 2 or i > 2 * n:
            return ring.zero()
        return ring.var(i // 2 - 1)

    sums: list[MultiPoly] = [ring.zero()]  # placeholder for p_0 slot
    for k in range(1, 2 * n + 1):
        acc = chern(k) * ((-1) ** (k - 1) * k)
        for i in range(1, k):
            acc = acc + chern(i) * sums[k - i] * ((-1) ** (i - 1))
        sums.append(acc)
    return sums


def chern_to_character(table: ChernNumberTable) -> dict[tuple[int, ...], Fraction]:
    """Integrals of every top-degree monomial in ch_2, ch_4, ..., keyed by
    exponent tuples over (ch_2, ..., ch_{2n}).

    ch_{2k} = p_{2k}/(2k)! with the power sums expanded through Newton's
    identities under c_odd = 0 (so ch_2 = -c_2, ch_4 = (c_2^2 - 2 c_4)/12, ...).
    """
    n = table.half_dim
    ring = _chern_symbol_ring(n)
    sums = _power_sums(n, ring)
    characters = [sums[2 * k] / factorial(2 * k) for k in range(1, n + 1)]

    out: dict[tuple[int, ...], Fraction] = {}
    for expo in top_degree_monomials(n):
        poly = ring.one()
        for j, e in enumerate(expo):
            for _ in range(e):
                poly = poly * characters[j]
        total = Fraction(0)
        for mono, coeff in poly.items():
            total += coeff * table.value(mono)
        out[expo] = total
    return out


def nieper_chebyshev_terms(table: ChernNumberTable) -> dict[tuple[int, ...], Fraction]:
    """Coefficients d_mu of chi(X, L) = sum_mu d_mu prod_k T_{2k}(x)^{mu_k}
    at x = sqrt(lambda/4 + 1): the multinomial expansion of the exponential
    in Nieper's formula paired against the character integrals."""
    ch_integrals = chern_to_character(table)
    out = {}
    for expo, integral in ch_integrals.items():
        d = integral
        for k, e in enumerate(expo, start=1):
            if e:
                d *= (-bernoulli(2 * k) / (2 * k)) ** e / factorial(e)
        out[expo] = d
    return out


def nieper_chi(table: ChernNumberTable) -> ChiPolynomial:
    """Nieper's Riemann-Roch as an exact polynomial in lambda.

    The exponential is expanded as a genuine formal series over commuting
    Chern-character symbols tensored with a variable u = lambda/4 + 1 (the
    even Chebyshev polynomials are polynomials in u); only monomials of total
    degree 2n survive integration.
    """
    n = table.half_dim
    ch_integrals = chern_to_character(table)
    ring = _chern_symbol_ring(n, extra=1)
    u_slot = ring.var_count - 1

    argument = ring.zero()
    for k in range(1, n + 1):
        weight = -bernoulli(2 * k) / (2 * k)  # -2 B_{2k} / (4k)
        cheb = _chebyshev_even_in_u(k)
        terms = {}
        for i, c in enumerate(cheb):
            expo = [0] * ring.var_count
            expo[k - 1] = 1
            expo[u_slot] = i
            terms[tuple(expo)] = c * weight
        argument = argument + ring.poly(terms)

    expanded = exp_series(argument)

    in_u: unipoly.Coeffs = ()
    for expo, coeff in expanded.items():
        ch_part = expo[:u_slot]
        if _weighted_degree(ch_part) != 2 * n:
            continue
        contribution = [Fraction(0)] * (expo[u_slot] + 1)
        contribution[expo[u_slot]] = coeff * ch_integrals[ch_part]
        in_u = unipoly.add(in_u, tuple(contribution))

    in_lambda = unipoly.compose(in_u, (Fraction(1), Fraction(1, 4)))  # u = 1 + lambda/4
    return ChiPolynomial("lambda", in_lambda)
