"""Sparse multivariate polynomials over Q in a truncated ring.

The ring models the rational cohomology of a product of projective spaces:
each variable H_r carries a cap n_r, and any monomial with an exponent
exceeding its cap is annihilated (H_r^{n_r+1} = 0).  An optional total-degree
cap truncates by total degree as well, which keeps characteristic-class
computations (needed only up to degree 4) cheap even on large ambients.

Polynomials are stored sparsely as a map from exponent tuples to nonzero
``Fraction`` coefficients.  All values are immutable after construction and
every operation is a pure function, so instances may be shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterator, Mapping

Exponents = tuple[int, ...]


@dataclass(frozen=True)
class TruncatedRing:
    """A polynomial ring Q[H_1..H_m] / (H_r^{caps_r + 1}), optionally degree-capped."""

    caps: tuple[int, ...]
    total_degree_cap: int | None = None

    def __post_init__(self) -> None:
        if not self.caps:
            raise ValueError("ring needs at least one variable")
        if any(c < 0 for c in self.caps):
            raise ValueError(f"caps must be >= 0, got {self.caps}")
        if self.total_degree_cap is not None and self.total_degree_cap < 0:
            raise ValueError("total_degree_cap must be >= 0")

    @property
    def var_count(self) -> int:
        return len(self.caps)

    def admits(self, expo: Exponents) -> bool:
        """True if the monomial survives truncation."""
        if len(expo) != len(self.caps):
            raise ValueError(f"monomial has {len(expo)} slots, ring has {len(self.caps)}")
        if any(e > c for e, c in zip(expo, self.caps)):
            return False
        if self.total_degree_cap is not None and sum(expo) > self.total_degree_cap:
            return False
        return True

    def poly(self, terms: Mapping[Exponents, Fraction | int]) -> "MultiPoly":
        return MultiPoly(self, terms)

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def one(self) -> "MultiPoly":
        return self.const(1)

    def const(self, c: Fraction | int) -> "MultiPoly":
        return MultiPoly(self, {(0,) * self.var_count: Fraction(c)})

    def var(self, i: int) -> "MultiPoly":
        """The generator H_i (0-based)."""
        expo = [0] * self.var_count
        expo[i] = 1
        return MultiPoly(self, {tuple(expo): Fraction(1)})

    def without_total_cap(self) -> "TruncatedRing":
        return TruncatedRing(self.caps)


class MultiPoly:
    """Immutable sparse polynomial attached to a :class:`TruncatedRing`.

    Supports +, -, * (with scalars or polynomials) and ** (non-negative
    integer powers by repeated squaring).  Truncation is applied eagerly on
    construction and after every product, so exponents never exceed the caps.
    """

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: TruncatedRing, terms: Mapping[Exponents, Fraction | int]):
        cleaned: dict[Exponents, Fraction] = {}
        for expo, coeff in terms.items():
            if not ring.admits(expo):
                continue
            if any(e < 0 for e in expo):
                raise ValueError(f"negative exponent in {expo}")
            c = Fraction(coeff)
            if c:
                cleaned[expo] = c
        self.ring = ring
        self._terms = cleaned

    @property
    def terms(self) -> dict[Exponents, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Exponents, Fraction]]:
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, expo: Exponents) -> Fraction:
        """The stored coefficient of a monomial, or 0."""
        if len(expo) != self.ring.var_count:
            raise ValueError("monomial length does not match ring")
        return self._terms.get(tuple(expo), Fraction(0))

    @property
    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.ring.var_count, Fraction(0))

    def total_degree(self) -> int:
        """Max total degree of a stored term; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def graded_part(self, d: int) -> "MultiPoly":
        """The sum of terms of total degree exactly d."""
        return MultiPoly(self.ring, {e: c for e, c in self._terms.items() if sum(e) == d})

    def in_ring(self, ring: TruncatedRing) -> "MultiPoly":
        """Reinterpret in another ring with the same variables (quotient map)."""
        if ring.var_count != self.ring.var_count:
            raise ValueError("rings have different variable counts")
        return MultiPoly(ring, self._terms)

    def _check_same_ring(self, other: "MultiPoly") -> None:
        if self.ring != other.ring:
            raise ValueError("polynomials live in different rings")

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MultiPoly):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self._terms.items())))

    def __add__(self, other: "MultiPoly | Fraction | int") -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        self._check_same_ring(other)
        out = dict(self._terms)
        for expo, coeff in other._terms.items():
            out[expo] = out.get(expo, Fraction(0)) + coeff
        return MultiPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "MultiPoly | Fraction | int") -> "MultiPoly":
        return self + (-other if isinstance(other, MultiPoly) else -Fraction(other))

    def __rsub__(self, other: "Fraction | int") -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other: "MultiPoly | Fraction | int") -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return MultiPoly(self.ring, {e: v * c for e, v in self._terms.items()})
        self._check_same_ring(other)
        ring = self.ring
        out: dict[Exponents, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                expo = tuple(a + b for a, b in zip(e1, e2))
                if not ring.admits(expo):
                    continue
                out[expo] = out.get(expo, Fraction(0)) + c1 * c2
        return MultiPoly(ring, out)

    __rmul__ = __mul__

    def __truediv__(self, scalar: Fraction | int) -> "MultiPoly":
        return self * (Fraction(1) / Fraction(scalar))

    def __pow__(self, k: int) -> "MultiPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError(f"power must be a non-negative integer, got {k!r}")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def _nilpotent_part(self) -> "MultiPoly":
        """self - 1, raising unless the constant term is exactly 1."""
        if self.constant_term != 1:
            raise ValueError(f"series needs constant term 1, got {self.constant_term}")
        return self - 1

    def _max_series_order(self) -> int:
        cap = self.ring.total_degree_cap
        return cap if cap is not None else sum(self.ring.caps)

    def inverse(self) -> "MultiPoly":
        """Multiplicative inverse of a series with constant term 1.

        The positive-degree part n is nilpotent under truncation, so the
        Neumann series 1 - n + n^2 - ... terminates exactly.
        """
        n = self._nilpotent_part()
        acc = self.ring.one()
        power = self.ring.one()
        for _ in range(self._max_series_order()):
            power = power * (-n)
            if power.is_zero():
                break
            acc = acc + power
        return acc

    def sqrt(self) -> "MultiPoly":
        """Formal square root of a series with constant term 1.

        Binomial series sqrt(1+n) = sum_k binom(1/2, k) n^k; terminates
        because n is nilpotent under truncation.
        """
        n = self._nilpotent_part()
        acc = self.ring.one()
        power = self.ring.one()
        coeff = Fraction(1)
        for k in range(1, self._max_series_order() + 1):
            power = power * n
            if power.is_zero():
                break
            coeff *= Fraction(3 - 2 * k, 2 * k)  # binom(1/2,k)/binom(1/2,k-1)
            acc = acc + power * coeff
        return acc

    def evaluate(self, values: tuple[Fraction | int, ...]) -> Fraction:
        """Substitute a rational value for every variable."""
        if len(values) != self.ring.var_count:
            raise ValueError("value tuple length does not match ring")
        vals = [Fraction(v) for v in values]
        total = Fraction(0)
        for expo, coeff in self._terms.items():
            term = coeff
            for v, e in zip(vals, expo):
                term *= v**e
            total += term
        return total

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for expo in sorted(self._terms, key=lambda e: (sum(e), e)):
            coeff = self._terms[expo]
            factors = [
                f"H{i + 1}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(expo)
                if e
            ]
            mono = "*".join(factors) if factors else "1"
            parts.append(f"{coeff}*{mono}" if factors else f"{coeff}")
        return " + ".join(parts)


def exp_series(a: MultiPoly) -> MultiPoly:
    """Formal exponential of a polynomial with zero constant term."""
    if a.constant_term != 0:
        raise ValueError("exp_series needs zero constant term")
    acc = a.ring.one()
    power = a.ring.one()
    for k in range(1, a._max_series_order() + 1):
        power = power * a
        if power.is_zero():
            break
        acc = acc + power / factorial(k)
    return acc
