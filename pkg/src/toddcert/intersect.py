"""Integration on products of projective spaces and pushforward pairings.

On P(n) = P^{n_1} x ... x P^{n_m} the integral of a cohomology class is the
coefficient of the top monomial H_1^{n_1}...H_m^{n_m}.  A complete
intersection X cut out by divisors D_1..D_K pushes forward as
int_X gamma = int_{P(n)} gamma~ * D_1...D_K, where gamma~ is any lift,
so integrals on X reduce to ambient coefficient extraction.

Nef classes on X are sampled as non-negative rational combinations of the
restricted hyperplanes; the sample set always leads with the extreme rays
(basis vectors) and the all-ones interior point, then deterministic
pseudo-random weights so certificates are reproducible from their seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Sequence

from .exactpoly import MultiPoly, TruncatedRing

if TYPE_CHECKING:  # only for annotations; cicy imports this module at runtime
    from .cicy import ConfigMatrix


@dataclass(frozen=True)
class AmbientSpace:
    """A product of projective spaces with factor dimensions n_1..n_m."""

    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.dims or any(n < 1 for n in self.dims):
            raise ValueError(f"factor dimensions must be >= 1, got {self.dims}")

    @property
    def factor_count(self) -> int:
        return len(self.dims)

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def ring(self, total_degree_cap: int | None = None) -> TruncatedRing:
        """The cohomology ring, with caps n_r enforcing H_r^{n_r+1} = 0."""
        return TruncatedRing(tuple(self.dims), total_degree_cap)


@dataclass(frozen=True)
class NefSample:
    """Non-negative rational weights t_1..t_m for L = sum t_r J_r, not all zero."""

    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if any(w < 0 for w in self.weights):
            raise ValueError(f"nef weights must be >= 0, got {self.weights}")
        if not any(self.weights):
            raise ValueError("nef sample needs at least one positive weight")

    def divisor(self, ring: TruncatedRing) -> MultiPoly:
        """The ambient lift sum_r t_r H_r."""
        if ring.var_count != len(self.weights):
            raise ValueError("weight count does not match ring")
        return ring.poly({
            tuple(1 if i == r else 0 for i in range(len(self.weights))): w
            for r, w in enumerate(self.weights) if w
        })


def ambient_integral(a: MultiPoly, space: AmbientSpace) -> Fraction:
    """Integrate over P(n): extract the coefficient of H_1^{n_1}...H_m^{n_m}."""
    if a.ring.caps != space.dims:
        raise ValueError(f"ring caps {a.ring.caps} do not match ambient dims {space.dims}")
    return a.coefficient(space.dims)


class CicyPairing:
    """Cached pushforward pairing for one configuration.

    The product of the K defining divisor classes is expanded once; each
    integral then reduces to pairing the class termwise against the stored
    complementary coefficients.
    """

    def __init__(self, cfg: "ConfigMatrix"):
        self.cfg = cfg
        self.space = AmbientSpace(cfg.dims)
        self.ring = self.space.ring()
        prod = self.ring.one()
        for alpha in range(cfg.polynomial_count):
            row = cfg.degrees[alpha]
            prod = prod * self.ring.poly({
                tuple(1 if i == r else 0 for i in range(len(cfg.dims))): Fraction(q)
                for r, q in enumerate(row) if q
            })
        self._divisor_product = prod

    def integral(self, a: MultiPoly) -> Fraction:
        """int_X of a class given by its ambient lift ``a``."""
        if a.ring.caps != self.ring.caps:
            raise ValueError(f"ring caps {a.ring.caps} do not match ambient dims {self.ring.caps}")
        dims = self.space.dims
        total = Fraction(0)
        for expo, coeff in a.items():
            rest = tuple(n - e for n, e in zip(dims, expo))
            if any(r < 0 for r in rest):
                continue
            total += coeff * self._divisor_product.coefficient(rest)
        return total


def cicy_integral(a: MultiPoly, cfg: "ConfigMatrix") -> Fraction:
    """int_X gamma for gamma given by an ambient lift: multiply the lift by
    the defining divisor classes and integrate over the ambient."""
    return CicyPairing(cfg).integral(a)


def sample_nef(space: AmbientSpace, count: int, seed: int) -> list[NefSample]:
    """Deterministic nef test set: basis vectors, the all-ones vector, then
    seeded random weights with numerator and denominator at most 64."""
    if count < 1:
        raise ValueError("count must be >= 1")
    m = space.factor_count
    samples = [
        NefSample(tuple(Fraction(1 if i == r else 0) for i in range(m)))
        for r in range(m)
    ]
    if m > 1:
        samples.append(NefSample((Fraction(1),) * m))
    rng = random.Random(seed)
    while len(samples) < count:
        weights = tuple(
            Fraction(rng.randint(0, 64), rng.randint(1, 64)) for _ in range(m)
        )
        if any(weights):
            samples.append(NefSample(weights))
    return samples[:count]


def nef_divisor(sample: NefSample | Sequence[Fraction | int], ring: TruncatedRing) -> MultiPoly:
    """Ambient lift of a nef class from a sample or a raw weight sequence."""
    if not isinstance(sample, NefSample):
        sample = NefSample(tuple(Fraction(w) for w in sample))
    return sample.divisor(ring)
