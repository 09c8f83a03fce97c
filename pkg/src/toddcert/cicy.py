"""Complete intersections with trivial canonical class in products of projective spaces.

A configuration [n | q] lists the ambient factor dimensions n_1..n_m and a
K x m matrix of multidegrees q_alpha^s.  Triviality of the first Chern class
forces the row sums sum_alpha q_alpha^r = n_r + 1 for every factor r.

Chern data is computed along two independent routes and cross-checked in the
test suite:

* adjunction series: c(X) = prod_r (1 + H_r)^{n_r+1} / prod_alpha (1 + sum_s q_alpha^s H_s),
  expanded exactly in the truncated ambient ring;
* closed coefficient formulas for c_2 and c_4 in the restricted hyperplane
  basis, assembled termwise from the multidegrees.

The quartic Todd class satisfies 2880 td_4(X) = 4(3 c_2^2(X) - c_4(X)); its
expansion over the canonical degree-4 monomials J_r^4, J_r^3 J_s, J_r^2 J_s^2,
J_r^2 J_s J_t, J_r J_s J_t J_u yields an integer coefficient table whose sign
structure drives the positivity certificates: a coefficient can only be
negative in two exceptional patterns, and each such entry is absorbed by a
non-negative group of neighbouring terms.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .exactpoly import MultiPoly, TruncatedRing
from .intersect import AmbientSpace, CicyPairing, NefSample, sample_nef


class SchemaError(ValueError):
    """Input data does not match the documented JSON schema."""


class ConfigError(ValueError):
    """Invalid configuration data; ``row`` is the 1-based offending factor, if any."""

    def __init__(self, message: str, row: int | None = None):
        super().__init__(message)
        self.row = row


@dataclass(frozen=True)
class ConfigMatrix:
    """Validated [n | q] data.  ``degrees[alpha][r]`` is the degree of the
    alpha-th polynomial along the r-th factor."""

    dims: tuple[int, ...]
    degrees: tuple[tuple[int, ...], ...]
    name: str | None = None

    def __post_init__(self) -> None:
        if not self.dims:
            raise ConfigError("no ambient factors given")
        if any(not isinstance(n, int) or n < 1 for n in self.dims):
            raise ConfigError(f"factor dimensions must be positive integers, got {self.dims}")
        if not self.degrees:
            raise ConfigError("no defining polynomials given")
        m = len(self.dims)
        for alpha, row in enumerate(self.degrees):
            if len(row) != m:
                raise ConfigError(
                    f"degree row {alpha + 1} has {len(row)} entries, expected {m}")
            for q in row:
                if not isinstance(q, int) or q < 0:
                    raise ConfigError(f"degree entries must be integers >= 0, got {q!r}")
        for r, n in enumerate(self.dims):
            total = sum(row[r] for row in self.degrees)
            if total != n + 1:
                raise ConfigError(
                    f"row {r + 1}: degree sum {total} != {n + 1} = n_{r + 1} + 1 "
                    "(first Chern class does not vanish)",
                    row=r + 1,
                )
        if self.dim < 1:
            raise ConfigError(
                f"dimension {self.dim} = {sum(self.dims)} - {len(self.degrees)} is not positive")

    @property
    def factor_count(self) -> int:
        return len(self.dims)

    @property
    def polynomial_count(self) -> int:
        return len(self.degrees)

    @property
    def dim(self) -> int:
        return sum(self.dims) - len(self.degrees)

    @property
    def strictly_positive(self) -> bool:
        return all(q > 0 for row in self.degrees for q in row)

    def degree_vector(self, r: int) -> tuple[int, ...]:
        """The degrees (q_1^r, ..., q_K^r) of all polynomials along factor r."""
        return tuple(row[r] for row in self.degrees)

    def unit_factors(self) -> tuple[int, ...]:
        """Factors r whose degree vector is identically 1 (so J_r^K = 0 on X)."""
        return tuple(r for r in range(self.factor_count)
                     if all(q == 1 for q in self.degree_vector(r)))

    @property
    def label(self) -> str:
        if self.name:
            return self.name
        rows = [
            f"{n}|{' '.join(str(q) for q in self.degree_vector(r))}"
            for r, n in enumerate(self.dims)
        ]
        return "[" + " ; ".join(rows) + "]"

    def ambient(self) -> AmbientSpace:
        return AmbientSpace(self.dims)


def validate_config(dims, degrees, name: str | None = None) -> ConfigMatrix:
    """Build a ConfigMatrix, raising ConfigError naming the violated row."""
    return ConfigMatrix(tuple(dims), tuple(tuple(row) for row in degrees), name)


def config_from_dict(data: dict) -> ConfigMatrix:
    """Parse the JSON schema {"dims": [...], "degrees": [[...], ...], "name": ...}."""
    if not isinstance(data, dict):
        raise SchemaError(f"expected an object, got {type(data).__name__}")
    missing = {"dims", "degrees"} - set(data)
    if missing:
        raise SchemaError(f"missing fields: {sorted(missing)}")
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise SchemaError("name must be a string")
    if not isinstance(data["dims"], list) or not isinstance(data["degrees"], list):
        raise SchemaError('"dims" and "degrees" must be arrays')
    return validate_config(data["dims"], data["degrees"], name)


def total_chern(cfg: ConfigMatrix) -> MultiPoly:
    """Total Chern class of X by adjunction, truncated at total degree 4.

    c(X) = prod_r (1 + H_r)^{n_r+1} * [prod_alpha (1 + sum_s q_alpha^s H_s)]^{-1}.
    """
    ring = TruncatedRing(cfg.dims, total_degree_cap=4)
    tangent = ring.one()
    for r, n in enumerate(cfg.dims):
        tangent = tangent * (ring.one() + ring.var(r)) ** (n + 1)
    normal = ring.one()
    for row in cfg.degrees:
        divisor = ring.zero()
        for r, q in enumerate(row):
            if q:
                divisor = divisor + ring.var(r) * q
        normal = normal * (ring.one() + divisor)
    return tangent * normal.inverse()


def c2_matrix(cfg: ConfigMatrix) -> tuple[tuple[Fraction, ...], ...]:
    """Closed form c_2^{rs} = (1/2)[-(n_r+1) delta^{rs} + sum_alpha q_alpha^r q_alpha^s]."""
    m = cfg.factor_count
    out = []
    for r in range(m):
        row = []
        for s in range(m):
            total = sum(rrow[r] * rrow[s] for rrow in cfg.degrees)
            delta = cfg.dims[r] + 1 if r == s else 0
            row.append(Fraction(total - delta, 2))
        out.append(tuple(row))
    return tuple(out)


def c4_tensor(cfg: ConfigMatrix) -> dict[tuple[int, int, int, int], Fraction]:
    """Fully symmetric closed-form coefficients of c_4(X) over J_r J_s J_t J_u.

    The quadratic c_2 c_2 part is symmetrized over the three pairings of the
    four indices; the delta and quartic-degree parts are already symmetric.
    """
    m = cfg.factor_count
    c2 = c2_matrix(cfg)
    out: dict[tuple[int, int, int, int], Fraction] = {}
    for idx in itertools.product(range(m), repeat=4):
        r, s, t, u = idx
        delta = cfg.dims[r] + 1 if r == s == t == u else 0
        quart = sum(row[r] * row[s] * row[t] * row[u] for row in cfg.degrees)
        pairings = c2[r][s] * c2[t][u] + c2[r][t] * c2[s][u] + c2[r][u] * c2[s][t]
        out[idx] = Fraction(-delta + quart, 4) + pairings / 6
    return out


def c2_class(cfg: ConfigMatrix, ring: TruncatedRing | None = None) -> MultiPoly:
    """c_2(X) as an ambient lift (degree-2 part of the adjunction series)."""
    c2 = total_chern(cfg).graded_part(2)
    return c2 if ring is None else c2.in_ring(ring)


def td4_class(cfg: ConfigMatrix, ring: TruncatedRing | None = None) -> MultiPoly:
    """td_4(X) = (3 c_2^2(X) - c_4(X)) / 720 as an ambient lift."""
    chern = total_chern(cfg)
    c2 = chern.graded_part(2)
    c4 = chern.graded_part(4)
    td4 = (c2 * c2 * 3 - c4) / 720
    if ring is None:
        ring = TruncatedRing(cfg.dims)
    return td4.in_ring(ring)


@dataclass(frozen=True)
class Td4MonomialTable:
    """Integer coefficients of 2880 td_4(X) over the canonical degree-4 monomials.

    Keys are 0-based factor indices; the index patterns mirror the monomial
    shapes: ``quartic[r]`` for J_r^4, ``cubic[(r,s)]`` (r != s) for J_r^3 J_s,
    ``biquadratic[(r,s)]`` (r < s) for J_r^2 J_s^2, ``quad_mixed[(r,s,t)]``
    (r != s, r != t, s < t) for J_r^2 J_s J_t, and ``squarefree[(r,s,t,u)]``
    (r < s < t < u) for J_r J_s J_t J_u.
    """

    factor_count: int
    quartic: dict[int, Fraction]
    cubic: dict[tuple[int, int], Fraction]
    biquadratic: dict[tuple[int, int], Fraction]
    quad_mixed: dict[tuple[int, int, int], Fraction]
    squarefree: dict[tuple[int, int, int, int], Fraction]

    def entries(self):
        """Iterate (pattern, index, value) over the whole table."""
        for r, v in self.quartic.items():
            yield "quartic", (r,), v
        for idx, v in self.cubic.items():
            yield "cubic", idx, v
        for idx, v in self.biquadratic.items():
            yield "biquadratic", idx, v
        for idx, v in self.quad_mixed.items():
            yield "quad_mixed", idx, v
        for idx, v in self.squarefree.items():
            yield "squarefree", idx, v

    def reassemble(self, ring: TruncatedRing) -> MultiPoly:
        """Sum the table against its monomials; equals 2880 td_4(X) exactly."""
        m = self.factor_count
        if ring.var_count != m:
            raise ValueError("ring variable count does not match table")

        def mono(*pairs):
            expo = [0] * m
            for i, e in pairs:
                expo[i] += e
            return tuple(expo)

        acc: dict[tuple[int, ...], Fraction] = {}
        for pattern, idx, v in self.entries():
            if pattern == "quartic":
                expo = mono((idx[0], 4))
            elif pattern == "cubic":
                expo = mono((idx[0], 3), (idx[1], 1))
            elif pattern == "biquadratic":
                expo = mono((idx[0], 2), (idx[1], 2))
            elif pattern == "quad_mixed":
                expo = mono((idx[0], 2), (idx[1], 1), (idx[2], 1))
            else:
                expo = mono(*((i, 1) for i in idx))
            acc[expo] = acc.get(expo, Fraction(0)) + v
        return ring.poly(acc)


def td4_monomial_table(cfg: ConfigMatrix) -> Td4MonomialTable:
    """Closed-form coefficient table of 2880 td_4(X).

    With u_r = -(n_r+1) + sum_alpha (q_alpha^r)^2 and
    Q_{rs} = sum_alpha q_alpha^r q_alpha^s:

      J_r^4:          (5/2) u_r^2 + (n_r+1) - sum (q_alpha^r)^4
      J_r^3 J_s:      10 u_r Q_{rs} - 4 sum (q_alpha^r)^3 q_alpha^s
      J_r^2 J_s^2:    10 Q_{rs}^2 + 5 u_r u_s - 6 sum (q_alpha^r q_alpha^s)^2
      J_r^2 J_s J_t:  10 u_r Q_{st} + 20 Q_{rs} Q_{rt} - 12 sum (q_alpha^r)^2 q_alpha^s q_alpha^t
      J_r J_s J_t J_u: 20 (Q_{rs}Q_{tu} + Q_{rt}Q_{su} + Q_{ru}Q_{st}) - 24 sum q^r q^s q^t q^u
    """
    m = cfg.factor_count
    rows = cfg.degrees

    def qsum(*indices: int) -> int:
        return sum(_prod(row[i] for i in indices) for row in rows)

    u = [qsum(r, r) - (cfg.dims[r] + 1) for r in range(m)]
    Q = [[qsum(r, s) for s in range(m)] for r in range(m)]

    quartic = {
        r: Fraction(5, 2) * u[r] ** 2 + (cfg.dims[r] + 1) - qsum(r, r, r, r)
        for r in range(m)
    }
    cubic = {
        (r, s): Fraction(10 * u[r] * Q[r][s] - 4 * qsum(r, r, r, s))
        for r in range(m) for s in range(m) if r != s
    }
    biquadratic = {
        (r, s): Fraction(10 * Q[r][s] ** 2 + 5 * u[r] * u[s] - 6 * qsum(r, r, s, s))
        for r, s in itertools.combinations(range(m), 2)
    }
    quad_mixed = {
        (r, s, t): Fraction(10 * u[r] * Q[s][t] + 20 * Q[r][s] * Q[r][t]
                            - 12 * qsum(r, r, s, t))
        for r in range(m)
        for s, t in itertools.combinations(range(m), 2)
        if r != s and r != t
    }
    squarefree = {
        (r, s, t, u4): Fraction(
            20 * (Q[r][s] * Q[t][u4] + Q[r][t] * Q[s][u4] + Q[r][u4] * Q[s][t])
            - 24 * qsum(r, s, t, u4))
        for r, s, t, u4 in itertools.combinations(range(m), 4)
    }
    return Td4MonomialTable(m, quartic, cubic, biquadratic, quad_mixed, squarefree)


def _prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


EXCEPTION_ONE_TWO = "one-degree-2-rest-1"
EXCEPTION_UNIT_FACTOR = "unit-degree-factor"


@dataclass(frozen=True)
class SignEntry:
    pattern: str
    index: tuple[int, ...]
    value: Fraction
    exception: str | None  # which exceptional pattern licenses a negative value

    @property
    def negative(self) -> bool:
        return self.value < 0

    @property
    def explained(self) -> bool:
        return not self.negative or self.exception is not None


@dataclass(frozen=True)
class SignReport:
    config: str
    entries: tuple[SignEntry, ...]
    unit_factors: tuple[int, ...]

    @property
    def negative_entries(self) -> tuple[SignEntry, ...]:
        return tuple(e for e in self.entries if e.negative)

    @property
    def all_negatives_explained(self) -> bool:
        return all(e.explained for e in self.entries)


def classify_sign_patterns(cfg: ConfigMatrix) -> SignReport:
    """Sign classification of the td_4 coefficient table.

    For strictly positive multidegrees, every entry is non-negative except
    possibly: a J_r^4 coefficient when the degree vector of r is a single 2
    with all other entries 1, and a J_r^3 J_s coefficient when the degree
    vector of r is identically 1.  Entries are annotated with the pattern
    that licenses a negative value, or None.
    """
    if not cfg.strictly_positive:
        raise ConfigError("sign classification requires strictly positive multidegrees")
    table = td4_monomial_table(cfg)
    units = set(cfg.unit_factors())
    entries = []
    for pattern, idx, value in table.entries():
        exception = None
        if pattern == "quartic":
            vec = sorted(cfg.degree_vector(idx[0]))
            if vec == [1] * (len(vec) - 1) + [2]:
                exception = EXCEPTION_ONE_TWO
        elif pattern == "cubic":
            if idx[0] in units:
                exception = EXCEPTION_UNIT_FACTOR
        entries.append(SignEntry(pattern, idx, value, exception))
    return SignReport(cfg.label, tuple(entries), tuple(sorted(units)))


@dataclass(frozen=True)
class AbsorptionGroup:
    """One proof-structure group certifying that its negative entries are
    dominated by non-negative neighbours."""

    factor: int
    grouping: str  # "non-unit-factor": J_r^4 + sum_s J_r^3 J_s block;
    #                "unit-factor": J_r^3 J_s + (halved) J_r^2 J_s^2 + J_r^2 J_s J_t block
    absorbed: tuple[SignEntry, ...]


@dataclass(frozen=True)
class EffectivityCertificate:
    """Machine-checkable record of a pairing positivity check."""

    config: str
    cycle: str  # "td4" or "c2"
    method: str  # "both" (sampling + symbolic) or "sampling"
    seed: int
    sample_count: int
    min_pairing: Fraction
    min_weights: tuple[Fraction, ...]
    negative_entries: tuple[SignEntry, ...] = ()
    absorption: tuple[AbsorptionGroup, ...] = ()
    symbolic_complete: bool = True
    verdict: str = field(default="effective")

    def __post_init__(self) -> None:
        expected = "effective" if self.min_pairing >= 0 else "not-effective"
        if self.verdict != expected:
            raise ValueError(
                f"verdict {self.verdict!r} inconsistent with minimum pairing {self.min_pairing}")


def _min_pairing(cfg: ConfigMatrix, lift: MultiPoly, power: int,
                 samples: int, seed: int) -> tuple[Fraction, tuple[Fraction, ...]]:
    pairing = CicyPairing(cfg)
    ring = pairing.ring
    lift = lift.in_ring(ring)
    best: tuple[Fraction, tuple[Fraction, ...]] | None = None
    for sample in sample_nef(pairing.space, samples, seed):
        value = pairing.integral(lift * sample.divisor(ring) ** power)
        if best is None or value < best[0]:
            best = (value, sample.weights)
    assert best is not None
    return best


def check_td4_fake_effective(cfg: ConfigMatrix, samples: int = 20,
                             seed: int = 0) -> EffectivityCertificate:
    """Certificate that int_X td_4(X) . L^{dim-4} >= 0 over sampled nef classes.

    The sampling side pairs td_4 exactly against every sampled class.  The
    symbolic side lists the negative coefficient-table entries and the group
    (one per factor) whose non-negative expansion absorbs each of them.
    """
    if cfg.dim < 4:
        raise ConfigError(f"td_4 pairing needs dim >= 4, got dim {cfg.dim}")
    if not cfg.strictly_positive:
        raise ConfigError("td_4 certificate requires strictly positive multidegrees")
    report = classify_sign_patterns(cfg)
    units = set(report.unit_factors)
    groups: dict[tuple[int, str], list[SignEntry]] = {}
    for entry in report.negative_entries:
        r = entry.index[0]
        grouping = "unit-factor" if r in units else "non-unit-factor"
        groups.setdefault((r, grouping), []).append(entry)
    absorption = tuple(
        AbsorptionGroup(r, grouping, tuple(members))
        for (r, grouping), members in sorted(groups.items())
    )
    value, weights = _min_pairing(cfg, td4_class(cfg), cfg.dim - 4, samples, seed)
    return EffectivityCertificate(
        config=cfg.label,
        cycle="td4",
        method="both",
        seed=seed,
        sample_count=samples,
        min_pairing=value,
        min_weights=weights,
        negative_entries=report.negative_entries,
        absorption=absorption,
        symbolic_complete=report.all_negatives_explained,
        verdict="effective" if value >= 0 else "not-effective",
    )


def check_c2_fake_effective(cfg: ConfigMatrix, samples: int = 20,
                            seed: int = 0) -> EffectivityCertificate:
    """Certificate that int_X c_2(X) . L^{dim-2} >= 0 over sampled nef classes."""
    if cfg.dim < 2:
        raise ConfigError(f"c_2 pairing needs dim >= 2, got dim {cfg.dim}")
    value, weights = _min_pairing(cfg, c2_class(cfg), cfg.dim - 2, samples, seed)
    return EffectivityCertificate(
        config=cfg.label,
        cycle="c2",
        method="sampling",
        seed=seed,
        sample_count=samples,
        min_pairing=value,
        min_weights=weights,
        verdict="effective" if value >= 0 else "not-effective",
    )


def random_config(rng: random.Random, max_factors: int = 4,
                  max_factor_dim: int = 7,
                  dim_range: tuple[int, int] | None = None) -> ConfigMatrix:
    """Random strictly positive configuration with exact row sums.

    Each factor's degree vector is a uniform-ish composition of n_r + 1 into
    K positive parts (all-ones plus randomly scattered increments), so the
    CY row sums hold by construction.  ``dim_range`` restricts dim X.
    """
    while True:
        m = rng.randint(1, max_factors)
        dims = tuple(rng.randint(1, max_factor_dim) for _ in range(m))
        k_hi = min(min(dims) + 1, sum(dims) - 1)
        k_lo = 1
        if dim_range is not None:
            lo, hi = dim_range
            k_lo = max(k_lo, sum(dims) - hi)
            k_hi = min(k_hi, sum(dims) - lo)
        if k_lo > k_hi:
            continue
        K = rng.randint(k_lo, k_hi)
        columns = []
        for n in dims:
            parts = [1] * K
            for _ in range(n + 1 - K):
                parts[rng.randrange(K)] += 1
            columns.append(parts)
        degrees = tuple(tuple(columns[r][alpha] for r in range(m)) for alpha in range(K))
        return ConfigMatrix(dims, degrees)
