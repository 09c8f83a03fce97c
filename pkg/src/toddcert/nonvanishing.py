"""Effective non-vanishing certificates from Riemann-Roch root analysis.

Let X be smooth projective of dimension n with vanishing first Chern class
and L nef and big.  The function f(t) = chi(X, L^t) is a polynomial of
degree n whose odd Todd contributions vanish, so f(-t) = (-1)^n f(t).  If
h^0(X, L^i) = 0 for i in a range of consecutive positive integers, Kawamata-
Viehweg vanishing turns those into roots of f, forcing a product form

    odd n = 2k+1:   f(t) = a t (t^2 - 1)(t^2 - 4) ... (t^2 - k^2)
    n = 4k+2:       f(t) = a (t^2 - 1) ... (t^2 - (2k+1)^2)
    n = 4k+4:       f(t) = a (t^2 - 1) ... (t^2 - (2k+1)^2)(t^2 - b)

with leading coefficient a = int L^n / n! > 0 and one undetermined quadratic
root b in the last case.  Extracting one coefficient produces a sign
contradiction with the Miyaoka-Yau non-negativity of int c_2 . L^{n-2} (and,
in the 4k+4 case, with chi(O_X) >= 0).  Some power L^i with
i <= floor((n-1)/4) + floor((n+2)/4) therefore has a section.

Certificates here are constructive transcripts: the product polynomial, the
extracted coefficient as an exact multiple of the (symbolic, positive)
leading coefficient, and the inequality chain, so they can be re-checked
independently.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from . import unipoly


def min_nonvanishing_bound(n: int) -> int:
    """Smallest i guaranteed to satisfy h^0(X, L^i) != 0:
    floor((n-1)/4) + floor((n+2)/4)."""
    if n < 2:
        raise ValueError(f"bound needs dimension >= 2, got {n}")
    return (n - 1) // 4 + (n + 2) // 4


@dataclass(frozen=True)
class ProductForm:
    """f(t) up to the positive leading coefficient: a product of t (odd case),
    factors (t^2 - i^2) over the positive roots, and optionally one symbolic
    quadratic factor (t^2 - b)."""

    dim: int
    positive_roots: tuple[int, ...]
    include_zero: bool
    free_quadratic: bool

    def base_coeffs(self) -> unipoly.Coeffs:
        """Expansion of the known factors (excluding the symbolic quadratic)."""
        out = unipoly.const(1)
        for root in self.positive_roots:
            out = unipoly.mul(out, (Fraction(-root * root), Fraction(0), Fraction(1)))
        if self.include_zero:
            out = unipoly.mul(out, (Fraction(0), Fraction(1)))
        return out

    def __str__(self) -> str:
        factors = ["a"]
        if self.include_zero:
            factors.append("t")
        factors.extend(f"(t^2-{i * i})" for i in self.positive_roots)
        if self.free_quadratic:
            factors.append("(t^2-b)")
        return "*".join(factors)


def chi_vanishing_poly(dim: int, roots) -> ProductForm:
    """Product form of chi(X, L^t) when the given integers are roots.

    Roots must be consistent with the parity forced by vanishing odd Todd
    classes: symmetric about 0, containing 0 exactly when dim is odd, and
    either dim of them, or dim - 2 of them with dim divisible by 4 (the
    remaining quadratic factor stays symbolic).
    """
    roots = sorted(set(int(r) for r in roots))
    if any(-r not in roots for r in roots):
        raise ValueError(f"roots {roots} are not symmetric about 0")
    has_zero = 0 in roots
    if has_zero != (dim % 2 == 1):
        raise ValueError(
            f"parity violation: 0 must be a root exactly in odd dimension (dim {dim})")
    positive = tuple(r for r in roots if r > 0)
    count = len(roots)
    if count == dim:
        free = False
    elif count == dim - 2 and dim % 4 == 0:
        free = True
    else:
        raise ValueError(
            f"{count} roots cannot shape a degree-{dim} polynomial of this parity")
    return ProductForm(dim, positive, has_zero, free)


@dataclass(frozen=True)
class BetaConstraint:
    """Solved constraints on the symbolic quadratic root b in dimension 4k+4."""

    upper_bound: Fraction        # b <= upper_bound < 0, from the Miyaoka-Yau sign
    factorial_square: int        # ((2k+1)!)^2, the constant-term factor
    chi_o_over_leading_bound: Fraction  # chi(O_X)/a <= this (strictly negative)

    def __str__(self) -> str:
        return (f"b <= {self.upper_bound} < 0, so chi(O) = a*b*{self.factorial_square} "
                f"<= {self.chi_o_over_leading_bound}*a < 0, contradicting chi(O) >= 0")


@dataclass(frozen=True)
class VanishingCertificate:
    """Transcript of one root-analysis contradiction.

    ``coeff_over_leading`` is the extracted quantity as an exact multiple of
    the leading coefficient a > 0; it is strictly negative, while the
    Riemann-Roch identification forces it to be non-negative.
    """

    dim: int
    parity_case: str                    # "odd-2k+1" | "even-4k+2" | "even-4k+4"
    k: int
    vanishing_range: tuple[int, int]    # h^0(L^i) assumed zero for i in this range
    product_form: str
    coefficient_power: int              # which t-power was extracted
    coeff_over_leading: Fraction
    riemann_roch_identity: str          # what that coefficient equals by Riemann-Roch
    conclusion: str
    beta: BetaConstraint | None = None

    def __post_init__(self) -> None:
        if self.coeff_over_leading >= 0:
            raise ValueError("certificate requires a strictly negative extracted coefficient")


def _square_pyramid(j: int) -> int:
    """1^2 + 2^2 + ... + j^2."""
    return j * (j + 1) * (2 * j + 1) // 6


def odd_certificate(k: int) -> VanishingCertificate:
    """Dimension 2k+1: coefficient of t^{2k-1} in the product form equals
    -(1^2 + ... + k^2) times a, but Riemann-Roch identifies it with
    int c_2 . L^{2k-1} / (12 (2k-1)!) >= 0 (Miyaoka-Yau)."""
    if k < 1:
        raise ValueError("odd case needs k >= 1")
    dim = 2 * k + 1
    form = chi_vanishing_poly(dim, range(-k, k + 1))
    coeff = unipoly.coefficient(form.base_coeffs(), 2 * k - 1)
    assert coeff == -_square_pyramid(k)
    return VanishingCertificate(
        dim=dim,
        parity_case="odd-2k+1",
        k=k,
        vanishing_range=(1, k),
        product_form=str(form),
        coefficient_power=2 * k - 1,
        coeff_over_leading=coeff,
        riemann_roch_identity=(
            f"coefficient of t^{2 * k - 1} = int c_2 . L^{2 * k - 1} / (12*(2k-1)!) >= 0"),
        conclusion=(
            f"coefficient is {coeff}*a < 0 with a > 0: contradiction, so some "
            f"L^i with 1 <= i <= {k} has a section"),
    )


def even_certificate_4k2(k: int) -> VanishingCertificate:
    """Dimension 4k+2: coefficient of t^{4k} equals -(1^2 + ... + (2k+1)^2)
    times a, against the same Miyaoka-Yau non-negativity."""
    if k < 0:
        raise ValueError("even case needs k >= 0")
    dim = 4 * k + 2
    j = 2 * k + 1
    form = chi_vanishing_poly(dim, [i for i in range(-j, j + 1) if i])
    coeff = unipoly.coefficient(form.base_coeffs(), 4 * k)
    assert coeff == -_square_pyramid(j)
    return VanishingCertificate(
        dim=dim,
        parity_case="even-4k+2",
        k=k,
        vanishing_range=(1, j),
        product_form=str(form),
        coefficient_power=4 * k,
        coeff_over_leading=coeff,
        riemann_roch_identity=(
            f"coefficient of t^{4 * k} = int c_2 . L^{4 * k} / (12*(4k)!) >= 0"),
        conclusion=(
            f"coefficient is {coeff}*a < 0 with a > 0: contradiction, so some "
            f"L^i with 1 <= i <= {j} has a section"),
    )


def even_certificate_4k4(k: int) -> VanishingCertificate:
    """Dimension 4k+4: the product form keeps one symbolic quadratic (t^2 - b).

    The t^{4k+2} coefficient is -(b + 1^2 + ... + (2k+1)^2) a; Miyaoka-Yau
    makes it non-negative, so b <= -(1^2+...+(2k+1)^2) < 0.  The constant term
    a b ((2k+1)!)^2 equals chi(O_X), which is then strictly negative,
    contradicting chi(O_X) >= 0.
    """
    if k < 0:
        raise ValueError("even case needs k >= 0")
    dim = 4 * k + 4
    j = 2 * k + 1
    form = chi_vanishing_poly(dim, [i for i in range(-j, j + 1) if i])
    base = form.base_coeffs()
    # f/a = base(t) * (t^2 - b): coefficient of t^{4k+2} is base[4k] - b,
    # with base[4k+2] = 1; the constant term is -b * base[0].
    assert unipoly.coefficient(base, 4 * k + 2) == 1
    pyramid = _square_pyramid(j)
    assert unipoly.coefficient(base, 4 * k) == -pyramid
    fact_sq = factorial(j) ** 2
    assert unipoly.coefficient(base, 0) == -fact_sq
    beta_bound = Fraction(-pyramid)
    chi_bound = beta_bound * fact_sq
    return VanishingCertificate(
        dim=dim,
        parity_case="even-4k+4",
        k=k,
        vanishing_range=(1, j),
        product_form=str(form),
        coefficient_power=4 * k + 2,
        coeff_over_leading=chi_bound,
        riemann_roch_identity=(
            f"coefficient of t^{4 * k + 2} = -(b + {pyramid})*a = "
            f"int c_2 . L^{4 * k + 2} / (12*(4k+2)!) >= 0; constant term = "
            f"a*b*{fact_sq} = chi(O_X)"),
        conclusion=(
            f"b <= {beta_bound}, hence chi(O_X) <= {chi_bound}*a < 0, contradicting "
            f"chi(O_X) >= 0, so some L^i with 1 <= i <= {j} has a section"),
        beta=BetaConstraint(beta_bound, fact_sq, chi_bound),
    )


def certificate_for_dim(n: int) -> VanishingCertificate:
    """The certificate matching the parity of n (n >= 2)."""
    if n < 2:
        raise ValueError(f"certificates need dimension >= 2, got {n}")
    if n % 2 == 1:
        return odd_certificate((n - 1) // 2)
    if n % 4 == 2:
        return even_certificate_4k2((n - 2) // 4)
    return even_certificate_4k4((n - 4) // 4)
