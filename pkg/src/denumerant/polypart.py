"""Polynomial part P_a(n) and Dirichlet-series residues R_m.

P_a is the polynomial component of the quasi-polynomial p_a (the part left
after averaging the periodic coefficients over a period), and R_m is the
residue at s = m of the Dirichlet series sum p_a(n)/n^s.  The two are tied
together by P_a(n) = R_r n^{r-1} + ... + R_2 n + R_1, and each side is
computable by two independent formulas, giving four cross-checkable routes
to the same polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, prod
from typing import Sequence

from .congruence import (
    DEFAULT_MAX_BOX,
    DChoice,
    FiberIndex,
    iter_box_sums,
    make_instance,
)
from .numbers import alpha, bernoulli, bernoulli_barnes, iter_compositions, rising_factorial_coeffs

__all__ = [
    "RationalPolynomial",
    "ResidueVector",
    "polypart_box_average",
    "polypart_bernoulli",
    "residues_powersum",
    "residues_bernoulli_barnes",
    "polypart_from_residues",
    "polynomial_to_json",
    "polynomial_from_json",
    "format_polynomial",
]


@dataclass(frozen=True)
class RationalPolynomial:
    """Dense exact-rational polynomial; coeffs[k] multiplies n^k."""

    coeffs: tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, n: int) -> Fraction:
        total = Fraction(0)
        npow = 1
        for c in self.coeffs:
            total += c * npow
            npow *= n
        return total

    def __str__(self) -> str:
        return format_polynomial(self)


@dataclass(frozen=True)
class ResidueVector:
    """Residues of the Dirichlet series at s = 1..r; values[m-1] is R_m."""

    values: tuple[Fraction, ...]

    @property
    def r(self) -> int:
        return len(self.values)

    def residue_at(self, m: int) -> Fraction:
        if not 1 <= m <= self.r:
            raise ValueError(f"m must be in 1..{self.r}, got {m}")
        return self.values[m - 1]


def _leading_check(coeffs: Sequence[Fraction], a: Sequence[int], what: str) -> None:
    expect = Fraction(1, factorial(len(a) - 1) * prod(a))
    if coeffs[-1] != expect:
        raise ArithmeticError(
            f"{what}: leading coefficient {coeffs[-1]} != {expect} for {tuple(a)}"
        )


def polypart_box_average(
    a: Sequence[int],
    d_choice: DChoice = "lcm",
    *,
    index: FiberIndex | None = None,
    max_box: int = DEFAULT_MAX_BOX,
) -> RationalPolynomial:
    """P_a(n) as the box average: (1/(D(r-1)!)) times the sum over the WHOLE
    box of the rising factorial of (n - a.j)/D, expanded symbolically in n.

    The expansion substitutes x = (n - s)/D into the rising-factorial
    coefficient form, so the result is exact; no interpolation happens.
    """
    if index is not None:
        if index.instance.a != tuple(a):
            raise ValueError(f"index was built for {index.instance.a}, not {tuple(a)}")
        inst = index.instance
        sums = (s for f in index.fibers.values() for s in f.sums)
    else:
        inst = make_instance(a, d_choice)
        sums = iter_box_sums(inst, max_box)
    r, d = inst.r, inst.D
    bracket = rising_factorial_coeffs(r)
    dpow = [d ** (r - 1 - k) for k in range(r)]
    acc = [0] * r
    for s in sums:
        spow = [1] * r
        for i in range(1, r):
            spow[i] = spow[i - 1] * s
        for m in range(r):
            val = 0
            for k in range(m, r):
                term = bracket[k] * comb(k, m) * dpow[k] * spow[k - m]
                val = val - term if (k - m) & 1 else val + term
            acc[m] += val
    scale = d**r * factorial(r - 1)
    coeffs = tuple(Fraction(c, scale) for c in acc)
    _leading_check(coeffs, inst.a, "polypart_box_average")
    return RationalPolynomial(coeffs=coeffs)


def polypart_bernoulli(a: Sequence[int]) -> RationalPolynomial:
    """P_a(n) from Bernoulli products alone; cost polynomial in r, no box.

    (1/prod a) * sum_{u=0}^{r-1} ((-1)^u/(r-1-u)!) *
    sum over compositions i of u of (B_{i_1}...B_{i_r}/(i_1!...i_r!)) *
    a_1^{i_1}...a_r^{i_r} * n^{r-1-u}.
    """
    inst = make_instance(a)
    r = inst.r
    coeffs = [Fraction(0)] * r
    for u in range(r):
        inner = Fraction(0)
        for comp in iter_compositions(u, r):
            term = Fraction(1)
            for ai, i in zip(inst.a, comp):
                b = bernoulli(i)
                if not b:
                    term = Fraction(0)
                    break
                term *= b * ai**i / factorial(i)
            inner += term
        sign = -1 if u & 1 else 1
        coeffs[r - 1 - u] = sign * inner / factorial(r - 1 - u)
    pa = prod(inst.a)
    coeffs = tuple(c / pa for c in coeffs)
    _leading_check(coeffs, inst.a, "polypart_bernoulli")
    return RationalPolynomial(coeffs=coeffs)


def residues_powersum(a: Sequence[int], d_choice: DChoice = "lcm") -> ResidueVector:
    """R_m (m = 1..r) via the Stirling kernel applied to the closed-form box
    power sums alpha_t; the alpha values depend on the chosen D, the residues
    do not."""
    inst = make_instance(a, d_choice)
    r, d = inst.r, inst.D
    bracket = rising_factorial_coeffs(r)
    values = []
    for m in range(1, r + 1):
        acc = Fraction(0)
        for k in range(m - 1, r):
            term = (
                bracket[k]
                * comb(k, m - 1)
                * Fraction(1, d**k)
                * alpha(k - m + 1, inst.a, d)
            )
            acc = acc - term if (k - m + 1) & 1 else acc + term
        values.append(acc / (d * factorial(r - 1)))
    return ResidueVector(values=tuple(values))


def residues_bernoulli_barnes(a: Sequence[int]) -> ResidueVector:
    """R_m = ((-1)^{r-m}/((m-1)!(r-m)!)) * B_{r-m}(a_1,...,a_r).

    The (r-m)! undoes the multinomial normalization baked into the
    Bernoulli-Barnes expansion; dropping it inflates R_m by exactly that
    factor for r - m >= 2 (easily seen on a = (1,1,1), whose residues can be
    read straight off p(n) = (n^2+3n+2)/2)."""
    inst = make_instance(a)
    r = inst.r
    values = []
    for m in range(1, r + 1):
        sign = -1 if (r - m) & 1 else 1
        values.append(
            sign * bernoulli_barnes(r - m, inst.a) / (factorial(m - 1) * factorial(r - m))
        )
    return ResidueVector(values=tuple(values))


def polypart_from_residues(res: ResidueVector) -> RationalPolynomial:
    """Assemble P(n) = R_r n^{r-1} + ... + R_2 n + R_1."""
    return RationalPolynomial(coeffs=tuple(res.values))


def polynomial_to_json(poly: RationalPolynomial) -> list[list[str]]:
    """[[num, den], ...] by ascending power, decimal strings."""
    return [[str(c.numerator), str(c.denominator)] for c in poly.coeffs]


def polynomial_from_json(data: Sequence[Sequence[str]]) -> RationalPolynomial:
    return RationalPolynomial(
        coeffs=tuple(Fraction(int(num), int(den)) for num, den in data)
    )


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_polynomial(poly: RationalPolynomial, var: str = "n") -> str:
    """Human rendering like '1/2·n + 3/4', highest power first."""
    parts: list[str] = []
    for k in range(len(poly.coeffs) - 1, -1, -1):
        c = poly.coeffs[k]
        if not c:
            continue
        mag = abs(c)
        if k == 0:
            body = _format_coeff(mag)
        else:
            power = var if k == 1 else f"{var}^{k}"
            body = power if mag == 1 else f"{_format_coeff(mag)}·{power}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts) if parts else "0"
