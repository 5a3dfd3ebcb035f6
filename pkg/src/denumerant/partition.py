"""Counting routes for the restricted partition function p_a(n).

p_a(n) is the number of solutions of a_1 x_1 + ... + a_r x_r = n in
nonnegative integers.  It is a quasi-polynomial of degree r-1 whose
coefficients have period D (any common multiple of the a_i), and this module
computes it by several independent routes that must agree exactly:

* :func:`p_oracle`       -- definitional dynamic programming (coefficient of
                            z^n in prod 1/(1-z^{a_i})); the ground truth.
* :func:`p_product`      -- rising-factorial product summed over one fiber.
* :func:`p_stirling`     -- degree-by-degree Stirling-coefficient sum over
                            the same fiber.
* :func:`quasipoly`      -- the full degree-by-residue coefficient table,
                            evaluated by :func:`p_quasipoly`.
* :func:`p_popoviciu`    -- the O(log) two-weight closed form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, gcd, lcm
from typing import Sequence

from .congruence import (
    DEFAULT_MAX_BOX,
    DChoice,
    Fiber,
    FiberIndex,
    Instance,
    build_fiber_index,
    fiber,
    make_instance,
)
from .numbers import rising_factorial_coeffs, rising_factorial_eval

__all__ = [
    "QuasiPolynomial",
    "p_oracle",
    "p_oracle_upto",
    "p_product",
    "p_stirling",
    "quasipoly",
    "p_quasipoly",
    "p_popoviciu",
    "is_zero",
    "p_unrestricted",
    "p",
    "quasipoly_to_json",
    "quasipoly_from_json",
]


@dataclass(frozen=True)
class QuasiPolynomial:
    """Periodic-coefficient representation of p_a: coeffs[m][v] multiplies n^m
    for n congruent to v mod D.  Every column is stored, including the
    identically-zero ones at residues not divisible by gcd(a)."""

    instance: Instance
    coeffs: tuple[tuple[Fraction, ...], ...]

    def coefficient(self, m: int, v: int) -> Fraction:
        return self.coeffs[m][v % self.instance.D]


def _check_n(n: int) -> int:
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ValueError(f"n must be a nonnegative integer, got {n!r}")
    return n


def _exact_div(total: int, den: int, what: str) -> int:
    q, rem = divmod(total, den)
    if rem:
        raise ArithmeticError(f"{what}: {total} is not divisible by {den}")
    return q


def _resolve_fiber(
    a: Sequence[int],
    n: int,
    d_choice: DChoice,
    index: FiberIndex | None,
    max_box: int,
) -> tuple[Instance, Fiber]:
    if index is not None:
        if index.instance.a != tuple(a):
            raise ValueError(
                f"index was built for {index.instance.a}, not {tuple(a)}"
            )
        return index.instance, index.fiber(n)
    inst = make_instance(a, d_choice)
    return inst, fiber(inst, n, max_box)


def p_oracle(a: Sequence[int], n: int) -> int:
    """p_a(n) by dynamic programming over the weights; the definitional count."""
    return p_oracle_upto(a, n)[n]


def p_oracle_upto(a: Sequence[int], n_max: int) -> list[int]:
    """All of p_a(0..n_max) in one DP sweep (arbitrary precision)."""
    _check_n(n_max)
    inst = make_instance(a)  # validates the weights
    ways = [0] * (n_max + 1)
    ways[0] = 1
    for ai in inst.a:
        for v in range(ai, n_max + 1):
            ways[v] += ways[v - ai]
    return ways


def p_product(
    a: Sequence[int],
    n: int,
    d_choice: DChoice = "lcm",
    *,
    index: FiberIndex | None = None,
    max_box: int = DEFAULT_MAX_BOX,
) -> int:
    """p_a(n) as (1/(r-1)!) * sum over the fiber of n of the rising factorial
    of (n - a.j)/D.  Pass a prebuilt `index` to amortize fiber construction."""
    _check_n(n)
    inst, fib = _resolve_fiber(a, n, d_choice, index, max_box)
    r, d = inst.r, inst.D
    total = 0
    for s in fib.sums:
        total += rising_factorial_eval((n - s) // d, r)
    return _exact_div(total, factorial(r - 1), f"p_product{tuple(a), n}")


def _stirling_row(r: int, d: int, sums: Sequence[int]) -> list[int]:
    """Integer accumulators c[m] = sum over fiber sums s of
    sum_{k=m}^{r-1} bracket[k] (-1)^{k-m} C(k,m) D^{r-1-k} s^{k-m}.

    Dividing c[m] by D^{r-1} (r-1)! gives the degree-m quasi-polynomial
    coefficient for this fiber's residue class."""
    bracket = rising_factorial_coeffs(r)
    dpow = [d ** (r - 1 - k) for k in range(r)]
    row = [0] * r
    for s in sums:
        spow = [1] * r
        for i in range(1, r):
            spow[i] = spow[i - 1] * s
        for m in range(r):
            acc = 0
            for k in range(m, r):
                term = bracket[k] * comb(k, m) * dpow[k] * spow[k - m]
                acc = acc - term if (k - m) & 1 else acc + term
            row[m] += acc
    return row


def p_stirling(
    a: Sequence[int],
    n: int,
    d_choice: DChoice = "lcm",
    *,
    index: FiberIndex | None = None,
    max_box: int = DEFAULT_MAX_BOX,
) -> int:
    """p_a(n) by the degree-wise Stirling-coefficient sum over the fiber of n.

    Algebraically identical to :func:`p_product` but follows the power-basis
    form: for each degree m it sums the alternating Stirling kernel over the
    fiber, then evaluates sum_m c_m n^m / ((r-1)! D^{r-1})."""
    _check_n(n)
    inst, fib = _resolve_fiber(a, n, d_choice, index, max_box)
    r, d = inst.r, inst.D
    row = _stirling_row(r, d, fib.sums)
    total = 0
    npow = 1
    for m in range(r):
        total += row[m] * npow
        npow *= n
    scale = d ** (r - 1) * factorial(r - 1)
    return _exact_div(total, scale, f"p_stirling{tuple(a), n}")


def quasipoly(
    a: Sequence[int],
    d_choice: DChoice = "lcm",
    *,
    index: FiberIndex | None = None,
    max_box: int = DEFAULT_MAX_BOX,
) -> QuasiPolynomial:
    """The full coefficient table d[m][v] of the quasi-polynomial p_a."""
    if index is None:
        index = build_fiber_index(make_instance(a, d_choice), max_box)
    elif index.instance.a != tuple(a):
        raise ValueError(f"index was built for {index.instance.a}, not {tuple(a)}")
    inst = index.instance
    r, d = inst.r, inst.D
    scale = d ** (r - 1) * factorial(r - 1)
    table = [[0] * d for _ in range(r)]
    for v, fib in index.fibers.items():
        row = _stirling_row(r, d, fib.sums)
        for m in range(r):
            table[m][v] = row[m]
    coeffs = tuple(
        tuple(Fraction(num, scale) for num in table[m]) for m in range(r)
    )
    return QuasiPolynomial(instance=inst, coeffs=coeffs)


def p_quasipoly(qp: QuasiPolynomial, n: int) -> int:
    """Evaluate a quasi-polynomial table at n; the rational sum must clear its
    denominator (anything else means the table is corrupt)."""
    _check_n(n)
    d = qp.instance.D
    v = n % d
    total = Fraction(0)
    npow = 1
    for m in range(qp.instance.r):
        total += qp.coeffs[m][v] * npow
        npow *= n
    if total.denominator != 1:
        raise ArithmeticError(f"quasi-polynomial evaluation at {n} is not integral: {total}")
    return int(total)


def p_popoviciu(a1: int, a2: int, n: int) -> int:
    """p_(a1,a2)(n) for coprime a1, a2 by the closed form
    (n + a1*a1'(n) + a2*a2'(n)) / (a1*a2) - 1, where a1'(n) is the unique
    representative in 1..a2 of -n/a1 mod a2 (symmetrically for a2'(n)).
    Runs in O(log) time; no enumeration."""
    if a1 < 1 or a2 < 1:
        raise ValueError(f"weights must be positive, got {(a1, a2)}")
    _check_n(n)
    if gcd(a1, a2) != 1:
        raise ValueError(f"p_popoviciu needs coprime weights, got {(a1, a2)}")
    a1p = (-n * pow(a1, -1, a2)) % a2 or a2
    a2p = (-n * pow(a2, -1, a1)) % a1 or a1
    return _exact_div(n + a1 * a1p + a2 * a2p, a1 * a2, f"p_popoviciu{(a1, a2, n)}") - 1


def is_zero(
    a: Sequence[int],
    n: int,
    d_choice: DChoice = "lcm",
    *,
    index: FiberIndex | None = None,
    max_box: int = DEFAULT_MAX_BOX,
) -> bool:
    """True iff p_a(n) = 0: every weighted sum in the fiber of n exceeds n
    (vacuously true when the fiber is empty)."""
    _check_n(n)
    _, fib = _resolve_fiber(a, n, d_choice, index, max_box)
    return all(s > n for s in fib.sums)


def p_unrestricted(n: int, max_box: int = DEFAULT_MAX_BOX) -> int:
    """The unrestricted partition number p(n), computed as p_(1,2,...,n)(n)
    through the fiber machinery with D = lcm(1..n).

    The box has prod_i D/i tuples, which explodes quickly (n = 6 needs ~6.5e7
    already), so this route is a demonstration for small n; use
    p_oracle(range(1, n+1), n) for anything larger."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"need a positive integer, got {n!r}")
    a = tuple(range(1, n + 1))
    return p_product(a, n, lcm(*a), max_box=max_box)


def p(
    a: Sequence[int],
    n: int,
    d_choice: DChoice = "lcm",
    *,
    max_box: int = DEFAULT_MAX_BOX,
) -> int:
    """Convenience entry point with route selection.

    r = 1 is a divisibility test; coprime pairs go through Popoviciu;
    otherwise the product formula is used when the box fits the guard, and the
    DP oracle when it does not."""
    _check_n(n)
    inst = make_instance(a, d_choice)
    if inst.r == 1:
        return 1 if n % inst.a[0] == 0 else 0
    if inst.r == 2 and inst.g == 1:
        return p_popoviciu(inst.a[0], inst.a[1], n)
    if inst.box_size <= max_box:
        return p_product(a, n, d_choice, max_box=max_box)
    return p_oracle(a, n)


def quasipoly_to_json(qp: QuasiPolynomial) -> dict:
    """JSON-ready dict {a, D, coeffs}; coeffs is row-major by degree m then
    residue v, each entry a [numerator, denominator] pair of decimal strings."""
    return {
        "a": [str(x) for x in qp.instance.a],
        "D": str(qp.instance.D),
        "coeffs": [
            [str(c.numerator), str(c.denominator)]
            for row in qp.coeffs
            for c in row
        ],
    }


def quasipoly_from_json(data: dict) -> QuasiPolynomial:
    """Inverse of :func:`quasipoly_to_json` (D is taken as given)."""
    a = tuple(int(x) for x in data["a"])
    inst = make_instance(a, int(data["D"]))
    d, r = inst.D, inst.r
    flat = [Fraction(int(num), int(den)) for num, den in data["coeffs"]]
    if len(flat) != r * d:
        raise ValueError(f"expected {r * d} coefficients, got {len(flat)}")
    coeffs = tuple(tuple(flat[m * d : (m + 1) * d]) for m in range(r))
    return QuasiPolynomial(instance=inst, coeffs=coeffs)
