"""Exact special-number sequences used by the counting formulas.

Everything here is computed in exact rational arithmetic (``fractions.Fraction``);
no floating point appears anywhere in this package's math.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterator, Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "rising_factorial_coeffs",
    "rising_factorial_eval",
    "bernoulli",
    "bernoulli_barnes",
    "faulhaber_sum",
    "alpha",
    "iter_compositions",
]


@lru_cache(maxsize=None)
def rising_factorial_coeffs(r: int) -> tuple[int, ...]:
    """Coefficients c[k] of x^k in the expansion of (x+1)(x+2)...(x+r-1).

    These are unsigned Stirling-style numbers in the shifted convention where
    the product starts at x+1 rather than x.  The degenerate r=1 case (empty
    product) gives (1,).  The returned tuple always has length r with c[r-1]=1.
    """
    if r < 1:
        raise ValueError(f"need r >= 1, got {r}")
    coeffs = [1]
    for ell in range(1, r):
        nxt = [0] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k] += c * ell
            nxt[k + 1] += c
        coeffs = nxt
    return tuple(coeffs)


def rising_factorial_eval(x: int, r: int) -> int:
    """Evaluate (x+1)(x+2)...(x+r-1); the empty product (r <= 1) is 1."""
    if r < 0:
        raise ValueError(f"need r >= 0, got {r}")
    out = 1
    for ell in range(1, r):
        out *= x + ell
    return out


# Bernoulli numbers in the B_1 = -1/2 convention (generating function
# z/(e^z - 1)), filled on demand under a lock so concurrent readers are safe.
_BERNOULLI: list[Fraction] = [Fraction(1)]
_BERNOULLI_LOCK = threading.Lock()


def bernoulli(j: int) -> Fraction:
    """The j-th Bernoulli number, B_1 = -1/2 convention.

    Computed once by the recurrence sum_{i=0}^{m} C(m+1,i) B_i = 0 and cached.
    """
    if j < 0:
        raise ValueError(f"need j >= 0, got {j}")
    if j >= len(_BERNOULLI):
        with _BERNOULLI_LOCK:
            while len(_BERNOULLI) <= j:
                m = len(_BERNOULLI)
                acc = sum(comb(m + 1, i) * _BERNOULLI[i] for i in range(m))
                _BERNOULLI.append(Fraction(-acc, m + 1))
    return _BERNOULLI[j]


def iter_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Yield all tuples of `parts` nonnegative integers summing to `total`.

    Order is lexicographic, so enumeration is deterministic.
    """
    if parts < 1:
        raise ValueError(f"need parts >= 1, got {parts}")
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in iter_compositions(total - head, parts - 1):
            yield (head,) + tail


def _validate_weights(a: Sequence[int]) -> tuple[int, ...]:
    a = tuple(a)
    if not a:
        raise ValueError("weight tuple must be nonempty")
    for x in a:
        if not isinstance(x, int) or isinstance(x, bool) or x < 1:
            raise ValueError(f"weights must be positive integers, got {a!r}")
    return a


def bernoulli_barnes(j: int, a: Sequence[int]) -> Fraction:
    """Bernoulli-Barnes number B_j(a_1,...,a_r).

    Expanded as the multinomial sum over compositions i_1+...+i_r = j of
    C(j; i_1,...,i_r) * B_{i_1}...B_{i_r} * a_1^{i_1-1}...a_r^{i_r-1}.
    The a_i^{i-1} exponents make the result rational; B_0(a) = 1/(a_1...a_r).
    Compositions with an odd Bernoulli index >= 3 contribute nothing and
    are skipped.
    """
    if j < 0:
        raise ValueError(f"need j >= 0, got {j}")
    a = _validate_weights(a)
    r = len(a)
    total = Fraction(0)
    for comp in iter_compositions(j, r):
        bprod = Fraction(1)
        for i in comp:
            b = bernoulli(i)
            if not b:
                break
            bprod *= b
        else:
            coeff = factorial(j)
            for i in comp:
                coeff //= factorial(i)
            term = coeff * bprod
            for ai, i in zip(a, comp):
                term *= Fraction(ai) ** (i - 1)
            total += term
    return total


def faulhaber_sum(n: int, k: int) -> Fraction:
    """Power sum 0^k + 1^k + ... + (n-1)^k as an exact (integer-valued) Fraction.

    For k > 0 this is evaluated through the Bernoulli expansion
    (1/(k+1)) * sum_j C(k+1,j) B_j n^{k+1-j}; for k = 0 it counts the n terms
    m = 0..n-1 (0^0 taken as 1), which is the convention the box power sums
    below rely on.
    """
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    if k < 0:
        raise ValueError(f"need k >= 0, got {k}")
    if k == 0:
        return Fraction(n)
    acc = Fraction(0)
    for j in range(k + 1):
        b = bernoulli(j)
        if b:
            acc += comb(k + 1, j) * b * n ** (k + 1 - j)
    return acc / (k + 1)


def _alpha_factor(i: int, ai: int, d: int) -> Fraction:
    # sum_{l=0}^{i} B_l * D^{i+1-l} * a^{l-1} / ((i+1-l)! l!)
    acc = Fraction(0)
    for ell in range(i + 1):
        b = bernoulli(ell)
        if b:
            acc += (
                b
                * d ** (i + 1 - ell)
                * Fraction(ai) ** (ell - 1)
                / (factorial(i + 1 - ell) * factorial(ell))
            )
    return acc


def alpha(t: int, a: Sequence[int], d: int) -> Fraction:
    """Power sum of a.j over the box 0 <= j_i <= D/a_i - 1, degree t.

    Returns sum over the box of (a_1 j_1 + ... + a_r j_r)^t, evaluated by a
    Bernoulli closed form (no box enumeration): t! times the sum over
    compositions i_1+...+i_r = t of the per-axis factors
    sum_l B_l D^{i+1-l} a^{l-1} / ((i+1-l)! l!).  The result is always an
    integer-valued Fraction.
    """
    if t < 0:
        raise ValueError(f"need t >= 0, got {t}")
    a = _validate_weights(a)
    if d < 1 or any(d % ai for ai in a):
        raise ValueError(f"{d} is not a common multiple of {a}")
    factors = [[_alpha_factor(i, ai, d) for i in range(t + 1)] for ai in a]
    total = Fraction(0)
    for comp in iter_compositions(t, len(a)):
        term = Fraction(1)
        for axis, i in enumerate(comp):
            term *= factors[axis][i]
            if not term:
                break
        total += term
    total *= factorial(t)
    if total.denominator != 1:
        raise ArithmeticError(f"alpha({t}, {a}, {d}) came out non-integral: {total}")
    return total
