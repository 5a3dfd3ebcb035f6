"""Special-number sequences against independent oracles.

Oracles here avoid the library's code paths: power sums by direct loops,
box power sums by direct box enumeration, Bernoulli-Barnes numbers by a
power-series reciprocal that never touches Bernoulli numbers.
"""

import itertools
from fractions import Fraction
from math import factorial, lcm

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from denumerant import (
    alpha,
    bernoulli,
    bernoulli_barnes,
    faulhaber_sum,
    rising_factorial_coeffs,
    rising_factorial_eval,
)
from denumerant.numbers import iter_compositions

# classical values, B_1 = -1/2 convention
BERNOULLI_TABLE = [
    Fraction(1),
    Fraction(-1, 2),
    Fraction(1, 6),
    Fraction(0),
    Fraction(-1, 30),
    Fraction(0),
    Fraction(1, 42),
    Fraction(0),
    Fraction(-1, 30),
    Fraction(0),
    Fraction(5, 66),
    Fraction(0),
    Fraction(-691, 2730),
]


def series_reciprocal(g: list[Fraction], order: int) -> list[Fraction]:
    """Coefficients of 1/g(z) up to z^order, for g with nonzero constant term."""
    h = [Fraction(1) / g[0]]
    for n in range(1, order + 1):
        acc = Fraction(0)
        for k in range(1, n + 1):
            gk = g[k] if k < len(g) else Fraction(0)
            acc += gk * h[n - k]
        h.append(-acc / g[0])
    return h


def bernoulli_barnes_series_oracle(j: int, a: tuple[int, ...]) -> Fraction:
    """B_j(a) from the reciprocal of prod_i (e^{a_i z}-1)/z, no Bernoulli numbers."""
    order = j + 1
    prod_series = [Fraction(1)] + [Fraction(0)] * order
    for ai in a:
        f = [Fraction(ai ** (k + 1), factorial(k + 1)) for k in range(order + 1)]
        nxt = [Fraction(0)] * (order + 1)
        for p in range(order + 1):
            for q in range(order + 1 - p):
                nxt[p + q] += prod_series[p] * f[q]
        prod_series = nxt
    return factorial(j) * series_reciprocal(prod_series, j)[j]


class TestRisingFactorial:
    @pytest.mark.parametrize(
        "r,expected",
        [(1, (1,)), (2, (1, 1)), (3, (2, 3, 1)), (4, (6, 11, 6, 1))],
    )
    def test_small_expansions(self, r, expected):
        assert rising_factorial_coeffs(r) == expected

    def test_rejects_r_zero(self):
        with pytest.raises(ValueError):
            rising_factorial_coeffs(0)

    @pytest.mark.parametrize("x,r,expected", [(0, 4, 6), (-2, 4, 0), (5, 1, 1), (3, 0, 1)])
    def test_eval_examples(self, x, r, expected):
        assert rising_factorial_eval(x, r) == expected

    @given(st.integers(min_value=1, max_value=8), st.integers(min_value=-30, max_value=30))
    def test_coeffs_match_eval(self, r, x):
        coeffs = rising_factorial_coeffs(r)
        assert sum(c * x**k for k, c in enumerate(coeffs)) == rising_factorial_eval(x, r)

    def test_structure(self):
        for r in range(1, 10):
            coeffs = rising_factorial_coeffs(r)
            assert len(coeffs) == r
            assert coeffs[-1] == 1
            if r >= 2:
                assert all(c > 0 for c in coeffs)

    def test_vanishes_inside_negative_band(self):
        # (-c + 1)...(-c + r - 1) contains a zero factor for 1 <= c <= r-1
        for r in range(2, 7):
            for c in range(1, r):
                assert rising_factorial_eval(-c, r) == 0


class TestBernoulli:
    def test_table(self):
        for j, want in enumerate(BERNOULLI_TABLE):
            assert bernoulli(j) == want

    def test_odd_vanish(self):
        assert all(bernoulli(j) == 0 for j in range(3, 32, 2))

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            bernoulli(-1)

    def test_concurrent_fill(self):
        # hammer the memo table from scratch on several threads at once
        import importlib
        import threading

        import denumerant.numbers as numbers_module

        importlib.reload(numbers_module)
        results = []

        def worker():
            results.append([numbers_module.bernoulli(j) for j in range(40)])

        threads = [threading.Thread(target=worker) for _ in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        importlib.reload(numbers_module)  # restore the module-level cache for other tests
        assert all(row == results[0] for row in results)
        assert results[0][:13] == BERNOULLI_TABLE


class TestBernoulliBarnes:
    @pytest.mark.parametrize(
        "j,a,expected",
        [
            (0, (2, 3), Fraction(1, 6)),
            (1, (1, 1), Fraction(-1)),
            (1, (1, 2), Fraction(-3, 4)),
        ],
    )
    def test_examples(self, j, a, expected):
        assert bernoulli_barnes(j, a) == expected

    def test_degenerates_to_bernoulli(self):
        for j in range(11):
            assert bernoulli_barnes(j, (1,)) == bernoulli(j)

    def test_b0_is_reciprocal_product(self):
        assert bernoulli_barnes(0, (3, 4, 5)) == Fraction(1, 60)

    @pytest.mark.parametrize("a", [(1,), (2,), (1, 2), (2, 3), (1, 1, 1), (2, 3, 4)])
    def test_against_series_oracle(self, a):
        for j in range(6):
            assert bernoulli_barnes(j, a) == bernoulli_barnes_series_oracle(j, a)

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            bernoulli_barnes(1, ())


class TestFaulhaber:
    @pytest.mark.parametrize("n,k,expected", [(5, 1, 10), (3, 2, 5), (1, 7, 0)])
    def test_examples(self, n, k, expected):
        got = faulhaber_sum(n, k)
        assert got == expected and got.denominator == 1

    @given(st.integers(min_value=0, max_value=50), st.integers(min_value=1, max_value=10))
    def test_matches_direct_loop(self, n, k):
        assert faulhaber_sum(n, k) == sum(m**k for m in range(1, n))

    def test_k_zero_counts_terms(self):
        for n in range(8):
            assert faulhaber_sum(n, 0) == n


class TestAlpha:
    @pytest.mark.parametrize(
        "t,a,d,expected",
        [(0, (2, 3), 6, 6), (1, (1, 2), 2, 1), (2, (1, 2), 2, 1)],
    )
    def test_examples(self, t, a, d, expected):
        assert alpha(t, a, d) == expected

    @staticmethod
    def direct_box_sum(t, a, d):
        ranges = [range(d // ai) for ai in a]
        return sum(
            sum(ai * ji for ai, ji in zip(a, j)) ** t
            for j in itertools.product(*ranges)
        )

    @settings(max_examples=60, deadline=None)
    @given(
        st.lists(st.integers(min_value=1, max_value=6), min_size=1, max_size=3),
        st.integers(min_value=0, max_value=5),
    )
    def test_matches_direct_box_sum(self, a, t):
        a = tuple(a)
        d = lcm(*a)
        assert alpha(t, a, d) == self.direct_box_sum(t, a, d)

    def test_d_invariance_not_expected_here(self):
        # alpha depends on D (the box changes); only the residues built from it
        # are D-invariant.  Double the period and the box quadruples per axis.
        assert alpha(0, (1, 2), 2) == 2
        assert alpha(0, (1, 2), 4) == 8

    def test_rejects_non_multiple(self):
        with pytest.raises(ValueError):
            alpha(1, (2, 3), 8)


class TestCompositions:
    def test_lexicographic_and_complete(self):
        got = list(iter_compositions(3, 2))
        assert got == [(0, 3), (1, 2), (2, 1), (3, 0)]
        assert got == sorted(got)

    def test_counts(self):
        from math import comb

        for total in range(6):
            for parts in range(1, 5):
                n = sum(1 for _ in iter_compositions(total, parts))
                assert n == comb(total + parts - 1, parts - 1)
