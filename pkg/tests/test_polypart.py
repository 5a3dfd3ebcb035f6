"""Polynomial part and Dirichlet residues: four routes, one polynomial."""

from fractions import Fraction
from math import factorial, prod

import pytest

from denumerant import (
    format_polynomial,
    make_instance,
    p_oracle_upto,
    polynomial_from_json,
    polynomial_to_json,
    polypart_bernoulli,
    polypart_box_average,
    polypart_from_residues,
    quasipoly,
    residues_bernoulli_barnes,
    residues_powersum,
    sample_instances,
)
from denumerant.polypart import RationalPolynomial

F = Fraction


def poly_of(*coeffs):
    return RationalPolynomial(coeffs=tuple(F(c) for c in coeffs))


class TestBoxAverage:
    @pytest.mark.parametrize(
        "a,expected",
        [
            ((1, 2), (F(3, 4), F(1, 2))),
            ((1,), (F(1),)),
            ((1, 1), (F(1), F(1))),
        ],
    )
    def test_examples(self, a, expected):
        assert polypart_box_average(a).coeffs == expected


class TestBernoulliRoute:
    @pytest.mark.parametrize(
        "a,expected",
        [
            ((1, 2), (F(3, 4), F(1, 2))),
            ((1, 1), (F(1), F(1))),
            ((1,), (F(1),)),
        ],
    )
    def test_examples(self, a, expected):
        assert polypart_bernoulli(a).coeffs == expected


class TestResidues:
    def test_powersum_examples(self):
        res = residues_powersum((1, 2))
        assert (res.residue_at(1), res.residue_at(2)) == (F(3, 4), F(1, 2))
        assert residues_powersum((1,)).residue_at(1) == 1
        assert residues_powersum((2, 3)).residue_at(2) == F(1, 6)

    def test_barnes_examples(self):
        res = residues_bernoulli_barnes((1, 2))
        assert (res.residue_at(1), res.residue_at(2)) == (F(3, 4), F(1, 2))

    def test_top_residue_law(self):
        for a in [(1,), (2, 3), (3, 4, 5), (2, 2, 2), (4, 6, 9, 10)]:
            want = F(1, factorial(len(a) - 1) * prod(a))
            assert residues_bernoulli_barnes(a).residue_at(len(a)) == want
            assert residues_powersum(a).residue_at(len(a)) == want

    def test_known_cubic_case(self):
        # p(n) for a=(1,1,1) is (n^2+3n+2)/2, so the residues are direct
        res = residues_bernoulli_barnes((1, 1, 1))
        assert res.values == (F(1), F(3, 2), F(1, 2))
        assert residues_powersum((1, 1, 1)).values == res.values

    def test_powersum_d_invariant(self):
        for a in [(2, 3), (4, 6), (2, 3, 4)]:
            lcm_route = residues_powersum(a, "lcm")
            assert residues_powersum(a, "product").values == lcm_route.values
            assert residues_powersum(a, 2 * make_instance(a).D).values == lcm_route.values

    def test_assembly(self):
        assert polypart_from_residues(residues_powersum((1, 2))).coeffs == (F(3, 4), F(1, 2))
        assert polypart_from_residues(residues_bernoulli_barnes((2, 3))).coeffs == (
            F(5, 12),
            F(1, 6),
        )

    def test_residue_at_bounds(self):
        res = residues_powersum((2, 3))
        with pytest.raises(ValueError):
            res.residue_at(0)
        with pytest.raises(ValueError):
            res.residue_at(3)


class TestCrossRouteAgreement:
    def test_four_routes(self):
        pool = sample_instances(30, max_r=4, max_entry=12, seed=11, box_budget=8000)
        for a in pool:
            box = polypart_box_average(a).coeffs
            assert polypart_bernoulli(a).coeffs == box
            assert polypart_from_residues(residues_powersum(a)).coeffs == box
            assert polypart_from_residues(residues_bernoulli_barnes(a)).coeffs == box

    def test_box_average_d_invariant(self):
        for a in [(2, 3), (4, 6), (1, 2, 3)]:
            want = polypart_box_average(a, "lcm").coeffs
            assert polypart_box_average(a, "product").coeffs == want
            assert polypart_box_average(a, 2 * make_instance(a).D).coeffs == want

    def test_residues_are_column_means(self):
        for a in [(2, 3), (4, 6), (2, 3, 4), (3, 3, 5)]:
            qp = quasipoly(a)
            d = qp.instance.D
            res = residues_powersum(a)
            for m in range(1, len(a) + 1):
                assert sum(qp.coeffs[m - 1], F(0)) / d == res.residue_at(m)

    def test_leading_coefficient_law(self):
        for a in [(2,), (2, 3), (4, 6), (2, 3, 4), (6, 10, 15)]:
            lead = polypart_box_average(a).coeffs[-1]
            assert lead == F(1, factorial(len(a) - 1) * prod(a))


class TestPolynomialBehavior:
    def test_exact_when_p_is_polynomial(self):
        for a in [(1,), (1, 1), (1, 1, 1)]:
            poly = polypart_bernoulli(a)
            horizon = 5 * make_instance(a).D
            table = p_oracle_upto(a, horizon)
            for n in range(horizon + 1):
                assert poly.evaluate(n) == table[n]

    def test_bounded_deviation_for_gcd_one(self):
        for a in [(2, 3), (3, 5), (3, 4, 5)]:
            inst = make_instance(a)
            poly = polypart_bernoulli(a)
            table = p_oracle_upto(a, 5 * inst.D)
            deviation = max(abs(F(table[n]) - poly.evaluate(n)) for n in range(5 * inst.D + 1))
            # the periodic fluctuation never grows with n
            tail = max(
                abs(F(table[n]) - poly.evaluate(n))
                for n in range(4 * inst.D, 5 * inst.D + 1)
            )
            assert tail <= deviation


class TestRendering:
    @pytest.mark.parametrize(
        "coeffs,expected",
        [
            ((F(3, 4), F(1, 2)), "1/2·n + 3/4"),
            ((F(1), F(1)), "n + 1"),
            ((F(1),), "1"),
            ((F(0), F(-1, 3), F(2)), "2·n^2 - 1/3·n"),
            ((F(0),), "0"),
        ],
    )
    def test_pretty(self, coeffs, expected):
        assert format_polynomial(RationalPolynomial(coeffs=coeffs)) == expected

    def test_json_round_trip(self):
        poly = polypart_bernoulli((2, 3, 4))
        blob = polynomial_to_json(poly)
        assert all(isinstance(part, str) for pair in blob for part in pair)
        assert polynomial_from_json(blob) == poly
