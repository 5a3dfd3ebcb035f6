"""Exact-arithmetic toolkit for restricted partition counting.

Computes the restricted partition function p_a(n) (the denumerant), its
quasi-polynomial coefficient table, its polynomial part, the residues of its
Dirichlet series, and Frobenius numbers, each by at least two independent
routes that are cross-validated against a definitional dynamic-programming
oracle.  All arithmetic is exact.
"""

from .congruence import (
    DEFAULT_MAX_BOX,
    BoxTooLargeError,
    Fiber,
    FiberIndex,
    Instance,
    build_fiber_index,
    fiber,
    fiber_index_from_json,
    fiber_index_to_json,
    make_instance,
)
from .frobenius import (
    FrobeniusResult,
    frobenius_general,
    frobenius_pair,
    representability_scan,
)
from .numbers import (
    Rational,
    alpha,
    bernoulli,
    bernoulli_barnes,
    faulhaber_sum,
    rising_factorial_coeffs,
    rising_factorial_eval,
)
from .partition import (
    QuasiPolynomial,
    is_zero,
    p,
    p_oracle,
    p_oracle_upto,
    p_popoviciu,
    p_product,
    p_quasipoly,
    p_stirling,
    p_unrestricted,
    quasipoly,
    quasipoly_from_json,
    quasipoly_to_json,
)
from .polypart import (
    RationalPolynomial,
    ResidueVector,
    format_polynomial,
    polynomial_from_json,
    polynomial_to_json,
    polypart_bernoulli,
    polypart_box_average,
    polypart_from_residues,
    residues_bernoulli_barnes,
    residues_powersum,
)
from .selfcheck import SelfCheckReport, run_selfcheck, sample_instances

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_MAX_BOX",
    "BoxTooLargeError",
    "Fiber",
    "FiberIndex",
    "FrobeniusResult",
    "Instance",
    "QuasiPolynomial",
    "Rational",
    "RationalPolynomial",
    "ResidueVector",
    "SelfCheckReport",
    "alpha",
    "bernoulli",
    "bernoulli_barnes",
    "build_fiber_index",
    "faulhaber_sum",
    "fiber",
    "fiber_index_from_json",
    "fiber_index_to_json",
    "format_polynomial",
    "frobenius_general",
    "frobenius_pair",
    "is_zero",
    "make_instance",
    "p",
    "p_oracle",
    "p_oracle_upto",
    "p_popoviciu",
    "p_product",
    "p_quasipoly",
    "p_stirling",
    "p_unrestricted",
    "polynomial_from_json",
    "polynomial_to_json",
    "polypart_bernoulli",
    "polypart_box_average",
    "polypart_from_residues",
    "quasipoly",
    "quasipoly_from_json",
    "quasipoly_to_json",
    "representability_scan",
    "residues_bernoulli_barnes",
    "residues_powersum",
    "rising_factorial_coeffs",
    "rising_factorial_eval",
    "run_selfcheck",
    "sample_instances",
]
