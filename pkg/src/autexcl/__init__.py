"""Automorphism-order exclusion for curves over finite fields."""

from .weil import (
    IntPolynomial,
    NonIntegralCoefficientError,
    PrimePower,
    WeilPolynomial,
    charpoly_from_power_sums,
    hecke_to_frobenius,
    newton_power_sums,
    poly_product,
    weil_base_change,
    weil_validate,
)
from .zeta import (
    NewPointSeries,
    PointCountSeries,
    PSequence,
    new_point_series,
    new_points,
    p_sequence,
    point_count,
    point_count_mod,
    point_count_series,
)
from .criterion import (
    ExclusionReport,
    Witness,
    bound,
    exclude,
    large_prime_exclusion,
    ramification_lower_bound,
)

__all__ = [name for name in dir() if not name.startswith("_")]
