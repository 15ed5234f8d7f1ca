from __future__ import annotations

import random

import pytest

from autexcl.ff import FiniteField, ff_tower
from autexcl.oracle import (
    BudgetExceededError,
    CurveBudget,
    HyperellipticMap,
    InvalidMapError,
    QuarticMap,
    SingularModelError,
    canonical_involution,
    charpoly_from_curve,
    count_points,
    curve_count_series,
    hyperelliptic_curve,
    parse_curve_file,
    plane_quartic,
    verify_map,
)
from autexcl.weil import weil_validate
from autexcl.zeta import new_point_series, point_count


def naive_hyperelliptic_count(curve, n):
    """Independent oracle: plain double loop over (x, y), no character tricks."""
    emb = ff_tower(curve.base, n)
    E = emb.target
    f = [emb(c) for c in curve.f]
    h = [emb(c) for c in curve.h]
    total = 0
    for x in E.elements():
        fx = E.poly_eval(f, x)
        hx = E.poly_eval(h, x)
        for y in E.elements():
            if E.add(E.mul(y, y), E.mul(hx, y)) == fx:
                total += 1
    return total + 1


def naive_quartic_count(curve, n):
    """Independent oracle: iterate every normalized representative of P^2."""
    emb = ff_tower(curve.base, n)
    E = emb.target
    terms = [(e, emb(c)) for e, c in curve.terms]

    def F_at(x, y, z):
        acc = 0
        for (e1, e2, e3), c in terms:
            acc = E.add(acc, E.mul(E.mul(E.pow(x, e1), E.pow(y, e2)), E.mul(E.pow(z, e3), c)))
        return acc

    total = 0
    for x in E.elements():
        for y in E.elements():
            if F_at(x, y, 1) == 0:
                total += 1
    for x in E.elements():
        if F_at(x, 1, 0) == 0:
            total += 1
    if F_at(1, 0, 0) == 0:
        total += 1
    return total


KLEIN_TERMS = {(3, 1, 0): 1, (0, 3, 1): 1, (1, 0, 3): 1}


class TestModelValidation:
    def test_odd_char_rejects_nonzero_h(self):
        F = FiniteField(3)
        with pytest.raises(SingularModelError):
            hyperelliptic_curve(F, (1, 0, 0, 0, 0, 1), (1,))

    def test_odd_char_rejects_non_squarefree(self):
        F = FiniteField(5)
        # f = x^5: gcd(f, f') nontrivial
        with pytest.raises(SingularModelError):
            hyperelliptic_curve(F, (0, 0, 0, 0, 0, 1))

    def test_even_degree_rejected(self):
        F = FiniteField(3)
        with pytest.raises(SingularModelError):
            hyperelliptic_curve(F, (1, 0, 0, 0, 1))

    def test_char2_requires_h(self):
        F = FiniteField(2)
        with pytest.raises(SingularModelError):
            hyperelliptic_curve(F, (1, 0, 0, 0, 0, 1))

    def test_char2_singular_at_h_root_rejected(self):
        F = FiniteField(2)
        # h = x, f = x^5: at x0=0, y0=0, f'(x0)=0 and h'(x0)*y0=0 -> singular
        with pytest.raises(SingularModelError):
            hyperelliptic_curve(F, (0, 0, 0, 0, 0, 1), (0, 1))

    def test_char2_valid_model(self):
        F = FiniteField(2)
        # y^2 + y = x^5 is smooth (h constant, no roots)
        curve = hyperelliptic_curve(F, (0, 0, 0, 0, 0, 1), (1,))
        assert curve.genus == 2

    def test_h_degree_cap(self):
        F = FiniteField(2)
        with pytest.raises(SingularModelError):
            hyperelliptic_curve(F, (0, 0, 0, 0, 0, 1), (1, 1, 1, 1))

    def test_quartic_rejects_inhomogeneous(self):
        F = FiniteField(2)
        with pytest.raises(SingularModelError):
            plane_quartic(F, {(3, 0, 0): 1})

    def test_quartic_rejects_singular(self):
        F = FiniteField(3)
        # x^4 = 0 is a quadruple line: every point is singular
        with pytest.raises(SingularModelError):
            plane_quartic(F, {(4, 0, 0): 1})

    def test_klein_over_f2_smooth(self):
        F = FiniteField(2)
        curve = plane_quartic(F, KLEIN_TERMS)
        assert curve.genus == 3
        assert curve.singular_search_depth >= 2


class TestCounting:
    def test_y2_x5_plus_1_over_f3(self):
        F = FiniteField(3)
        curve = hyperelliptic_curve(F, (1, 0, 0, 0, 0, 1))
        # hand count: x=0 gives y^2=1 (2 sols), x=1 gives y^2=2 (0), x=2 gives y^2=0 (1)
        assert count_points(curve, 1) == 3 + 1
        for n in (1, 2, 3, 4):
            assert count_points(curve, n) == naive_hyperelliptic_count(curve, n)

    def test_char2_counts_match_naive(self):
        F = FiniteField(2)
        curve = hyperelliptic_curve(F, (1, 1, 0, 0, 0, 1), (1, 1))
        for n in (1, 2, 3, 4, 5, 6):
            assert count_points(curve, n) == naive_hyperelliptic_count(curve, n)

    def test_f8_base_counts_match_naive(self):
        F8 = FiniteField(2, 3)
        curve = hyperelliptic_curve(F8, (2, 0, 1, 0, 0, 3), (1,))
        for n in (1, 2):
            assert count_points(curve, n) == naive_hyperelliptic_count(curve, n)

    def test_quartic_fermat_over_f2(self):
        F = FiniteField(2)
        curve = plane_quartic(F, {(4, 0, 0): 1, (0, 4, 0): 1, (0, 0, 4): 1}, validate=False)
        # 4th power = identity on F_2, so points satisfy x+y+z=0: a projective line
        assert count_points(curve, 1) == 3

    def test_klein_counts_match_naive(self):
        F = FiniteField(2)
        curve = plane_quartic(F, KLEIN_TERMS)
        for n in (1, 2, 3, 4):
            assert count_points(curve, n) == naive_quartic_count(curve, n)

    def test_klein_over_f8_count(self):
        F8 = FiniteField(2, 3)
        curve = plane_quartic(F8, KLEIN_TERMS)
        # the classical maximal-curve value |X(F_8)| = 24
        assert count_points(curve, 1) == 24
        assert count_points(curve, 1) == naive_quartic_count(curve, 1)

    def test_budget_exceeded(self):
        F = FiniteField(5)
        curve = hyperelliptic_curve(F, (1, 1, 0, 0, 0, 1))
        with pytest.raises(BudgetExceededError):
            count_points(curve, 3, CurveBudget(max_field=100))

    def test_hyperelliptic_count_at_least_one(self):
        F = FiniteField(3)
        curve = hyperelliptic_curve(F, (1, 2, 0, 0, 0, 1))
        assert count_points(curve, 1) >= 1


class TestCharpolyFromCurve:
    def test_roundtrip_point_counts(self):
        F = FiniteField(3)
        curve = hyperelliptic_curve(F, (1, 0, 0, 0, 0, 1))
        W = charpoly_from_curve(curve)
        for n in range(1, 2 * curve.genus + 1):
            assert point_count(W, n) == count_points(curve, n)
        assert weil_validate(W) is None

    def test_random_genus2_corpus_over_f5(self):
        rng = random.Random(7)
        F = FiniteField(5)
        done = 0
        while done < 20:
            f = [rng.randrange(5) for _ in range(5)] + [rng.randrange(1, 5)]
            try:
                curve = hyperelliptic_curve(F, tuple(f))
            except SingularModelError:
                continue
            W = charpoly_from_curve(curve)  # includes n=3,4 validation
            assert weil_validate(W) is None
            done += 1

    def test_series_properties(self):
        F = FiniteField(3)
        curve = hyperelliptic_curve(F, (1, 2, 0, 0, 0, 1))
        series = curve_count_series(curve, 6)
        r = new_point_series(series)
        for n, val in enumerate(r.values, start=1):
            assert val >= 0 and val % n == 0

    def test_klein_charpoly(self):
        F8 = FiniteField(2, 3)
        curve = plane_quartic(F8, KLEIN_TERMS)
        W = charpoly_from_curve(curve)
        assert W.genus == 3 and W.q == 8
        assert weil_validate(W) is None
        assert point_count(W, 1) == 24


class TestMaps:
    def test_involution_order_two(self):
        F = FiniteField(5)
        curve = hyperelliptic_curve(F, (1, 1, 0, 0, 0, 1))
        assert verify_map(curve, canonical_involution(curve)) == 2

    def test_involution_char2(self):
        F = FiniteField(2)
        curve = hyperelliptic_curve(F, (1, 1, 0, 0, 0, 1), (1, 1))
        assert verify_map(curve, canonical_involution(curve)) == 2

    def test_identity_map(self):
        F = FiniteField(5)
        curve = hyperelliptic_curve(F, (1, 1, 0, 0, 0, 1))
        ident = HyperellipticMap(mobius=(1, 0, 0, 1), y_scale=1)
        assert verify_map(curve, ident) == 1

    def test_x5_scaling_order(self):
        # y^2 = x^5 + 1 over F_11: (x, y) -> (z x, y) with z^5 = 1 preserves it
        F = FiniteField(11)
        curve = hyperelliptic_curve(F, (1, 0, 0, 0, 0, 1))
        z = F.pow(2, 2)  # 2 is a generator mod 11; 2^2 = 4 has order 5
        m = HyperellipticMap(mobius=(z, 0, 0, 1), y_scale=1)
        assert verify_map(curve, m) == 5

    def test_bad_map_rejected(self):
        F = FiniteField(5)
        curve = hyperelliptic_curve(F, (1, 1, 0, 0, 0, 1))
        bad = HyperellipticMap(mobius=(1, 1, 0, 1), y_scale=1)
        with pytest.raises(InvalidMapError):
            verify_map(curve, bad)

    def test_klein_order_seven(self):
        F8 = FiniteField(2, 3)
        curve = plane_quartic(F8, KLEIN_TERMS)
        zeta = F8.gen  # any element of F_8* except 1 has order 7
        m = QuarticMap(
            matrix=(zeta, 0, 0, 0, F8.pow(zeta, 4), 0, 0, 0, F8.pow(zeta, 2))
        )
        assert verify_map(curve, m) == 7

    def test_quartic_identity(self):
        F = FiniteField(2)
        curve = plane_quartic(F, KLEIN_TERMS)
        assert verify_map(curve, QuarticMap(matrix=(1, 0, 0, 0, 1, 0, 0, 0, 1))) == 1

    def test_quartic_bad_matrix(self):
        F8 = FiniteField(2, 3)
        curve = plane_quartic(F8, KLEIN_TERMS)
        with pytest.raises(InvalidMapError):
            verify_map(curve, QuarticMap(matrix=(1, 1, 0, 0, 1, 0, 0, 0, 1)))

    def test_singular_matrix_rejected(self):
        F8 = FiniteField(2, 3)
        curve = plane_quartic(F8, KLEIN_TERMS)
        with pytest.raises(InvalidMapError):
            verify_map(curve, QuarticMap(matrix=(0,) * 9))


class TestParser:
    def test_hyperelliptic_line(self):
        curve, cmap = parse_curve_file("curve hyperelliptic p=3 k=1 f=1,0,0,0,0,1 h=0\n")
        assert curve.genus == 2 and curve.base.order == 3 and cmap is None

    def test_quartic_with_map(self):
        text = (
            "# klein quartic over F_8 with an order-7 symmetry\n"
            "curve quartic p=2 k=3 F=3,1,0:1;0,3,1:1;1,0,3:1\n"
            "map matrix=2,0,0,0,7,0,0,0,4\n"  # diag(t, t^4, t^2), t of order 7
        )
        curve, cmap = parse_curve_file(text)
        assert curve.genus == 3
        assert cmap is not None
        assert verify_map(curve, cmap) == 7

    def test_errors(self):
        with pytest.raises(ValueError):
            parse_curve_file("curve banana p=2 k=1\n")
        with pytest.raises(ValueError):
            parse_curve_file("map matrix=1,0,0\n")
        with pytest.raises(ValueError):
            parse_curve_file("")
