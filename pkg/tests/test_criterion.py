from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from autexcl.criterion import (
    ExclusionReport,
    Witness,
    bound,
    exclude,
    large_prime_exclusion,
    ramification_lower_bound,
)
from autexcl.weil import IntPolynomial, PrimePower, WeilPolynomial
from autexcl.zeta import p_sequence

from conftest import weil_corpus

Q_DEMO = WeilPolynomial(2, 2, IntPolynomial((4, 0, 3, 0, 1)))


class TestBound:
    @pytest.mark.parametrize(
        "N,m,g,expected",
        [(2, 1, 6, 14), (2, 2, 15, 36), (3, 1, 8, 10), (2, 3, 8, 30)],
    )
    def test_spot_table(self, N, m, g, expected):
        assert bound(N, m, g) == expected

    def test_rejects_small_genus(self):
        with pytest.raises(ValueError):
            bound(2, 1, 1)

    def test_rejects_composite(self):
        with pytest.raises(ValueError):
            bound(4, 1, 3)

    @given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 4), st.integers(2, 40))
    def test_closed_form(self, N, m, g):
        assert bound(N, m, g) == (2 * g) // (N - 1) + 2 * (N ** m - 1) // (N - 1)


class TestExclude:
    def test_demo_inconclusive(self):
        report = exclude(Q_DEMO, PrimePower(2, 1), n_max=40)
        assert not report.excluded
        assert report.verdict == "Inconclusive"
        assert report.final_sum == 1  # P = (1, 0, 0, ...)
        assert report.bound == bound(2, 1, 2) == 6
        assert report.n_scanned == 40

    def test_partial_sums_nondecreasing(self):
        report = exclude(Q_DEMO, PrimePower(2, 1), n_max=40)
        sums = report.partial_sums
        assert all(a <= b for a, b in zip(sums, sums[1:]))

    def test_crossing_is_minimal(self):
        # force a crossing with a tiny override bound
        report = exclude(Q_DEMO, PrimePower(2, 1), n_max=40, override_bound=0)
        assert report.excluded
        assert report.crossing_index == 1
        assert report.sum_at_crossing == 1
        assert report.n_scanned == 1  # stops at the crossing

    def test_override_equal_to_default_matches(self):
        default = exclude(Q_DEMO, PrimePower(2, 1), n_max=40)
        manual = exclude(Q_DEMO, PrimePower(2, 1), n_max=40, override_bound=6)
        assert default == manual

    def test_rejects_genus_one(self):
        Q = WeilPolynomial(2, 1, IntPolynomial((2, 0, 1)))
        with pytest.raises(ValueError):
            exclude(Q, PrimePower(2, 1))

    def test_deterministic(self):
        a = exclude(Q_DEMO, PrimePower(3, 1), n_max=60)
        b = exclude(Q_DEMO, PrimePower(3, 1), n_max=60)
        assert a == b

    @settings(max_examples=40)
    @given(st.integers(0, 400), st.sampled_from([(2, 1), (3, 1), (2, 2)]))
    def test_report_shape(self, seed, nm):
        Q = weil_corpus(seed, 1)[0]
        if Q.genus < 2:
            return
        pp = PrimePower(*nm)
        report = exclude(Q, pp, n_max=30)
        seq = p_sequence(Q, pp, report.n_scanned)
        assert report.partial_sums == tuple(
            sum(seq.values[: i + 1]) for i in range(report.n_scanned)
        )
        if report.excluded:
            n = report.crossing_index
            assert report.partial_sums[n - 1] > report.bound
            if n > 1:
                assert report.partial_sums[n - 2] <= report.bound


class TestLargePrimeExclusion:
    def test_demo_witnesses(self):
        # R(2)=8 and R(3)=6 fail the strict window 2 < R < 6; R(4)=4 passes
        witnesses = large_prime_exclusion(Q_DEMO, n_max=4)
        assert witnesses == [Witness(n0=3, new_points=4)]

    def test_rejects_small_new_points(self):
        # strict lower bound: R = 2 is not a witness; window is (2, 2g+2)
        witnesses = large_prime_exclusion(Q_DEMO, n_max=10)
        assert all(2 < w.new_points < 6 for w in witnesses)

    def test_genus_check(self):
        Q = WeilPolynomial(2, 1, IntPolynomial((2, 0, 1)))
        with pytest.raises(ValueError):
            large_prime_exclusion(Q, 5)


class TestRamificationLowerBound:
    def test_single_term(self):
        pp = PrimePower(2, 1)
        assert ramification_lower_bound(Q_DEMO, pp, 1) == p_sequence(Q_DEMO, pp, 1).values[0]

    def test_monotone(self):
        pp = PrimePower(3, 1)
        vals = [ramification_lower_bound(Q_DEMO, pp, k) for k in range(1, 25)]
        assert all(a <= b for a, b in zip(vals, vals[1:]))

    def test_equals_sum_of_sequence(self):
        pp = PrimePower(2, 2)
        assert ramification_lower_bound(Q_DEMO, pp, 30) == sum(
            p_sequence(Q_DEMO, pp, 30).values
        )
