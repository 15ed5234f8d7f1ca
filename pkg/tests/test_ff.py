from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from autexcl.ff import FiniteField, canonical_irreducible, ff_tower


class TestConstruction:
    def test_prime_field(self):
        F = FiniteField(5)
        assert F.order == 5 and F.modulus == (0, 1)

    def test_canonical_modulus_f8(self):
        # first irreducible cubic over F_2 in lex coefficient order
        assert canonical_irreducible(2, 3) == (1, 0, 1, 1)  # 1 + t^2 + t^3

    def test_rejects_reducible_modulus(self):
        with pytest.raises(ValueError):
            FiniteField(2, 2, modulus=(1, 0, 1))  # t^2 + 1 = (t+1)^2

    def test_rejects_composite_characteristic(self):
        with pytest.raises(ValueError):
            FiniteField(6)

    def test_budget(self):
        with pytest.raises(ValueError):
            FiniteField(2, 30, max_size=2 ** 20)


FIELDS = [FiniteField(2, 1), FiniteField(2, 3), FiniteField(3, 2), FiniteField(5, 2), FiniteField(7, 1)]


class TestArithmetic:
    @pytest.mark.parametrize("F", FIELDS, ids=lambda F: f"F{F.order}")
    def test_field_axioms_exhaustive(self, F):
        els = list(F.elements())
        for a in els:
            assert F.add(a, 0) == a
            assert F.mul(a, 1) == a
            assert F.add(a, F.neg(a)) == 0
            if a:
                assert F.mul(a, F.inv(a)) == 1
        # associativity/commutativity spot checks on all pairs
        for a in els:
            for b in els:
                assert F.add(a, b) == F.add(b, a)
                assert F.mul(a, b) == F.mul(b, a)

    @pytest.mark.parametrize("F", FIELDS, ids=lambda F: f"F{F.order}")
    def test_distributive_sample(self, F):
        els = list(F.elements())[: min(9, F.order)]
        for a in els:
            for b in els:
                for c in els:
                    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))

    @pytest.mark.parametrize("F", FIELDS, ids=lambda F: f"F{F.order}")
    def test_frobenius_is_additive(self, F):
        for a in F.elements():
            for b in list(F.elements())[:8]:
                assert F.pow(F.add(a, b), F.p) == F.add(F.pow(a, F.p), F.pow(b, F.p))

    def test_pow_matches_repeated_mul(self):
        F = FiniteField(3, 3)
        for a in (1, 2, 5, 7, 26):
            acc = 1
            for e in range(10):
                assert F.pow(a, e) == acc
                acc = F.mul(acc, a)

    def test_squares_odd_char(self):
        F = FiniteField(5, 2)
        squares = {F.mul(a, a) for a in F.elements()}
        for a in F.elements():
            assert F.is_square(a) == (a in squares)

    def test_sqrt_char2(self):
        F = FiniteField(2, 4)
        for a in F.elements():
            r = F.sqrt_char2(a)
            assert F.mul(r, r) == a

    def test_trace_char2(self):
        F = FiniteField(2, 3)
        # trace is additive and F_2-valued; z^2+z=c solvable iff trace 0
        for a in F.elements():
            assert F.trace_to_prime(a) in (0, 1)
        solvable = {F.add(F.mul(z, z), z) for z in F.elements()}
        for a in F.elements():
            assert (F.trace_to_prime(a) == 0) == (a in solvable)

    def test_trace_matches_direct_formula(self):
        F = FiniteField(2, 4)
        for a in F.elements():
            direct = 0
            x = a
            for _ in range(F.k):
                direct = F.add(direct, x)
                x = F.mul(x, x)
            assert F.trace_to_prime(a) == direct


class TestTower:
    def test_prime_base_trivial(self):
        F2 = FiniteField(2)
        emb = ff_tower(F2, 3)
        assert emb.target.order == 8
        assert emb(0) == 0 and emb(1) == 1

    def test_identity_tower(self):
        F8 = FiniteField(2, 3)
        emb = ff_tower(F8, 1)
        assert emb.target is F8
        for a in F8.elements():
            assert emb(a) == a

    def test_f8_to_f64_is_homomorphism(self):
        F8 = FiniteField(2, 3)
        emb = ff_tower(F8, 2)
        assert emb.target.order == 64
        # embedding respects + and * everywhere, and the modulus root checks out
        assert emb.target.poly_eval(list(F8.modulus), emb.gen_image) == 0
        for a in F8.elements():
            for b in F8.elements():
                assert emb(F8.add(a, b)) == emb.target.add(emb(a), emb(b))
                assert emb(F8.mul(a, b)) == emb.target.mul(emb(a), emb(b))

    def test_f9_to_f81(self):
        F9 = FiniteField(3, 2)
        emb = ff_tower(F9, 2)
        img = {emb(a) for a in F9.elements()}
        assert len(img) == 9
        for a in F9.elements():
            for b in F9.elements():
                assert emb(F9.mul(a, b)) == emb.target.mul(emb(a), emb(b))

    def test_cached(self):
        F3 = FiniteField(3)
        assert ff_tower(F3, 4) is ff_tower(F3, 4)


@settings(max_examples=80)
@given(st.sampled_from([(2, 4), (3, 3), (5, 2)]), st.data())
def test_inverse_roundtrip(pk, data):
    F = FiniteField(*pk)
    a = data.draw(st.integers(1, F.order - 1))
    assert F.mul(a, F.inv(a)) == 1
    assert F.inv(F.inv(a)) == a
