from collections import Counter

import pytest

from pinquad.brown import (
    GaussSumResult,
    arf_from_brown,
    brown_invariant,
    decode_brown,
    gauss_sum,
)
from pinquad.errors import DegenerateFormError, LimitError, UnsupportedInputError
from pinquad.f2 import F2Vector
from pinquad.forms import (
    BilinearForm,
    Enhancement,
    crosscap_form,
    direct_sum,
    enumerate_enhancements,
    eval_q,
    hyperbolic_form,
    isotropic_reduction,
    poincare_dual,
    torsor_act,
    Covector,
)
from oracles import all_enhancement_values, naive_beta, naive_gauss, standard_grams

TORUS = hyperbolic_form(1)
RP2 = crosscap_form(1)
KLEIN = crosscap_form(2)
EMPTY = Enhancement(BilinearForm(0, ()), ())


class TestGaussSum:
    def test_dim_zero(self):
        gs = gauss_sum(EMPTY)
        assert (gs.a, gs.b, gs.n) == (1, 0, 0)

    def test_rp2(self):
        gs = gauss_sum(Enhancement(RP2, (1,)))
        assert (gs.a, gs.b) == (1, 1)
        assert gs.counts == (1, 1, 0, 0)

    def test_torus_values(self):
        # classes evaluate to 0, 2, 2, 2
        gs = gauss_sum(Enhancement(TORUS, (2, 2)))
        assert (gs.a, gs.b) == (-2, 0)

    def test_counts_sum_to_class_count(self):
        for gram in standard_grams(5):
            form = BilinearForm.from_rows(gram)
            for q in enumerate_enhancements(form):
                assert sum(gauss_sum(q).counts) == 1 << form.dim

    def test_matches_naive_counting(self):
        for gram in standard_grams(5):
            form = BilinearForm.from_rows(gram)
            for values in all_enhancement_values(gram):
                gs = gauss_sum(Enhancement(form, values))
                assert (gs.a, gs.b) == naive_gauss(gram, values)

    def test_guard(self):
        big = Enhancement(hyperbolic_form(11), (0,) * 22)
        with pytest.raises(LimitError):
            gauss_sum(big)


class TestBrownInvariant:
    @pytest.mark.parametrize(
        "form,values,beta",
        [
            (RP2, (1,), 1),
            (RP2, (3,), 7),
            (TORUS, (0, 0), 0),
            (TORUS, (2, 2), 4),
            (KLEIN, (1, 3), 0),
            (KLEIN, (1, 1), 2),
            (KLEIN, (3, 3), 6),
        ],
    )
    def test_known_values(self, form, values, beta):
        assert brown_invariant(Enhancement(form, values)) == beta

    def test_dim_zero_is_unit(self):
        assert brown_invariant(EMPTY) == 0

    @pytest.mark.parametrize(
        "form,census",
        [
            (RP2, {1: 1, 7: 1}),
            (KLEIN, {0: 2, 2: 1, 6: 1}),
            (TORUS, {0: 3, 4: 1}),
            (hyperbolic_form(2), {0: 10, 4: 6}),
        ],
        ids=["rp2", "klein", "torus", "genus2"],
    )
    def test_census(self, form, census):
        got = Counter(brown_invariant(q) for q in enumerate_enhancements(form))
        assert dict(got) == census

    def test_matches_naive_decode(self):
        for gram in standard_grams(5):
            form = BilinearForm.from_rows(gram)
            for values in all_enhancement_values(gram):
                q = Enhancement(form, values)
                assert brown_invariant(q) == naive_beta(gram, values)

    def test_degenerate_rejected(self):
        degenerate = Enhancement(BilinearForm.from_rows([[0]]), (0,))
        with pytest.raises(DegenerateFormError):
            brown_invariant(degenerate)

    def test_decode_rejects_bad_magnitude(self):
        with pytest.raises(DegenerateFormError):
            decode_brown(GaussSumResult(2, (3, 1, 0, 0)))

    def test_magnitude(self):
        # |gauss sum|^2 = 2^n exactly, for every nondegenerate enhancement
        for gram in standard_grams(6):
            form = BilinearForm.from_rows(gram)
            for q in enumerate_enhancements(form):
                gs = gauss_sum(q)
                assert gs.a**2 + gs.b**2 == 1 << form.dim


class TestAdditivity:
    def test_exhaustive_small(self):
        pieces = []
        for gram in standard_grams(3):
            form = BilinearForm.from_rows(gram)
            pieces.extend(enumerate_enhancements(form))
        for q1 in pieces:
            for q2 in pieces:
                total = brown_invariant(direct_sum(q1, q2))
                assert total == (brown_invariant(q1) + brown_invariant(q2)) % 8


class TestTorsorChange:
    def test_change_formula(self):
        # beta(q acted by y) - beta(q) = -2 q(dual y), the calibrated convention
        for gram in standard_grams(5):
            form = BilinearForm.from_rows(gram)
            n = form.dim
            for q in enumerate_enhancements(form):
                base = brown_invariant(q)
                for y_bits in range(1 << n):
                    y = Covector(n, y_bits)
                    moved = brown_invariant(torsor_act(q, y))
                    predicted = (-2 * eval_q(q, poincare_dual(form, y))) % 8
                    assert (moved - base) % 8 == predicted


class TestSurgeryInvariance:
    def test_beta_preserved(self):
        for gram in standard_grams(6):
            form = BilinearForm.from_rows(gram)
            if not form.nondegenerate:
                continue
            n = form.dim
            for q in enumerate_enhancements(form):
                base = brown_invariant(q)
                for c_bits in range(1, 1 << n):
                    c = F2Vector(n, c_bits)
                    if form.product(c, c) or eval_q(q, c):
                        continue
                    assert brown_invariant(isotropic_reduction(q, c)) == base


class TestArf:
    def test_torus_values(self):
        assert arf_from_brown(Enhancement(TORUS, (0, 0))) == 0
        assert arf_from_brown(Enhancement(TORUS, (2, 2))) == 1

    def test_genus_two_additivity(self):
        q = Enhancement(hyperbolic_form(2), (2, 2, 2, 2))
        assert arf_from_brown(q) == 0

    def test_odd_values_rejected(self):
        with pytest.raises(UnsupportedInputError):
            arf_from_brown(Enhancement(RP2, (1,)))

    def test_matches_quarter_of_beta(self):
        form = hyperbolic_form(2)
        for q in enumerate_enhancements(form):
            assert arf_from_brown(q) == brown_invariant(q) // 4
