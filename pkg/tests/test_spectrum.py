from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from markoff_lab.exactnum import BinQuadForm, QuadIrr, RatInterval, ZeroFormError
from markoff_lab.markoff import (
    EXTENDED_ROOT,
    UNIT,
    locate,
    markoff_alpha,
    markoff_form,
    tree_nodes,
)
from markoff_lab.spectrum import (
    DegenerateFormError,
    L_periodic,
    L_window_sup,
    OutOfWindowError,
    WindowedBiWord,
    lambda_at,
    mu_bruteforce,
    mu_exact,
    nu_quadratic,
    nu_sequence,
    running_min_upper,
)
from markoff_lab.words import pi_word, xi_word_stream


class TestMuExact:
    def test_examples(self):
        assert mu_exact(BinQuadForm(1, 1, -1)) == 1
        assert mu_exact(BinQuadForm(5, 9, -7)) == 5
        assert mu_exact(BinQuadForm(2, 4, -2)) == 2

    def test_oracle_agreement_small(self):
        assert mu_bruteforce(BinQuadForm(1, 1, -1), 50) == 1
        assert mu_bruteforce(BinQuadForm(5, 9, -7), 50) == 5

    def test_degenerate(self):
        with pytest.raises(DegenerateFormError):
            mu_exact(BinQuadForm(1, 3, 2))  # disc 1
        with pytest.raises(DegenerateFormError):
            mu_exact(BinQuadForm(0, 1, 5))  # disc 1, represents 0 at (1,0)

    def test_zero_form(self):
        with pytest.raises(ZeroFormError):
            mu_exact(BinQuadForm(0, 0, 0))

    def test_markoff_forms_to_depth_4_vs_oracle(self):
        for t in tree_nodes(4) + [UNIT, EXTENDED_ROOT]:
            f = markoff_form(t)
            assert mu_exact(f) == t.m
            if t.m <= 500:
                assert mu_bruteforce(f, 30) == t.m

    @settings(max_examples=60, deadline=None)
    @given(st.integers(-12, 12), st.integers(-12, 12), st.integers(-12, 12))
    def test_cycle_min_never_exceeds_oracle(self, a, b, c):
        f = BinQuadForm(a, b, c)
        d = f.disc
        if d <= 0 or a == 0 or c == 0:
            return
        import math

        s = math.isqrt(d)
        if s * s == d:
            return
        exact = mu_exact(f)
        box = mu_bruteforce(f, 25)
        assert exact <= box
        # the box contains (1,0), so it attains |a|; both bound mu above
        assert exact <= abs(a)


class TestLPeriodic:
    def test_period_1(self):
        top, enc = L_periodic((1,))
        assert top == QuadIrr.make(0, 1, 5, 1)
        assert enc.contains(Fraction(2236, 1000)) or enc.lo > 2
        assert top * top == 5

    def test_period_2(self):
        top, _ = L_periodic((2,))
        assert top == QuadIrr.make(0, 2, 2, 1)
        assert top * top == 8

    def test_period_1122(self):
        top, _ = L_periodic((1, 1, 2, 2))
        assert top == QuadIrr.make(0, 1, 221, 5)
        assert top * top == Fraction(221, 25)

    def test_rotation_invariance(self):
        a, _ = L_periodic((1, 1, 2, 2))
        b, _ = L_periodic((2, 2, 1, 1))
        c, _ = L_periodic((1, 2, 2, 1))
        assert a == b == c

    def test_power_invariance(self):
        a, _ = L_periodic((1,))
        b, _ = L_periodic((1, 1, 1))
        assert a == b


class TestNuQuadratic:
    def test_examples(self):
        assert nu_quadratic(QuadIrr.make(-1, 1, 5, 2)) == QuadIrr.make(0, 1, 5, 5)
        assert nu_quadratic(QuadIrr.make(-1, 1, 2, 1)) == QuadIrr.make(0, 1, 2, 4)
        got = nu_quadratic(QuadIrr.make(-9, 1, 221, 10))
        assert got == QuadIrr.make(0, 5, 221, 221)  # 5/sqrt(221)

    def test_reciprocity_to_depth_3(self):
        for t in tree_nodes(3) + [UNIT, EXTENDED_ROOT]:
            alpha, _ = markoff_alpha(t)
            top, _ = L_periodic(pi_word(t))
            assert top * nu_quadratic(alpha) == 1

    def test_markoff_value_formula(self):
        # nu(alpha_m) = m / sqrt(9 m^2 - 4)
        for t in tree_nodes(2) + [UNIT, EXTENDED_ROOT]:
            alpha, _ = markoff_alpha(t)
            d = 9 * t.m * t.m - 4
            assert nu_quadratic(alpha) == QuadIrr.make(0, t.m, d, d)

    def test_invariant_under_conjugate_shift(self):
        for t in (locate(5, 1, 2), locate(13, 1, 5)):
            alpha, abar = markoff_alpha(t)
            assert nu_quadratic(alpha) == nu_quadratic(abar + 3)


class TestLambdaAt:
    def test_all_ones(self):
        w = WindowedBiWord((1,) * 30, (1,) * 30)
        iv = lambda_at(w, 0)
        root5 = QuadIrr.make(0, 1, 5, 1)
        tight = root5.enclosure(Fraction(1, 10**25))
        assert iv.lo <= tight.lo and tight.hi <= iv.hi

    def test_all_twos(self):
        w = WindowedBiWord((2,) * 30, (2,) * 30)
        iv = lambda_at(w, 0)
        root8 = QuadIrr.make(0, 2, 2, 1)
        tight = root8.enclosure(Fraction(1, 10**25))
        assert iv.lo <= tight.lo and tight.hi <= iv.hi

    def test_junction_window(self):
        w = WindowedBiWord((1, 1), (2, 2))
        wide = lambda_at(w, 0)
        big = WindowedBiWord((1,) * 20, (2,) * 20)
        tight = lambda_at(big, 0)
        assert wide.contains_interval(tight)
        assert tight.width < wide.width

    def test_monotone_under_window_growth(self):
        word = xi_word_stream(locate(5, 1, 2), 40)
        small = WindowedBiWord.from_word(word[:24], 12)
        large = WindowedBiWord.from_word(word, 12)
        for i in (-4, -1, 0, 1, 5):
            assert lambda_at(small, i).contains_interval(lambda_at(large, i))

    def test_out_of_window(self):
        w = WindowedBiWord((1, 1), (2, 2))
        with pytest.raises(OutOfWindowError):
            lambda_at(w, 2)
        with pytest.raises(OutOfWindowError):
            lambda_at(w, -2)


class TestLWindowSup:
    def test_periodic_ones(self):
        word = (1,) * 80
        lower, rows = L_window_sup(WindowedBiWord.from_word(word, 40), margin=10)
        # lower bound approaches sqrt(5) = 2.2360679... from below
        assert Fraction(223, 100) < lower < Fraction(2237, 1000)
        assert all(iv.hi > lower for _, iv in rows)

    def test_digits_one_two_upper_bounds(self):
        word = xi_word_stream(locate(5, 1, 2), 120)
        _, rows = L_window_sup(WindowedBiWord.from_word(word, 60), margin=12)
        for _, iv in rows:
            assert iv.hi <= 3 + Fraction(1, 1000)


class TestNuSequence:
    def test_all_ones(self):
        rows = nu_sequence((1,) * 250)[:200]
        exact = QuadIrr.make(0, 1, 5, 5)  # 1/sqrt(5)
        tight = exact.enclosure(Fraction(1, 10**20))
        for _, iv in rows[-10:]:
            assert abs(iv.midpoint - tight.midpoint) < Fraction(1, 10**6)
            assert iv.lo <= tight.hi and tight.lo <= iv.hi

    def test_all_twos(self):
        rows = nu_sequence((2,) * 250)[:200]
        exact = QuadIrr.make(0, 1, 2, 4)  # 1/sqrt(8)
        tight = exact.enclosure(Fraction(1, 10**20))
        for _, iv in rows[-10:]:
            assert abs(iv.midpoint - tight.midpoint) < Fraction(1, 10**6)

    def test_certified_for_quadratic(self):
        # each interval must contain the true q||q xi|| for an exact xi
        x = QuadIrr.make(-9, 1, 221, 10)
        from markoff_lab.contfrac import convergents, quad_cf_expand

        exp = quad_cf_expand(x)
        digits = exp.digits(40)
        rows = nu_sequence(digits)
        cs = convergents(digits, 0)
        for k, iv in rows[:30]:
            q = cs[k].denominator
            err = x * q - cs[k].numerator
            true = abs((err * q).enclosure(Fraction(1, 10**30)).midpoint)
            assert iv.lo - Fraction(1, 10**25) <= true <= iv.hi + Fraction(1, 10**25)

    def test_running_min(self):
        rows = nu_sequence((1, 2) * 30)
        mins = running_min_upper(rows)
        assert all(a >= b for a, b in zip(mins, mins[1:]))
