import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from markoff_lab.exactnum import Mat2
from markoff_lab.markoff import (
    EXTENDED_ROOT,
    M,
    UNIT,
    DegenerateTripleError,
    cohn_matrix,
    locate,
    tree_nodes,
)
from markoff_lab.words import (
    NotInPsiTreeError,
    apply_morphism,
    cube_prefixes,
    expand_w2,
    palindrome_factor,
    phi,
    pi_word,
    psi_for_triple,
    word_from_str,
    word_to_str,
    xi_word_stream,
)

words_12 = st.lists(st.integers(1, 2), min_size=0, max_size=12).map(tuple)


class TestPhi:
    def test_single_letter(self):
        assert phi((1,)) == Mat2(1, 1, 1, 0)

    def test_a(self):
        assert phi((1, 1)) == Mat2(2, 1, 1, 1)

    def test_ab(self):
        assert phi((1, 1, 2, 2)) == Mat2(12, 5, 7, 3)

    def test_empty(self):
        assert phi(()) == Mat2.identity()

    @settings(max_examples=200)
    @given(words_12, words_12)
    def test_morphism(self, w1, w2):
        assert phi(w1 + w2) == phi(w1) * phi(w2)

    @settings(max_examples=200)
    @given(
        st.lists(st.integers(1, 2), min_size=1, max_size=12).map(tuple),
        st.lists(st.integers(1, 2), min_size=1, max_size=12).map(tuple),
    )
    def test_norm_inequality(self, w1, w2):
        n1, n2, n12 = phi(w1).norm, phi(w2).norm, phi(w1 + w2).norm
        assert n1 * n2 <= n12 <= 2 * n1 * n2


class TestMorphisms:
    def test_a_under_u(self):
        assert apply_morphism("a", "U") == "ab"

    def test_ab_under_vu(self):
        assert apply_morphism("ab", "VU") == "ababb"

    def test_ab_under_v(self):
        assert apply_morphism("ab", "V") == "aab"

    def test_composition_is_concatenation(self):
        w = "abba"
        assert apply_morphism(apply_morphism(w, "UV"), "VU") == apply_morphism(
            w, "UVVU"
        )


class TestPsiTree:
    def test_root_identity(self):
        assert psi_for_triple(locate(5, 1, 2)) == ""

    def test_194_13_5(self):
        assert psi_for_triple(locate(194, 13, 5)) == "UV"

    def test_13_1_5(self):
        assert psi_for_triple(locate(13, 1, 5)) == "V"

    def test_outside(self):
        with pytest.raises(NotInPsiTreeError):
            psi_for_triple(EXTENDED_ROOT)
        with pytest.raises(NotInPsiTreeError):
            psi_for_triple(UNIT)


class TestPiWord:
    def test_degenerate(self):
        assert pi_word(UNIT) == (1, 1)
        assert pi_word(EXTENDED_ROOT) == (2, 2)

    def test_13_1_5(self):
        assert pi_word(locate(13, 1, 5)) == (1, 1, 1, 1, 2, 2)
        assert word_to_str(pi_word(locate(13, 1, 5))) == "111122"

    def test_phi_law_to_depth_4(self):
        for t in tree_nodes(4):
            assert phi(pi_word(t)) == cohn_matrix(t).mat * M
        assert phi(pi_word(UNIT)) == cohn_matrix(UNIT).mat * M
        assert phi(pi_word(EXTENDED_ROOT)) == cohn_matrix(EXTENDED_ROOT).mat * M


class TestPalindrome:
    def test_identity(self):
        assert palindrome_factor("") == ""

    def test_v(self):
        assert palindrome_factor("V") == "a"

    def test_vu(self):
        assert palindrome_factor("VU") == "bab"

    def test_all_endos_to_length_8(self):
        queue = [""]
        for _ in range(8):
            queue = [e + x for e in ("U", "V") for x in queue]
            for endo in queue:
                p = palindrome_factor(endo)
                assert p == p[::-1]


class TestXiStream:
    def test_2_1_1(self):
        assert xi_word_stream(EXTENDED_ROOT, 8) == (1, 1, 2, 2, 1, 1, 2, 2)

    def test_5_1_2(self):
        assert xi_word_stream(locate(5, 1, 2), 8) == (1, 1, 1, 1, 2, 2, 1, 1)

    def test_29_5_2(self):
        assert xi_word_stream(locate(29, 5, 2), 6) == (1, 1, 2, 2, 2, 2)

    def test_degenerate(self):
        with pytest.raises(DegenerateTripleError):
            xi_word_stream(UNIT, 4)

    def test_prefix_nesting(self):
        for t in (EXTENDED_ROOT, locate(5, 1, 2), locate(194, 13, 5)):
            for n in (4, 16, 64, 256):
                assert xi_word_stream(t, n) == xi_word_stream(t, 4 * n)[:n]

    def test_stream_only_uses_markoff_digits(self):
        assert set(xi_word_stream(locate(433, 5, 29), 500)) <= {1, 2}


class TestCubes:
    def test_examples(self):
        assert cube_prefixes((1, 1, 1, 1, 2, 2)) == [(1,)]
        assert cube_prefixes((1, 1, 2, 2, 1, 1)) == []
        assert cube_prefixes(()) == []

    def test_stability_on_xi_stream(self):
        t = locate(5, 1, 2)
        early = cube_prefixes(xi_word_stream(t, 300))
        late = cube_prefixes(xi_word_stream(t, 600))
        assert early == late


class TestSerialization:
    def test_round_trip_small_digits(self):
        w = (1, 1, 2, 2, 1)
        assert word_from_str(word_to_str(w)) == w

    def test_large_digits_use_commas(self):
        w = (12, 1, 3)
        assert word_to_str(w) == "12,1,3"
        assert word_from_str("12,1,3") == w

    def test_expand(self):
        assert expand_w2("ab") == (1, 1, 2, 2)
