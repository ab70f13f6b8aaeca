import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import ALPHABETS, free_reduce_letters, letter_lists, word_from_letters, words
from perires.words import Alphabet, AlphabetMismatch, Word, WordError, WordSyntaxError, parse_word, word_inv, word_mul

XY = Alphabet.of("x", "y")
AB = Alphabet.of("a", "b")


def w(text, alphabet=XY):
    return parse_word(text, alphabet)


def signed_letters(word):
    return [(g + 1) * s for g, s in word.letters()]


class TestWordMul:
    def test_cancel_to_identity(self):
        assert word_mul(w("x"), w("x^-1")).is_identity()
        assert str(word_mul(w("x"), w("x^-1"))) == "1"

    def test_collect_across_boundary(self):
        assert word_mul(w("x^2*y"), w("y^-1*x")) == w("x^3")

    def test_torus_relator(self):
        p, q = 5, 7
        r = word_mul(Word.gen(AB, "a", p), Word.gen(AB, "b", -q))
        assert r.syllables == ((0, 5), (1, -7))
        assert str(r) == "a^5*b^-7"

    def test_alphabet_mismatch(self):
        with pytest.raises(AlphabetMismatch):
            word_mul(w("x"), parse_word("a", AB))

    @given(st.data())
    def test_matches_letter_oracle(self, data):
        k = data.draw(st.integers(1, 4))
        u_l = data.draw(letter_lists(k))
        v_l = data.draw(letter_lists(k))
        a = ALPHABETS[k]
        prod = word_mul(word_from_letters(u_l, a), word_from_letters(v_l, a))
        assert signed_letters(prod) == free_reduce_letters(u_l + v_l)

    @given(st.data())
    def test_group_laws(self, data):
        k = data.draw(st.integers(1, 4))
        u, v, x = (data.draw(words(k)) for _ in range(3))
        one = Word.identity(ALPHABETS[k])
        assert (u * v) * x == u * (v * x)
        assert u * one == u == one * u
        assert (u * u.inverse()).is_identity()

    @given(words())
    def test_canonical_form(self, u):
        syl = u.syllables
        assert all(e != 0 for _, e in syl)
        assert all(syl[i][0] != syl[i + 1][0] for i in range(len(syl) - 1))


class TestWordInv:
    def test_identity(self):
        assert word_inv(Word.identity(XY)).is_identity()

    def test_reverse_negate(self):
        assert word_inv(w("x^2*y^-1")) == w("y*x^-2")

    def test_commutator(self):
        assert word_inv(w("x*y*x^-1*y^-1")) == w("y*x*y^-1*x^-1")

    @given(words())
    def test_involution(self, u):
        assert word_inv(word_inv(u)) == u
        assert word_mul(u, word_inv(u)).is_identity()


class TestParse:
    def test_powers(self):
        assert parse_word("a^3*b^-2", AB).syllables == ((0, 3), (1, -2))

    def test_parenthesised_inverse(self):
        assert w("(x*y)^-1") == w("y^-1*x^-1")

    def test_commutator_text(self):
        c = w("x*y*x^-1*y^-1")
        assert c.syllables == ((0, 1), (1, 1), (0, -1), (1, -1))

    def test_whitespace_and_one(self):
        assert w(" x ^ 2 * ( y * x ) ^ 0 ") == w("x^2")
        assert w("1").is_identity()
        assert w("x*1*x") == w("x^2")

    def test_syntax_error_has_position(self):
        with pytest.raises(WordSyntaxError) as exc:
            w("x*^2")
        assert exc.value.pos == 2

    @pytest.mark.parametrize("bad", ["", "x*", "(x", "x^", "x^y", "x y"])
    def test_rejects(self, bad):
        with pytest.raises(WordError):
            w(bad)

    def test_unknown_generator(self):
        with pytest.raises(WordError, match="unknown generator"):
            w("q")

    def test_alphabet_validation(self):
        with pytest.raises(WordError):
            Alphabet.of("x", "x")
        with pytest.raises(WordError):
            Alphabet.of("1x")

    @given(words())
    def test_round_trip(self, u):
        assert parse_word(str(u), u.alphabet) == u
