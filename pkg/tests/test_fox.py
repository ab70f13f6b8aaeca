from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import free_reduce_letters, letter_lists, word_from_letters, words
from perires.catalog import catalog
from perires.fox import fox_derivative, fox_jacobian, free_context, fundamental_check, induced_map
from perires.groupring import FiniteCyclicOrder, RingContext
from perires.words import Alphabet, Word, WordError, parse_word

XY = Alphabet.of("x", "y")
AB = Alphabet.of("a", "b")


def letter_fox(letters, g):
    """Letter-by-letter derivation: D(u l) = D(u) + u D(l), D(x^-1) = -x^-1."""
    out = Counter()
    prefix = []
    for l in letters:
        if abs(l) - 1 == g:
            if l > 0:
                out[tuple(free_reduce_letters(prefix))] += 1
            else:
                out[tuple(free_reduce_letters(prefix + [l]))] -= 1
        prefix.append(l)
    return {k: v for k, v in out.items() if v}


def as_letter_dict(elem):
    return {tuple((g + 1) * s for g, s in w.letters()): c for w, c in elem.terms()}


def test_generator_cases():
    x, y = parse_word("x", XY), parse_word("y", XY)
    ctx = free_context(XY)
    assert fox_derivative(x, "x") == ctx.one()
    assert fox_derivative(x, "y").is_zero_element()
    assert fox_derivative(Word.identity(XY), "x").is_zero_element()
    assert fox_derivative(y.inverse(), "y") == -ctx.word("y^-1")


@pytest.mark.parametrize("p", [1, 2, 5, 9])
def test_power_is_geometric_sum(p):
    a = parse_word(f"a^{p}", AB)
    ctx = free_context(AB)
    assert fox_derivative(a, "a") == ctx.ngk("a", p - 1)


def test_commutator():
    c = parse_word("x*y*x^-1*y^-1", XY)
    ctx = free_context(XY)
    assert fox_derivative(c, "x") == ctx.parse("1 - x*y*x^-1")
    assert fox_derivative(c, "y") == ctx.parse("x - x*y*x^-1*y^-1")
    assert fundamental_check(c)


def test_torus_relator():
    for p, q in [(2, 3), (3, 5), (4, 9)]:
        assert fundamental_check(parse_word(f"a^{p}*b^{-q}", AB))


def test_unknown_generator():
    with pytest.raises(WordError):
        fox_derivative(parse_word("x", XY), "q")


@given(st.data())
def test_matches_letter_oracle(data):
    k = data.draw(st.integers(1, 4))
    letters = data.draw(letter_lists(k))
    w = word_from_letters(letters, Alphabet(tuple("xyzw"[:k])))
    g = data.draw(st.integers(0, k - 1))
    # the oracle works on the unreduced letters: derivatives respect free reduction
    assert as_letter_dict(fox_derivative(w, g)) == letter_fox(letters, g)


@settings(max_examples=1000)
@given(words())
def test_fundamental_formula(w):
    assert fundamental_check(w)


@given(st.data())
def test_derivation_law(data):
    k = data.draw(st.integers(1, 4))
    u, v = data.draw(words(k)), data.draw(words(k))
    ctx = free_context(u.alphabet)
    for g in range(k):
        assert fox_derivative(u * v, g) == fox_derivative(u, g) + ctx.word(u) * fox_derivative(v, g)


@given(words())
def test_inverse_rule(w):
    ctx = free_context(w.alphabet)
    for g in range(len(w.alphabet)):
        assert fox_derivative(w.inverse(), g) == -(ctx.word(w.inverse()) * fox_derivative(w, g))


class TestInducedMap:
    def test_one(self):
        tgt = RingContext(XY, FiniteCyclicOrder((2, 2)), "group")
        assert induced_map(free_context(XY).one(), tgt) == tgt.one()

    def test_involution_collapses(self):
        T = Alphabet.of("x")
        tgt = RingContext(T, FiniteCyclicOrder((2,)), "group")
        assert induced_map(free_context(T).parse("x + x^-1"), tgt) == tgt.parse("2*x")

    @pytest.mark.parametrize("p,q", [(2, 3), (3, 4), (5, 2)])
    def test_torus_b_derivative(self, p, q):
        entry = catalog("torus_knot", p=p, q=q, k=1)
        G = entry.presentation.group_context
        r = entry.presentation.relators[0]
        assert induced_map(fox_derivative(r, "b"), G) == -G.ngk("b", q - 1)

    @given(st.data())
    def test_ring_homomorphism(self, data):
        tgt = RingContext(XY, FiniteCyclicOrder((3, 4)), "group")
        src = free_context(XY)
        u, v = data.draw(words(2, 8)), data.draw(words(2, 8))
        a = src.word(u) - src.word(v) * 2
        b = src.word(v) + 1
        assert induced_map(a * b, tgt) == induced_map(a, tgt) * induced_map(b, tgt)


def test_jacobian_shape():
    rels = [parse_word(r, XY) for r in ("x*y*x^-1*y^-1", "x^3", "y^2")]
    J = fox_jacobian(rels, XY)
    assert len(J) == 3 and all(len(r) == 2 for r in J)
