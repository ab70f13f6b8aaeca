from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import free_reduce_letters, letter_lists, word_from_letters, words
from perires.catalog import _heisenberg_normalizer
from perires.groupring import (
    AmalgamOfCyclics,
    ContextMismatch,
    FiniteCyclicOrder,
    NormalizationInconclusive,
    RepresentationWitness,
    RewritingSystem,
    RingContext,
    Verdict,
    augment,
    gr_add,
    gr_mul,
    gr_neg,
    gr_scalar,
    is_zero,
    ngk,
    parse_grexpr,
)
from perires.words import Alphabet, Word, parse_word

T = Alphabet.of("t")
XY = Alphabet.of("x", "y")
XYZ = Alphabet.of("x", "y", "z")
AB = Alphabet.of("a", "b")
FREE_T = RingContext(T)
FREE_XY = RingContext(XY)


HEIS3 = RingContext(XYZ, _heisenberg_normalizer(3), "quotient")


def cyc(m):
    return RingContext(T, FiniteCyclicOrder((m,)), "quotient")


@st.composite
def elements(draw, ctx, max_terms=8, max_len=6):
    k = len(ctx.alphabet)
    n = draw(st.integers(0, max_terms))
    terms = []
    for _ in range(n):
        letters = draw(letter_lists(k, max_len))
        terms.append((word_from_letters(letters, ctx.alphabet), draw(st.integers(-9, 9))))
    return ctx.element(terms)


# ---------------------------------------------------------------------------
# free-context oracle: Counter over reduced letter tuples


def oracle(elem):
    out = Counter()
    for w, c in elem.terms():
        out[tuple((g + 1) * s for g, s in w.letters())] += c
    return {k: v for k, v in out.items() if v}


def oracle_mul(a, b):
    out = Counter()
    for u, c in oracle(a).items():
        for v, d in oracle(b).items():
            out[tuple(free_reduce_letters(list(u) + list(v)))] += c * d
    return {k: v for k, v in out.items() if v}


class TestAdditive:
    def test_cancel(self):
        t = FREE_T
        assert gr_add(t.parse("t - 1"), t.parse("1 - t")).is_zero_element()

    def test_scalar(self):
        assert gr_scalar(2, FREE_XY.parse("x + y")) == FREE_XY.parse("2*x + 2*y")

    def test_sum(self):
        assert FREE_XY.parse("x + y") + FREE_XY.parse("x - y") == FREE_XY.parse("2*x")

    def test_neg(self):
        a = FREE_XY.parse("3*x - y^-1 + 2")
        assert (a + gr_neg(a)).is_zero_element()

    def test_context_mismatch(self):
        with pytest.raises(ContextMismatch):
            FREE_T.one() + cyc(3).one()

    @given(elements(FREE_XY), elements(FREE_XY))
    def test_no_zero_coefficients(self, a, b):
        assert all(c != 0 for _, c in (a + b).terms())
        assert all(c != 0 for _, c in (a - a).terms())


class TestMultiplication:
    @pytest.mark.parametrize("m", [2, 3, 5, 12])
    def test_factor_t_m_minus_1_free(self, m):
        t = FREE_T
        assert gr_mul(t.parse("t - 1"), t.ngk("t", m - 1)) == t.parse(f"t^{m} - 1")

    @pytest.mark.parametrize("m", [2, 3, 5, 12])
    def test_factor_vanishes_in_cyclic(self, m):
        c = cyc(m)
        prod = gr_mul(c.parse("t - 1"), c.ngk("t", m - 1))
        assert prod.is_zero_element()
        assert is_zero(prod) is Verdict.ZERO

    def test_identity(self):
        a = FREE_XY.parse("x*y^-1 - 3")
        assert FREE_XY.one() * a == a == a * FREE_XY.one()

    @given(elements(FREE_XY), elements(FREE_XY))
    def test_product_matches_letter_oracle(self, a, b):
        assert oracle(a * b) == oracle_mul(a, b)

    @given(elements(FREE_XY, 4), elements(FREE_XY, 4), elements(FREE_XY, 4))
    def test_ring_axioms(self, a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c

    @given(elements(FREE_XY), elements(FREE_XY))
    def test_augmentation_multiplicative(self, a, b):
        assert augment(a * b) == augment(a) * augment(b)
        assert augment(a + b) == augment(a) + augment(b)

    @given(words(), st.integers(0, 30))
    def test_geometric_series(self, g, k):
        ctx = RingContext(g.alphabet)
        lhs = (ctx.word(g) - 1) * ngk(g, k, ctx)
        assert lhs == ctx.word(g ** (k + 1)) - 1


class TestNgkAndAugment:
    def test_ngk_zero(self):
        assert FREE_T.ngk("t", 0) == FREE_T.one()

    def test_ngk_free(self):
        assert FREE_T.ngk("t", 4) == FREE_T.parse("1 + t + t^2 + t^3 + t^4")

    def test_ngk_delta(self):
        ctx = RingContext(XYZ)
        e = ctx.ngk("x*y*z", 3)
        assert e == ctx.parse("1 + x*y*z + (x*y*z)^2 + (x*y*z)^3")
        assert len(e) == 4

    def test_ngk_negative(self):
        with pytest.raises(ValueError):
            FREE_T.ngk("t", -1)

    def test_augment_examples(self):
        ctx = RingContext(AB)
        assert augment(ctx.parse("a*b^2 - 1")) == 0
        k, p = 3, 2
        assert augment(ctx.ngk("a", k * p - 1)) == k * p
        assert augment(ctx.zero()) == 0


class TestCyclicOrder:
    @given(st.lists(st.integers(-20, 20), max_size=10), st.integers(1, 9))
    def test_exponent_mod_m(self, exps, m):
        c = cyc(m)
        w = Word([(0, e) for e in exps], T)
        e = sum(exps) % m
        assert c.word(w) == c.word(Word([(0, e)], T))

    def test_inverse_equals_self_mod_two(self):
        c = cyc(2)
        x = c.parse("t + t^-1")
        assert x == c.parse("2*t")

    @given(st.data())
    def test_free_product_against_stack_oracle(self, data):
        orders = (2, 3)
        ctx = RingContext(XY, FiniteCyclicOrder(orders), "group")
        letters = data.draw(letter_lists(2, 20))
        # oracle: push letters, merging equal neighbours mod their order
        stack = []
        for l in letters:
            g, s = abs(l) - 1, 1 if l > 0 else -1
            if stack and stack[-1][0] == g:
                e = (stack.pop()[1] + s) % orders[g]
                if e:
                    stack.append((g, e))
            else:
                stack.append((g, s % orders[g]))
        got = ctx.word(word_from_letters(letters, XY)).single_word().syllables
        assert got == tuple(stack)


def _heis_matrix(word):
    # x -> I + E12, y -> I + E23, z = [x, y] -> I + E13, as integer triples (a, b, c)
    a = b = c = 0
    for g, s in word.letters():
        if g == 0:
            a += s
        elif g == 1:
            c += s * a
            b += s
        else:
            c += s
    return a, b, c


class TestPolycyclic:
    @pytest.mark.parametrize("k", [0, 1, 2, 3, 5])
    def test_normal_form_against_unipotent_oracle(self, k):
        ctx = RingContext(XYZ, _heisenberg_normalizer(k), "quotient")

        @given(words(3, 16))
        def check(u):
            nf = ctx.word(u).single_word()
            a, b, c = _heis_matrix(u)
            cz = c - a * b
            if k:
                cz %= k
            expected = Word([(0, a), (1, b), (2, cz)], XYZ)
            assert nf == expected

        check()

    @given(elements(HEIS3, 3, 5), elements(HEIS3, 3, 5), elements(HEIS3, 3, 5))
    def test_associative(self, a, b, c):
        assert (a * b) * c == a * (b * c)


SL2 = RepresentationWitness.from_lists([[[0, -1], [1, 0]], [[0, -1], [1, 1]]])


class TestAmalgam:
    def test_sl2_normal_forms_faithful(self):
        # Z/4 *_{Z/2} Z/6 is SL2(Z): normal forms agree iff the matrices agree
        norm = AmalgamOfCyclics(0, 1, 2, 3, 2)

        @given(words(2, 14), words(2, 14))
        def check(u, v):
            nu, nv = norm.normalize(u.syllables), norm.normalize(v.syllables)
            assert SL2.evaluate_word(nu) == SL2.evaluate_word(u.syllables)
            same = SL2.evaluate_word(u.syllables) == SL2.evaluate_word(v.syllables)
            assert (nu == nv) == same

        check()

    def test_central_fusion(self):
        norm = AmalgamOfCyclics(0, 1, 2, 3, 0)
        assert norm.normalize(parse_word("b^3*a", AB).syllables) == ((0, 3),)
        assert norm.normalize(parse_word("a^2*b^-3", AB).syllables) == ()
        assert norm.normalize(parse_word("b^4", AB).syllables) == ((0, 2), (1, 1))

    def test_torus_relator_image(self):
        ctx = RingContext(AB, AmalgamOfCyclics(0, 1, 5, 7), "group")
        assert ctx.word(parse_word("a^5*b^-7", AB)) == ctx.one()


class TestRewriting:
    def test_commutative_rules(self):
        rs = RewritingSystem(
            (
                (((1, 1), (0, 1)), ((0, 1), (1, 1))),
                (((1, -1), (0, 1)), ((0, 1), (1, -1))),
                (((1, 1), (0, -1)), ((0, -1), (1, 1))),
                (((1, -1), (0, -1)), ((0, -1), (1, -1))),
            ),
            confluent=True,
        )
        ctx = RingContext(XY, rs, "group")
        assert ctx.complete

        @given(words(2, 12))
        def check(u):
            nf = ctx.word(u).single_word()
            assert nf == Word([(0, u.exponent_sum(0)), (1, u.exponent_sum(1))], XY)

        check()

    def test_step_cap(self, monkeypatch):
        loop = RewritingSystem(((((0, 1),), ((1, 1),)), (((1, 1),), ((0, 1),))))
        ctx = RingContext(XY, loop, "group")
        monkeypatch.setenv("PERIRES_REWRITE_CAP", "50")
        with pytest.raises(NormalizationInconclusive):
            ctx.word(parse_word("x", XY))

    def test_bad_cap(self, monkeypatch):
        ctx = RingContext(XY, RewritingSystem(((((0, 2),), ()),)), "group")
        monkeypatch.setenv("PERIRES_REWRITE_CAP", "lots")
        with pytest.raises(ValueError):
            ctx.word(parse_word("y", XY))

    def test_unconfluent_is_incomplete(self):
        ctx = RingContext(XY, RewritingSystem(((((0, 2),), ()),)), "quotient")
        assert not ctx.complete
        e = ctx.parse("x*y - y*x")
        assert is_zero(e) is Verdict.INCONCLUSIVE


class TestVerdicts:
    def test_free_nonzero(self):
        assert is_zero(FREE_XY.parse("x - 1")) is Verdict.NONZERO

    def test_augmentation_forces_nonzero(self):
        ctx = RingContext(XY, RewritingSystem(((((0, 2),), ()),)), "quotient")
        assert is_zero(ctx.parse("x + y")) is Verdict.NONZERO

    def test_witness_refutes(self):
        # SL2 witness separates S from S^-1 although no complete normalizer is used
        ctx = RingContext(AB, RewritingSystem(((((0, 4),), ()),)), "quotient", witnesses=(SL2,))
        assert is_zero(ctx.parse("a - a^-1")) is Verdict.NONZERO
        assert is_zero(ctx.parse("a^2 - b^3")) is Verdict.INCONCLUSIVE

    def test_witness_never_proves_zero(self):
        trivial = RepresentationWitness.from_lists([[[1]], [[1]]])
        ctx = RingContext(AB, RewritingSystem(((((0, 4),), ()),)), "quotient", witnesses=(trivial,))
        assert is_zero(ctx.parse("a - b")) is Verdict.INCONCLUSIVE

    def test_rational_inverse(self):
        w = RepresentationWitness.from_lists([[[2]]])
        ctx = RingContext(T, RewritingSystem(((((0, 5),), ()),)), "quotient", witnesses=(w,))
        img = w.image(ctx.parse("t^-1 - 1"))
        assert img[0][0] * 2 == -1


class TestExpressionGrammar:
    def test_spec_example(self):
        ctx = RingContext(Alphabet.of("S", "U"))
        e = parse_grexpr("N(S,3) - 2*S*U^-1 + 1", ctx)
        assert e.coefficient("1") == 2
        assert e.coefficient("S*U^-1") == -2
        assert e.coefficient("S^3") == 1
        assert augment(e) == 3

    def test_leading_sign_and_bare_int(self):
        assert FREE_XY.parse("-x + 3") == FREE_XY.scalar(3) - FREE_XY.word("x")
        assert FREE_XY.parse("0").is_zero_element()

    @pytest.mark.parametrize("bad", ["x +", "N(x)", "2**x", "x + + y", "N(x,-1)"])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            FREE_XY.parse(bad)

    @given(elements(FREE_XY))
    def test_round_trip(self, a):
        assert FREE_XY.parse(str(a)) == a
