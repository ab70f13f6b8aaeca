"""Fox free differential calculus on syllable words.

Derivatives are taken in the free group ring. For a syllable ``x^n``:

* ``d(x^n)/dx = 1 + x + ... + x^(n-1)`` for n > 0,
* ``d(x^n)/dx = -(x^-1 + x^-2 + ... + x^n)`` for n < 0,

and the product rule ``D(uv) = D(u) + u D(v)`` stitches syllables together.
"""

from __future__ import annotations

from .groupring import GroupRingElement, RingContext, induced_map
from .words import Alphabet, Generator, Word, WordError, concat_syllables

__all__ = ["fox_derivative", "fox_jacobian", "fundamental_check", "induced_map", "free_context"]

_FREE_CONTEXTS: dict[Alphabet, RingContext] = {}


def free_context(alphabet: Alphabet) -> RingContext:
    ctx = _FREE_CONTEXTS.get(alphabet)
    if ctx is None:
        ctx = _FREE_CONTEXTS[alphabet] = RingContext(alphabet, label="free")
    return ctx


def _gen_index(w: Word, g: Generator | str | int) -> int:
    if isinstance(g, Generator):
        if g.index >= len(w.alphabet) or w.alphabet.names[g.index] != g.name:
            raise WordError(f"generator {g.name!r} not in alphabet {w.alphabet.names}")
        return g.index
    return w.alphabet.generator(g).index


def fox_derivative(w: Word, g: Generator | str | int, context: RingContext | None = None) -> GroupRingElement:
    """Partial derivative of ``w`` with respect to ``g`` in the free group ring."""
    ctx = context or free_context(w.alphabet)
    gi = _gen_index(w, g)
    acc: dict = {}
    prefix: tuple = ()
    for h, e in w.syllables:
        if h == gi:
            if e > 0:
                powers, sign = range(0, e), 1
            else:
                powers, sign = range(e, 0), -1
            for i in powers:
                key = concat_syllables(prefix, ((gi, i),) if i else ())
                acc[key] = acc.get(key, 0) + sign
        prefix = concat_syllables(prefix, ((h, e),))
    if ctx.label != "free" or ctx.normalizer.kind != "free":
        return induced_map(GroupRingElement(acc, free_context(w.alphabet)), ctx)
    return GroupRingElement(acc, ctx)


def fox_jacobian(relators, alphabet: Alphabet, target: RingContext | None = None) -> list[list[GroupRingElement]]:
    """Rows are relators, columns generators; entries mapped into ``target``."""
    rows = []
    for r in relators:
        row = [fox_derivative(r, i) for i in range(len(alphabet))]
        if target is not None:
            row = [induced_map(x, target) for x in row]
        rows.append(row)
    return rows


def fundamental_check(w: Word) -> bool:
    """Check ``w - 1 == sum_i (dw/dx_i)(x_i - 1)`` exactly in the free group ring."""
    ctx = free_context(w.alphabet)
    lhs = ctx.word(w) - ctx.one()
    rhs = ctx.zero()
    for i in range(len(w.alphabet)):
        rhs = rhs + fox_derivative(w, i) * ctx.gen_minus_one(i)
    return lhs == rhs
