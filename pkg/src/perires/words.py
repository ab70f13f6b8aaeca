"""Free-group words in exponent-collected (syllable) form.

A word is stored as a tuple of ``(generator_index, exponent)`` pairs with
no zero exponents and no two adjacent pairs on the same generator, so
structural equality is equality in the free group.

>>> ab = Alphabet.of("a", "b")
>>> w = parse_word("a^3*b^-2*b^2*a", ab)
>>> str(w)
'a^4'
>>> str(parse_word("(x*y)^-1", Alphabet.of("x", "y")))
'y^-1*x^-1'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

Syllables = tuple[tuple[int, int], ...]

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class WordError(ValueError):
    pass


class WordSyntaxError(WordError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


class AlphabetMismatch(WordError):
    pass


@dataclass(frozen=True)
class Generator:
    index: int
    name: str


@dataclass(frozen=True)
class Alphabet:
    names: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise WordError(f"duplicate generator names in {self.names}")
        for n in self.names:
            if not _NAME_RE.match(n):
                raise WordError(f"invalid generator name {n!r}")

    @classmethod
    def of(cls, *names: str) -> "Alphabet":
        return cls(tuple(names))

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise WordError(f"unknown generator {name!r}") from None

    def generator(self, name_or_index: str | int) -> Generator:
        if isinstance(name_or_index, int):
            if not 0 <= name_or_index < len(self.names):
                raise WordError(f"generator index {name_or_index} out of range")
            return Generator(name_or_index, self.names[name_or_index])
        return Generator(self.index(name_or_index), name_or_index)

    @property
    def generators(self) -> tuple[Generator, ...]:
        return tuple(Generator(i, n) for i, n in enumerate(self.names))


def reduce_syllables(pairs: Iterable[tuple[int, int]]) -> Syllables:
    """Collect and freely reduce an arbitrary sequence of (gen, exp) pairs."""
    out: list[list[int]] = []
    for g, e in pairs:
        if e == 0:
            continue
        if out and out[-1][0] == g:
            out[-1][1] += e
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([g, e])
    return tuple((g, e) for g, e in out)


def concat_syllables(u: Syllables, v: Syllables) -> Syllables:
    # both inputs are reduced, so cancellation only happens at the seam
    if not u:
        return v
    if not v:
        return u
    i, j = len(u), 0
    carry = None
    while i > 0 and j < len(v):
        g1, e1 = u[i - 1]
        g2, e2 = v[j]
        if g1 != g2:
            break
        if e1 + e2 == 0:
            i -= 1
            j += 1
            continue
        carry = (g1, e1 + e2)
        i -= 1
        j += 1
        break
    if carry is None:
        return u[:i] + v[j:]
    return u[:i] + (carry,) + v[j:]


def invert_syllables(u: Syllables) -> Syllables:
    return tuple((g, -e) for g, e in reversed(u))


def power_syllables(u: Syllables, n: int) -> Syllables:
    if n < 0:
        u, n = invert_syllables(u), -n
    result: Syllables = ()
    base = u
    while n:
        if n & 1:
            result = concat_syllables(result, base)
        n >>= 1
        if n:
            base = concat_syllables(base, base)
    return result


class Word:
    """Immutable reduced word over an :class:`Alphabet`."""

    __slots__ = ("syllables", "alphabet", "_hash")

    def __init__(self, syllables: Sequence[tuple[int, int]], alphabet: Alphabet, *, reduced: bool = False):
        syl = tuple(syllables) if reduced else reduce_syllables(syllables)
        for g, _ in syl:
            if not 0 <= g < len(alphabet):
                raise WordError(f"generator index {g} outside alphabet {alphabet.names}")
        object.__setattr__(self, "syllables", syl)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "_hash", hash(syl))

    def __setattr__(self, key, value):
        raise AttributeError("Word is immutable")

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "Word":
        return cls((), alphabet, reduced=True)

    @classmethod
    def gen(cls, alphabet: Alphabet, name: str | int, exponent: int = 1) -> "Word":
        g = alphabet.generator(name).index
        return cls(((g, exponent),), alphabet)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.syllables == other.syllables and (
            self.alphabet is other.alphabet or self.alphabet == other.alphabet
        )

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        """Letter length."""
        return sum(abs(e) for _, e in self.syllables)

    def is_identity(self) -> bool:
        return not self.syllables

    def __mul__(self, other: "Word") -> "Word":
        return word_mul(self, other)

    def __pow__(self, n: int) -> "Word":
        return Word(power_syllables(self.syllables, n), self.alphabet, reduced=True)

    def inverse(self) -> "Word":
        return word_inv(self)

    def letters(self) -> list[tuple[int, int]]:
        """Expand to a list of (gen, +-1) letters."""
        out = []
        for g, e in self.syllables:
            s = 1 if e > 0 else -1
            out.extend([(g, s)] * abs(e))
        return out

    def exponent_sum(self, g: int) -> int:
        return sum(e for h, e in self.syllables if h == g)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"

    def sort_key(self):
        return (len(self), self.syllables)


def _check_same(u: Word, v: Word) -> None:
    if u.alphabet is not v.alphabet and u.alphabet != v.alphabet:
        raise AlphabetMismatch(f"{u.alphabet.names} vs {v.alphabet.names}")


def word_mul(u: Word, v: Word) -> Word:
    _check_same(u, v)
    return Word(concat_syllables(u.syllables, v.syllables), u.alphabet, reduced=True)


def word_inv(u: Word) -> Word:
    return Word(invert_syllables(u.syllables), u.alphabet, reduced=True)


def format_syllables(syl: Syllables, names: Sequence[str]) -> str:
    if not syl:
        return "1"
    parts = []
    for g, e in syl:
        parts.append(names[g] if e == 1 else f"{names[g]}^{e}")
    return "*".join(parts)


def format_word(w: Word) -> str:
    return format_syllables(w.syllables, w.alphabet.names)


class _Parser:
    """Recursive-descent parser for the word grammar.

    ``word := term ('*' term)* | '1'``, ``term := atom ('^' int)?``,
    ``atom := NAME | '(' word ')'``.
    """

    def __init__(self, text: str, alphabet: Alphabet, pos: int = 0):
        self.text = text
        self.alphabet = alphabet
        self.pos = pos

    def error(self, msg: str):
        raise WordSyntaxError(msg, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def integer(self) -> int:
        self.skip()
        m = re.compile(r"-?[0-9]+").match(self.text, self.pos)
        if not m:
            self.error("expected integer")
        self.pos = m.end()
        return int(m.group())

    def word(self) -> Syllables:
        out = self.term()
        while self.peek() == "*" and self._star_continues_word():
            self.pos += 1
            out = concat_syllables(out, self.term())
        return out

    def _star_continues_word(self) -> bool:
        # NAME '(' is never valid word syntax, so 'N(' after '*' belongs to
        # the group-ring grammar that embeds this parser
        return not re.match(r"\*\s*N\s*\(", self.text[self.pos:])

    def term(self) -> Syllables:
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            base = power_syllables(base, self.integer())
        return base

    def atom(self) -> Syllables:
        c = self.peek()
        if c == "(":
            self.pos += 1
            inner = self.word()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return inner
        if c == "1" and not self.text[self.pos + 1 : self.pos + 2].isdigit():
            self.pos += 1
            return ()
        m = re.compile(r"[A-Za-z_][A-Za-z0-9_]*").match(self.text, self.pos)
        if not m:
            self.error("expected generator name or '('")
        name = m.group()
        if name not in self.alphabet.names:
            raise WordError(f"unknown generator {name!r} at position {self.pos} in {self.text!r}")
        self.pos = m.end()
        return ((self.alphabet.index(name), 1),)


def parse_word(text: str, alphabet: Alphabet) -> Word:
    p = _Parser(text, alphabet)
    syl = p.word()
    if p.peek():
        p.error("unexpected trailing input")
    return Word(syl, alphabet, reduced=True)
