import itertools
import math

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from perires.words import Alphabet, Word

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

ALPHABETS = {k: Alphabet(tuple("xyzw"[:k])) for k in range(1, 5)}

# acceptance results, filled by tests/test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def letter_lists(k: int, max_len: int = 20):
    """Lists of nonzero signed letters ``+-(g+1)`` over ``k`` generators."""
    letter = st.integers(1, k).flatmap(lambda g: st.sampled_from([g, -g]))
    return st.lists(letter, max_size=max_len)


def word_from_letters(letters, alphabet) -> Word:
    return Word([(abs(l) - 1, 1 if l > 0 else -1) for l in letters], alphabet)


@st.composite
def words(draw, k: int | None = None, max_len: int = 20):
    k = k or draw(st.integers(1, 4))
    return word_from_letters(draw(letter_lists(k, max_len)), ALPHABETS[k])


def free_reduce_letters(letters):
    """Stack-based free reduction; independent of the syllable code."""
    out = []
    for l in letters:
        if out and out[-1] == -l:
            out.pop()
        else:
            out.append(l)
    return out


def det_cofactor(rows) -> int:
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * det_cofactor(minor)
    return total


def determinantal_divisors(rows) -> list[int]:
    """``D_k`` = gcd of all ``k x k`` minors; invariant factors are ``D_k / D_(k-1)``."""
    m = len(rows)
    n = len(rows[0]) if rows else 0
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for ri in itertools.combinations(range(m), k):
            for ci in itertools.combinations(range(n), k):
                g = math.gcd(g, det_cofactor([[rows[i][j] for j in ci] for i in ri]))
        if g == 0:
            break
        out.append(g)
    return out


def invariant_factors_oracle(rows) -> tuple[int, ...]:
    ds = determinantal_divisors(rows)
    prev = 1
    out = []
    for d in ds:
        out.append(d // prev)
        prev = d
    return tuple(out)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def entries():
    from perires import catalog

    return {
        "cyclic5": catalog("cyclic", m=5),
        "torus232": catalog("torus_knot", p=2, q=3, k=2),
        "heis3": catalog("heisenberg", k=3),
        "tri237": catalog("triangle", l=2, m=3, n=7),
        "braid4": catalog("braid4"),
    }
