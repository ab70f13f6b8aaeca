"""Built-in families: cyclic, torus-knot quotients, Heisenberg quotients,
triangle groups and the four-strand braid group modulo its centre.

Every entry bundles a presentation, its central data, a seed resolution over
ZG and a null-homotopy of multiplication by the central element ``x``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable

from .complex import GRMatrix
from .groupring import (
    AmalgamOfCyclics,
    FiniteCyclicOrder,
    FreeReduction,
    PolycyclicCollection,
    RepresentationWitness,
    RewritingSystem,
    _identity,
    _matmul,
)
from .periodic import NullHomotopy
from .presentation import CentralData, Presentation, PresentationError, SeedResolution
from .words import Alphabet, parse_word


@dataclass
class CatalogEntry:
    name: str
    params: dict[str, Any]
    presentation: Presentation
    central: CentralData
    seed: SeedResolution
    homotopy: NullHomotopy

    def __iter__(self):
        return iter((self.presentation, self.central, self.seed, self.homotopy))

    @property
    def label(self) -> str:
        if not self.params:
            return self.name
        return f"{self.name}({', '.join(f'{k}={v}' for k, v in self.params.items())})"


@dataclass(frozen=True)
class Family:
    name: str
    signature: str
    constraints: str
    build: Callable[..., CatalogEntry] = field(compare=False)
    params: tuple[str, ...] = ()


def _matrix(ctx, rows):
    return GRMatrix.parse(ctx, [[x(ctx) if callable(x) else x for x in r] for r in rows])


def _entry(name, params, pres, central_word, sign, ranks, diffs, phis) -> CatalogEntry:
    ctx = pres.group_context
    seed = SeedResolution(ctx, tuple(ranks), tuple(_matrix(ctx, d) for d in diffs))
    h = NullHomotopy(tuple(_matrix(ctx, p) for p in phis))
    h.check_shapes(seed)
    central = CentralData.make(pres, parse_word(central_word, pres.alphabet), sign)
    return CatalogEntry(name, params, pres, central, seed, h)


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise PresentationError(msg)


def _int(name: str, value) -> int:
    try:
        return int(value)
    except (TypeError, ValueError):
        raise PresentationError(f"parameter {name} must be an integer, got {value!r}") from None


# ---------------------------------------------------------------------------
# families


def cyclic(m: int) -> CatalogEntry:
    """Z/m as the quotient of Z = <t> by t^m."""
    m = _int("m", m)
    _require(m >= 2, "cyclic needs m >= 2")
    A = Alphabet.of("t")
    pres = Presentation(A, (), FreeReduction(), FiniteCyclicOrder((m,)))
    return _entry(
        "cyclic",
        {"m": m},
        pres,
        f"t^{m}",
        +1,
        [1, 1],
        [[["t - 1"]]],
        [[[f"N(t,{m - 1})"]]],
    )


def _sl2_witness() -> RepresentationWitness:
    return RepresentationWitness.from_lists([[[0, -1], [1, 0]], [[0, -1], [1, 1]]], name="SL2(Z) S,U")


def torus_knot(p: int, q: int, k: int) -> CatalogEntry:
    """G = <a, b | a^p = b^q>, Gamma = G / <a^(kp)> = Z/kp *_{Z/k} Z/kq."""
    p, q, k = _int("p", p), _int("q", q), _int("k", k)
    _require(p >= 1 and q >= 1, "torus_knot needs p, q >= 1")
    _require(math.gcd(p, q) == 1, "torus_knot needs gcd(p, q) = 1")
    _require(k >= 1, "torus_knot needs k >= 1")
    A = Alphabet.of("a", "b")
    relator = parse_word(f"a^{p}*b^{-q}", A)
    wq: tuple = ()
    wg: tuple = ()
    if (p, q) == (2, 3):
        # S^2 = U^3 = -I, so the quotient relation (S^2)^k = 1 holds iff k is even
        w = _sl2_witness()
        if k % 2 == 0:
            wq = (w,)
        else:
            wg = (w,)
    pres = Presentation(
        A,
        (relator,),
        AmalgamOfCyclics(0, 1, p, q, 0),
        AmalgamOfCyclics(0, 1, p, q, k),
        witnesses_G=wg,
        witnesses_quotient=wq,
        quotient_names=("S", "U"),
    )
    return _entry(
        "torus_knot",
        {"p": p, "q": q, "k": k},
        pres,
        f"a^{k * p}",
        -1,
        [1, 2, 1],
        [
            [["a - 1"], ["b - 1"]],
            [[f"N(a,{p - 1})", f"-N(b,{q - 1})"]],
        ],
        [
            [[f"-N(a,{k * p - 1})", "0"]],
            [["0"], [lambda ctx: ctx.parse("b - 1") * ctx.ngk(f"b^{q}", k - 1)]],
        ],
    )


def _heisenberg_normalizer(k: int) -> PolycyclicCollection:
    # positions x=0, y=1, z=2; x^-1 y x = y z^-1 and x y x^-1 = y z (z central)
    return PolycyclicCollection(
        order=(0, 1, 2),
        relative_orders=(0, 0, k),
        powers=((), (), ()),
        conjugates=(((1, 0, 1), ((1, 1), (2, -1))), ((1, 0, -1), ((1, 1), (2, 1)))),
    )


def _heisenberg_witness() -> RepresentationWitness:
    X = [[1, 1, 0], [0, 1, 0], [0, 0, 1]]
    Y = [[1, 0, 0], [0, 1, 1], [0, 0, 1]]
    Xi = [[1, -1, 0], [0, 1, 0], [0, 0, 1]]
    Yi = [[1, 0, 0], [0, 1, -1], [0, 0, 1]]
    Z = _matmul(_matmul(_matmul(X, Y), Xi), Yi)
    return RepresentationWitness.from_lists([X, Y, Z], name="unipotent 3x3")


def heisenberg(k: int) -> CatalogEntry:
    """Integral Heisenberg group <x, y, z | [x,y] = z, z central> modulo z^k."""
    k = _int("k", k)
    _require(k >= 1, "heisenberg needs k >= 1")
    A = Alphabet.of("x", "y", "z")
    rels = tuple(parse_word(r, A) for r in ("x*y*x^-1*y^-1*z^-1", "x*z*x^-1*z^-1", "y*z*y^-1*z^-1"))
    pres = Presentation(
        A,
        rels,
        _heisenberg_normalizer(0),
        _heisenberg_normalizer(k),
        witnesses_G=(_heisenberg_witness(),),
    )
    N = f"N(z,{k - 1})"
    return _entry(
        "heisenberg",
        {"k": k},
        pres,
        f"z^{k}",
        -1,
        [1, 3, 3, 1],
        [
            [["x - 1"], ["y - 1"], ["z - 1"]],
            [["1 - z*y", "x - z", "-1"], ["1 - z", "0", "x - 1"], ["0", "1 - z", "y - 1"]],
            [["z - 1", "1 - z*y", "x - z"]],
        ],
        [
            [["0", "0", f"-{N}"]],
            [["0", N, "0"], ["0", "0", N], ["0", "0", "0"]],
            [[f"-{N}"], ["0"], ["0"]],
        ],
    )


def _perm_mul(p, q):
    # p then q, matching products of permutation matrices acting on row vectors
    return tuple(q[i] for i in p)


def _perm_pow(p, e):
    out = tuple(range(len(p)))
    for _ in range(e):
        out = _perm_mul(out, p)
    return out


def _random_perm_of_order(rng: random.Random, N: int, order: int):
    divisors = [d for d in range(1, order + 1) if order % d == 0]
    pts = list(range(N))
    rng.shuffle(pts)
    perm = list(range(N))
    i = 0
    while i < N:
        d = rng.choice(divisors)
        if i + d > N:
            d = 1
        cyc = pts[i : i + d]
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            perm[a] = b
        i += d
    return tuple(perm)


def _transitive(gens, N) -> bool:
    seen, todo = {0}, [0]
    while todo:
        v = todo.pop()
        for g in gens:
            if g[v] not in seen:
                seen.add(g[v])
                todo.append(g[v])
    return len(seen) == N


def _perm_matrix(p):
    N = len(p)
    return [[1 if p[i] == j else 0 for j in range(N)] for i in range(N)]


@lru_cache(maxsize=None)
def triangle_permutation_witnesses(l: int, m: int, n: int, seed: int = 0, want: int = 3, max_points: int = 16):
    """Transitive permutation representations of T(l,m,n) by seeded random search.

    Images of ``a`` and ``b`` have orders dividing l and m; the product must
    have order dividing n. Returns at most ``want`` representations on
    distinct numbers of points, largest first.
    """
    rng = random.Random(seed * 1_000_003 + l * 10_007 + m * 101 + n)
    found = {}
    for N in range(max(l, m, n), max_points + 1):
        for _ in range(4000):
            a = _random_perm_of_order(rng, N, l)
            b = _random_perm_of_order(rng, N, m)
            ident = tuple(range(N))
            if a == ident or b == ident:
                continue
            if _perm_pow(_perm_mul(a, b), n) != ident:
                continue
            if _transitive((a, b), N):
                found[N] = (a, b)
                break
    picks = sorted(found, reverse=True)[:want]
    return tuple(
        RepresentationWitness.from_lists([_perm_matrix(found[N][0]), _perm_matrix(found[N][1])], name=f"permutation rep on {N} points")
        for N in picks
    )


def triangle(l: int, m: int, n: int) -> CatalogEntry:
    """G = <a, b | a^l = b^m = (ab)^n>, Gamma = G / <a^l> the triangle group T(l,m,n)."""
    l, m, n = _int("l", l), _int("m", m), _int("n", n)
    _require(2 <= l <= m <= n, "triangle needs 2 <= l <= m <= n")
    _require(m * n + l * n + l * m < l * m * n, "triangle needs 1/l + 1/m + 1/n < 1")
    A = Alphabet.of("a", "b")
    rels = (parse_word(f"(a*b)^{n}*b^{-m}", A), parse_word(f"(b*a)^{n}*a^{-l}", A))

    def rules(texts):
        return tuple((parse_word(lhs, A).syllables, parse_word(rhs, A).syllables) for lhs, rhs in texts)

    # sound, terminating but not confluent: every rule is an identity of the group
    norm_G = RewritingSystem(rules([(f"(a*b)^{n}", f"b^{m}"), (f"(b*a)^{n}", f"a^{l}"), (f"b^{m}", f"a^{l}")]))
    norm_Q = RewritingSystem(
        rules(
            [
                (f"a^{l}", "1"),
                (f"b^{m}", "1"),
                (f"(a*b)^{n}", "1"),
                (f"(b*a)^{n}", "1"),
                (f"a^{-l}", "1"),
                (f"b^{-m}", "1"),
            ]
        )
    )
    pres = Presentation(A, rels, norm_G, norm_Q, witnesses_quotient=triangle_permutation_witnesses(l, m, n))
    return _entry(
        "triangle",
        {"l": l, "m": m, "n": n},
        pres,
        f"a^{l}",
        -1,
        [1, 2, 2, 1],
        [
            [["a - 1"], ["b - 1"]],
            [
                [f"N(a*b,{n - 1})", f"N(a*b,{n - 1})*a - N(b,{m - 1})"],
                [f"N(b*a,{n - 1})*b - N(a,{l - 1})", f"N(b*a,{n - 1})"],
            ],
            [["1 - b", "1 - a"]],
        ],
        [
            [[f"-N(a,{l - 1})", "0"]],
            [["0", "0"], ["0", "1 - b*a"]],
            [[f"N(b,{m - 1})"], ["0"]],
        ],
    )


def _gauss_mul(u, v):
    return (u[0] * v[0] - u[1] * v[1], u[0] * v[1] + u[1] * v[0])


def _realify(M):
    """Replace each Gaussian integer a+bi by the 2x2 block [[a, b], [-b, a]]."""
    n = len(M)
    out = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            a, b = M[i][j]
            out[2 * i][2 * j], out[2 * i][2 * j + 1] = a, b
            out[2 * i + 1][2 * j], out[2 * i + 1][2 * j + 1] = -b, a
    return out


def _reduced_burau(t):
    """Reduced Burau matrices of sigma_1..sigma_3 at a Gaussian integer t = (re, im)."""
    one, zero = (1, 0), (0, 0)
    neg_t = (-t[0], -t[1])
    s1 = [[neg_t, one, zero], [zero, one, zero], [zero, zero, one]]
    s2 = [[one, zero, zero], [t, neg_t, one], [zero, zero, one]]
    s3 = [[one, zero, zero], [zero, one, zero], [zero, t, neg_t]]
    if t[1] == 0:
        return [[[x[0] for x in row] for row in s] for s in (s1, s2, s3)]
    return [_realify(s) for s in (s1, s2, s3)]


def _unreduced_burau(t: int):
    mats = []
    for i in range(3):
        M = _identity(4)
        M[i][i], M[i][i + 1], M[i + 1][i], M[i + 1][i + 1] = 1 - t, t, 1, 0
        mats.append(M)
    return mats


@lru_cache(maxsize=None)
def braid4_witnesses():
    """Candidate representations of B_4, sorted into those of B_4 and of B_4 / <Delta^4>."""
    A = Alphabet.of("x", "y", "z")
    rels = [parse_word(r, A) for r in ("x*y*x*(y*x*y)^-1", "y*z*y*(z*y*z)^-1", "x*z*x^-1*z^-1")]
    central = parse_word("(x*y*z)^4", A)
    cands = [
        ("reduced Burau t=-1", _reduced_burau((-1, 0))),
        ("reduced Burau t=i", _reduced_burau((0, 1))),
        ("unreduced Burau t=-1", _unreduced_burau(-1)),
        ("reduced Burau t=2", _reduced_burau((2, 0))),
        ("reduced Burau t=-2", _reduced_burau((-2, 0))),
    ]
    wq, wg = [], []
    for name, mats in cands:
        w = RepresentationWitness.from_lists(mats, name=name)
        if not all(w.kills(r.syllables) for r in rels):
            continue
        (wq if w.kills(central.syllables) else wg).append(w)
    return tuple(wq), tuple(wg)


def braid4() -> CatalogEntry:
    """B_4 = <x, y, z | xyx = yxy, yzy = zyz, xz = zx> modulo the centre <Delta^4>, Delta = xyz."""
    A = Alphabet.of("x", "y", "z")
    rels = tuple(parse_word(r, A) for r in ("x*y*x*(y*x*y)^-1", "y*z*y*(z*y*z)^-1", "x*z*x^-1*z^-1"))

    def rules(texts):
        return tuple((parse_word(lhs, A).syllables, parse_word(rhs, A).syllables) for lhs, rhs in texts)

    # braid relations oriented to decrease lexicographically (x < y < z); sound, not confluent
    braid_rules = [("y*x*y", "x*y*x"), ("z*y*z", "y*z*y"), ("z*x", "x*z")]
    wq, wg = braid4_witnesses()
    pres = Presentation(
        A,
        rels,
        RewritingSystem(rules(braid_rules)),
        RewritingSystem(rules([("(x*y*z)^4", "1")] + braid_rules)),
        witnesses_G=wg,
        witnesses_quotient=wq,
    )

    def D(text: str) -> str:
        return text.replace("D", "(x*y*z)")

    return _entry(
        "braid4",
        {},
        pres,
        "(x*y*z)^4",
        -1,
        [1, 3, 3, 1],
        [
            [["x - 1"], ["y - 1"], ["z - 1"]],
            [
                ["1 + x*y - y", "x - y*x - 1", "0"],
                ["0", "1 + y*z - z", "y - z*y - 1"],
                ["1 - z", "0", "x - 1"],
            ],
            [[D("1 + y*z - z - D"), "1 + y*x - x - z*y*x", "y + x*z*y - 1 - z*y - x*y - y*x*z*y"]],
        ],
        [
            [[D("-N(D,3)"), D("-N(D,3)*x"), D("-N(D,3)*x*y")]],
            [
                [D("-D^3 + x"), D("-D^2*x + x*y*x"), D("D^3*x*y - D^2 - x^2*y + x*y")],
                [D("D*x - 1"), D("-D^3*x + D*x*y*x"), D("-D^3 - D*x^2*y + D*x*y + x*y")],
                [D("D^2*x - D"), D("-x + D^2*x*y*x"), D("-D^2*x^2*y + D^2*x*y + D*x*y - 1")],
            ],
            [[D("D^3 - x*y*x")], [D("1 - D*x*y*x")], [D("D^2*x - x")]],
        ],
    )


FAMILIES: dict[str, Family] = {
    f.name: f
    for f in (
        Family("cyclic", "cyclic(m)", "m >= 2", cyclic, ("m",)),
        Family("torus_knot", "torus_knot(p, q, k)", "gcd(p, q) = 1, k >= 1", torus_knot, ("p", "q", "k")),
        Family("heisenberg", "heisenberg(k)", "k >= 1", heisenberg, ("k",)),
        Family("triangle", "triangle(l, m, n)", "2 <= l <= m <= n, 1/l + 1/m + 1/n < 1", triangle, ("l", "m", "n")),
        Family("braid4", "braid4()", "no parameters", braid4, ()),
    )
}


def catalog(name: str, **params) -> CatalogEntry:
    fam = FAMILIES.get(name)
    if fam is None:
        raise PresentationError(f"unknown catalog family {name!r}; known: {', '.join(FAMILIES)}")
    missing = [p for p in fam.params if p not in params]
    extra = [p for p in params if p not in fam.params]
    if missing or extra:
        raise PresentationError(f"{fam.signature}: missing {missing or '[]'}, unexpected {extra or '[]'}")
    return fam.build(**params)
