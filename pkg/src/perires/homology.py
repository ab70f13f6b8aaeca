"""Integer matrices, Smith normal form and integral (co)homology tables.

Matrices act on the right of row vectors, so for a complex with
differentials ``D_j : M_j -> M_{j-1}`` (``rank M_j`` rows) the homology is
``H_j = {v : v D_j = 0} / rowspace(D_{j+1})``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    data: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ValueError("IntMatrix data does not match its shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("empty row list needs an explicit column count")
            cols = len(rows[0])
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(zip(*self.data)) if self.rows else tuple(() for _ in range(self.cols)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols_b = list(zip(*other.data)) if other.rows else [()] * other.cols
        return IntMatrix(
            self.rows,
            other.cols,
            tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols_b) for r in self.data),
        )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return IntMatrix(self.rows, self.cols, tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(tuple(-x for x in r) for r in self.data))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    def __str__(self) -> str:
        if not self.rows or not self.cols:
            return f"[{self.rows}x{self.cols}]"
        w = max(len(str(x)) for r in self.data for x in r)
        return "\n".join("[" + " ".join(str(x).rjust(w) for x in r) + "]" for r in self.data)


def _as_lists(A) -> tuple[list[list[int]], int, int]:
    if isinstance(A, IntMatrix):
        return A.tolist(), A.rows, A.cols
    rows = [list(map(int, r)) for r in A]
    return rows, len(rows), len(rows[0]) if rows else 0


@dataclass
class SNFResult:
    factors: tuple[int, ...]
    rank: int
    U: IntMatrix | None = None
    V: IntMatrix | None = None
    D: IntMatrix | None = None


def snf(A, transforms: bool = False):
    """Smith normal form by smallest-pivot elimination over exact integers.

    Returns the nonzero invariant factors ``d_1 | d_2 | ...``. With
    ``transforms=True`` returns an :class:`SNFResult` with unimodular ``U``,
    ``V`` such that ``U A V = D``.

    >>> snf([[4, 4, 4], [1, -1, 0], [0, 1, -1], [0, 0, 0]])
    (1, 1, 12)
    """
    M, m, n = _as_lists(A)
    U = [[int(i == j) for j in range(m)] for i in range(m)] if transforms else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if transforms else None

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in M:
            r[i], r[j] = r[j], r[i]
        if V is not None:
            for r in V:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, f):
        # row_dst += f * row_src
        M[dst] = [a + f * b for a, b in zip(M[dst], M[src])]
        if U is not None:
            U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for r in M:
            r[dst] += f * r[src]
        if V is not None:
            for r in V:
                r[dst] += f * r[src]

    t = 0
    while t < min(m, n):
        # smallest nonzero |entry| in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = M[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = M[t][t]
            done = True
            for i in range(t + 1, m):
                if M[i][t]:
                    add_row(i, t, -(M[i][t] // p))
                    if M[i][t]:
                        done = False
            for j in range(t + 1, n):
                if M[t][j]:
                    add_col(j, t, -(M[t][j] // p))
                    if M[t][j]:
                        done = False
            if not done:
                # a remainder is smaller than the pivot; move it in and retry
                best = None
                for i in range(t, m):
                    if M[i][t] and (best is None or abs(M[i][t]) < best[0]):
                        best = (abs(M[i][t]), i, "r")
                for j in range(t, n):
                    if M[t][j] and (best is None or abs(M[t][j]) < best[0]):
                        best = (abs(M[t][j]), j, "c")
                if best[2] == "r":
                    swap_rows(t, best[1])
                else:
                    swap_cols(t, best[1])
                continue
            # row and column cleared; enforce divisibility on the rest
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if M[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        t += 1

    factors = tuple(M[i][i] for i in range(t))
    if not transforms:
        return factors
    return SNFResult(
        factors=factors,
        rank=t,
        U=IntMatrix.from_rows(U, m),
        V=IntMatrix.from_rows(V, n),
        D=IntMatrix.from_rows(M, n),
    )


def matrix_rank(A) -> int:
    return len(snf(A))


@dataclass(frozen=True)
class AbelianGroup:
    betti: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(sorted(int(x) for x in self.torsion))
        if any(x <= 1 for x in t):
            raise ValueError("torsion factors must exceed 1")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"torsion {t} is not a divisibility chain")
        object.__setattr__(self, "torsion", t)
        if self.betti < 0:
            raise ValueError("betti number must be nonnegative")

    @classmethod
    def from_factors(cls, betti: int, factors: Iterable[int]) -> "AbelianGroup":
        return cls(betti, tuple(abs(d) for d in factors if abs(d) > 1))

    def is_trivial(self) -> bool:
        return self.betti == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.betti == 1:
            parts.append("Z")
        elif self.betti > 1:
            parts.append(f"Z^{self.betti}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"betti": self.betti, "torsion": list(self.torsion)}


def group_from_differentials(rank: int, d_out: IntMatrix | None, d_in: IntMatrix | None) -> AbelianGroup:
    """``ker(. d_out) / rowspace(d_in)`` on ``Z^rank`` (row-vector convention)."""
    r_out = matrix_rank(d_out) if d_out is not None and d_out.rows and d_out.cols else 0
    f_in = snf(d_in) if d_in is not None and d_in.rows and d_in.cols else ()
    return AbelianGroup.from_factors(rank - r_out - len(f_in), f_in)


@dataclass
class Periodicity:
    start: int | None
    repeating: tuple[AbelianGroup, AbelianGroup] | None

    def to_json(self) -> dict:
        return {
            "period_start": self.start,
            "period": 2,
            "repeating": [g.to_json() for g in self.repeating] if self.repeating else [],
        }


def detect_period(groups: Sequence[AbelianGroup], guaranteed_from: int | None = None) -> Periodicity:
    """Smallest ``s`` with ``G_{j+2} == G_j`` for all ``s <= j <= len-3``."""
    n = len(groups)
    if n < 4:
        return Periodicity(None, None)
    s = n - 2
    while s - 1 >= 0 and groups[s - 1] == groups[s + 1]:
        s -= 1
    if guaranteed_from is not None and s > guaranteed_from:
        return Periodicity(None, None)
    return Periodicity(s, (groups[s], groups[s + 1]))


@dataclass
class HomologyTable:
    homology: list[AbelianGroup]
    cohomology: list[AbelianGroup]
    homology_period: Periodicity
    cohomology_period: Periodicity
    matrices: list[IntMatrix] = field(default_factory=list, repr=False)

    @property
    def max_degree(self) -> int:
        return len(self.homology) - 1

    def to_json(self) -> dict:
        return {
            "degrees": [
                {"degree": j, "homology": h.to_json(), "cohomology": c.to_json()}
                for j, (h, c) in enumerate(zip(self.homology, self.cohomology))
            ],
            "homology_period": self.homology_period.to_json(),
            "cohomology_period": self.cohomology_period.to_json(),
        }

    def format(self) -> str:
        w = max(len(str(g)) for g in self.homology)
        lines = [f"{'deg':>3}  {'H_j':<{w}}  H^j"]
        for j, (h, c) in enumerate(zip(self.homology, self.cohomology)):
            lines.append(f"{j:>3}  {str(h):<{w}}  {c}")
        for name, per in (("homology", self.homology_period), ("cohomology", self.cohomology_period)):
            if per.start is not None:
                a, b = per.repeating
                lines.append(f"{name} 2-periodic from degree {per.start}: {a}, {b}, ...")
        return "\n".join(lines)


class ChainConditionError(ValueError):
    pass


def homology_from_matrices(
    ranks: Sequence[int], mats: Sequence[IntMatrix], max_degree: int, guaranteed_from: int | None = None
) -> HomologyTable:
    """``mats[j]`` is ``D_j`` (``ranks[j] x ranks[j-1]``) for ``1 <= j <= max_degree+1``; ``mats[0]`` unused."""

    def D(j: int) -> IntMatrix:
        if j <= 0:
            return IntMatrix.zeros(ranks[0], 0)
        return mats[j]

    for j in range(1, max_degree + 1):
        if not (D(j + 1) @ D(j)).is_zero():
            raise ChainConditionError(f"augmented D_{j + 1} D_{j} is not zero")
    hom = [group_from_differentials(ranks[j], D(j), D(j + 1)) for j in range(max_degree + 1)]
    # cochains: delta^j = D_{j+1}^T maps C^j -> C^{j+1} (column form); as rows this is D_{j+1} acting on the left
    coh = []
    for j in range(max_degree + 1):
        d_out = D(j + 1).transpose()
        d_in = D(j).transpose() if j > 0 else None
        coh.append(group_from_differentials(ranks[j], d_out, d_in))
    return HomologyTable(
        homology=hom,
        cohomology=coh,
        homology_period=detect_period(hom, guaranteed_from),
        cohomology_period=detect_period(coh, guaranteed_from),
        matrices=list(mats),
    )


def universal_coefficients_ok(table: HomologyTable) -> bool:
    """free(H^j) = free(H_j) and torsion(H^j) = torsion(H_{j-1})."""
    for j, (h, c) in enumerate(zip(table.homology, table.cohomology)):
        if h.betti != c.betti:
            return False
        prev = table.homology[j - 1].torsion if j > 0 else ()
        if c.torsion != prev:
            return False
    return True


def augment_complex(res, max_degree: int) -> list[IntMatrix]:
    """``[eD_1, ..., eD_max_degree]`` as integer matrices (index 0 is a placeholder)."""
    out: list[IntMatrix] = [IntMatrix.zeros(res.module_rank(0), 0)]
    for j in range(1, max_degree + 1):
        out.append(res.differential(j).augment())
    return out


def homology_table(res, max_degree: int) -> HomologyTable:
    """Integral homology and cohomology of the group of ``res`` up to ``max_degree``."""
    mats = augment_complex(res, max_degree + 1)
    ranks = [res.module_rank(j) for j in range(max_degree + 2)]
    return homology_from_matrices(ranks, mats, max_degree, guaranteed_from=getattr(res, "n", None))


def abelianization_oracle(pres, central_word=None) -> AbelianGroup:
    """H_1 from the exponent-sum matrix of the relators (plus the central word)."""
    words = list(pres.relators)
    if central_word is not None:
        words.append(central_word)
    k = len(pres.alphabet)
    if not words:
        return AbelianGroup(k)
    rows = [[w.exponent_sum(g) for g in range(k)] for w in words]
    factors = snf(rows)
    return AbelianGroup.from_factors(k - len(factors), factors)


def read_int_matrix(text: str) -> IntMatrix:
    """Rows separated by newlines or ';', entries by whitespace or ','."""
    rows = []
    for line in text.replace(";", "\n").splitlines():
        line = line.strip().strip("[]").replace(",", " ")
        if line.strip():
            rows.append([int(x) for x in line.split()])
    if not rows:
        raise ValueError("no matrix rows found")
    if len({len(r) for r in rows}) != 1:
        raise ValueError("ragged matrix")
    return IntMatrix.from_rows(rows)


def det(A: IntMatrix) -> int:
    """Exact determinant by fraction-free elimination (Bareiss)."""
    if A.rows != A.cols:
        raise ValueError("determinant of a non-square matrix")
    n = A.rows
    M = A.tolist()
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if M[i][k]), None)
            if sw is None:
                return 0
            M[k], M[sw] = M[sw], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1


def gcd_all(xs: Iterable[int]) -> int:
    g = 0
    for x in xs:
        g = math.gcd(g, x)
    return g
