"""Free chain complexes over a group ring, with matrices acting on the right.

A map ``R^a -> R^b`` is an ``a x b`` matrix and composition reads left to
right: ``A @ B`` is "A, then B". A differential ``D_j`` therefore has
``rank C_j`` rows and ``rank C_{j-1}`` columns, and the chain condition is
``D_{j+1} @ D_j == 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .groupring import (
    ContextMismatch,
    GroupRingElement,
    NormalizationInconclusive,
    RingContext,
    Verdict,
    induced_map,
    is_zero,
)
from .homology import IntMatrix


class DimensionMismatch(ValueError):
    pass


class GRMatrix:
    """Dense matrix of group-ring elements in one context."""

    __slots__ = ("rows", "cols", "entries", "context")

    def __init__(self, context: RingContext, rows: int, cols: int, entries: Sequence[Sequence[GroupRingElement]]):
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise DimensionMismatch(f"entries do not form a {rows}x{cols} matrix")
        for r in entries:
            for x in r:
                if not x.context.same_as(context):
                    raise ContextMismatch("matrix entry from a different context")
        self.context = context
        self.rows = rows
        self.cols = cols
        self.entries = tuple(tuple(r) for r in entries)

    @classmethod
    def zeros(cls, context: RingContext, rows: int, cols: int) -> "GRMatrix":
        z = context.zero()
        return cls(context, rows, cols, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, context: RingContext, n: int, scale: GroupRingElement | int = 1) -> "GRMatrix":
        s = scale if isinstance(scale, GroupRingElement) else context.scalar(scale)
        z = context.zero()
        return cls(context, n, n, [[s if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def parse(cls, context: RingContext, rows: Sequence[Sequence[str | int | GroupRingElement]], cols: int | None = None) -> "GRMatrix":
        def conv(x):
            if isinstance(x, GroupRingElement):
                return x
            if isinstance(x, int):
                return context.scalar(x)
            return context.parse(x)

        data = [[conv(x) for x in r] for r in rows]
        if cols is None:
            if not data:
                raise DimensionMismatch("empty matrix needs an explicit column count")
            cols = len(data[0])
        return cls(context, len(data), cols, data)

    @classmethod
    def blocks(
        cls,
        context: RingContext,
        row_sizes: Sequence[int],
        col_sizes: Sequence[int],
        block: Callable[[int, int], "GRMatrix | None"],
    ) -> "GRMatrix":
        """Assemble from ``block(bi, bj)``; ``None`` is a zero block."""
        z = context.zero()
        R, C = sum(row_sizes), sum(col_sizes)
        out = [[z] * C for _ in range(R)]
        r0 = 0
        for bi, rs in enumerate(row_sizes):
            c0 = 0
            for bj, cs in enumerate(col_sizes):
                B = block(bi, bj)
                if B is not None:
                    if (B.rows, B.cols) != (rs, cs):
                        raise DimensionMismatch(f"block ({bi},{bj}) is {B.rows}x{B.cols}, expected {rs}x{cs}")
                    for i in range(rs):
                        out[r0 + i][c0 : c0 + cs] = B.entries[i]
                c0 += cs
            r0 += rs
        return cls(context, R, C, out)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> GroupRingElement:
        i, j = ij
        return self.entries[i][j]

    def _same(self, other: "GRMatrix") -> None:
        if not self.context.same_as(other.context):
            raise ContextMismatch("matrices over different contexts")

    def __matmul__(self, other: "GRMatrix") -> "GRMatrix":
        self._same(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot compose {self.shape} with {other.shape}")
        z = self.context.zero()
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if a:
                        b = other.entries[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return GRMatrix(self.context, self.rows, other.cols, out)

    def __add__(self, other: "GRMatrix") -> "GRMatrix":
        self._same(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return GRMatrix(
            self.context,
            self.rows,
            self.cols,
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
        )

    def __neg__(self) -> "GRMatrix":
        return self.map(lambda x: -x)

    def __sub__(self, other: "GRMatrix") -> "GRMatrix":
        return self + (-other)

    def scale(self, c: int | GroupRingElement) -> "GRMatrix":
        """Entrywise ``c * entry`` (c multiplies from the left)."""
        if isinstance(c, int):
            return self.map(lambda x: x * c)
        return self.map(lambda x: c * x)

    def map(self, fn: Callable[[GroupRingElement], GroupRingElement], context: RingContext | None = None) -> "GRMatrix":
        return GRMatrix(context or self.context, self.rows, self.cols, [[fn(x) for x in r] for r in self.entries])

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "GRMatrix":
        return GRMatrix(self.context, r1 - r0, c1 - c0, [r[c0:c1] for r in self.entries[r0:r1]])

    def augment(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(tuple(x.augment() for x in r) for r in self.entries))

    def __eq__(self, other) -> bool:
        if not isinstance(other, GRMatrix):
            return NotImplemented
        return self.shape == other.shape and self.context.same_as(other.context) and self.entries == other.entries

    def __hash__(self):
        return hash((self.shape, self.entries))

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.entries]

    def __str__(self) -> str:
        if not self.rows or not self.cols:
            return f"[{self.rows}x{self.cols}]"
        cells = self.to_strings()
        w = [max(len(cells[i][j]) for i in range(self.rows)) for j in range(self.cols)]
        return "\n".join("[ " + "  ".join(c.ljust(w[j]) for j, c in enumerate(r)) + " ]" for r in cells)

    def __repr__(self) -> str:
        return f"GRMatrix({self.rows}x{self.cols}, {self.to_strings()})"


def mat_mul(A: GRMatrix, B: GRMatrix) -> GRMatrix:
    return A @ B


# ---------------------------------------------------------------------------
# verification reports


@dataclass
class CheckEntry:
    check: str
    degree: int | None
    status: str  # "zero", "inconclusive" or "failed"
    detail: str = ""
    offending: list[tuple[int, int, str, str]] = field(default_factory=list)
    witnessed: bool = False

    def line(self) -> str:
        deg = "" if self.degree is None else f" [degree {self.degree}]"
        out = f"{self.status:>12}  {self.check}{deg}"
        if self.detail:
            out += f": {self.detail}"
        return out


@dataclass
class Report:
    entries: list[CheckEntry] = field(default_factory=list)

    def add(self, entry: CheckEntry) -> None:
        self.entries.append(entry)

    def extend(self, other: "Report") -> "Report":
        self.entries.extend(other.entries)
        return self

    @property
    def failed(self) -> list[CheckEntry]:
        return [e for e in self.entries if e.status == "failed"]

    @property
    def inconclusive(self) -> list[CheckEntry]:
        return [e for e in self.entries if e.status == "inconclusive"]

    @property
    def status(self) -> str:
        if self.failed:
            return "failed"
        if not self.inconclusive:
            return "verified-symbolic"
        if any(e.witnessed for e in self.inconclusive):
            return "verified-augmented+witness"
        return "verified-augmented"

    def ok(self, strict: str = "augmented") -> bool:
        if strict == "symbolic":
            return self.status == "verified-symbolic"
        return self.status != "failed"

    def format(self) -> str:
        return "\n".join([e.line() for e in self.entries] + [f"status: {self.status}"])

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "checks": [
                {
                    "check": e.check,
                    "degree": e.degree,
                    "status": e.status,
                    "detail": e.detail,
                    "offending": [{"row": i, "col": j, "entry": s, "verdict": v} for i, j, s, v in e.offending],
                }
                for e in self.entries
            ],
        }


def check_zero_matrix(M: GRMatrix, check: str, degree: int | None, augmented: IntMatrix | None = None) -> CheckEntry:
    """Verdicts for "every entry of ``M`` vanishes".

    ``augmented`` is an independently computed integer image (for example the
    product of augmented factors); it must be exactly zero.
    """
    offending = []
    worst = "zero"
    for i, row in enumerate(M.entries):
        for j, x in enumerate(row):
            try:
                v = is_zero(x)
            except NormalizationInconclusive:
                v = Verdict.INCONCLUSIVE
            if v is Verdict.NONZERO:
                worst = "failed"
                offending.append((i, j, str(x), str(v)))
            elif v is Verdict.INCONCLUSIVE:
                if worst != "failed":
                    worst = "inconclusive"
                if len(offending) < 50:
                    offending.append((i, j, str(x), str(v)))
    details = []
    if augmented is not None and not augmented.is_zero():
        worst = "failed"
        details.append("augmented product is not zero")
    n_inc = sum(1 for o in offending if o[3] == str(Verdict.INCONCLUSIVE))
    n_bad = sum(1 for o in offending if o[3] == str(Verdict.NONZERO))
    if n_bad:
        i, j, s, _ = next(o for o in offending if o[3] == str(Verdict.NONZERO))
        details.append(f"{n_bad} nonzero entries, first at ({i},{j}): {s}")
    if n_inc:
        details.append(f"{n_inc} inconclusive entries")
    witnessed = bool(M.context.witnesses)
    if worst == "inconclusive" and witnessed:
        details.append(f"{len(M.context.witnesses)} witness representation(s) vanish")
    return CheckEntry(check, degree, worst, "; ".join(details), offending, witnessed)


# ---------------------------------------------------------------------------
# complexes


@dataclass
class FreeComplex:
    """Ranks on ``[min_degree, max_degree]`` and differentials ``D_j`` for ``min < j <= max``.

    ``summands`` optionally labels each module as a direct sum of seed
    modules, listed in block order.
    """

    context: RingContext
    min_degree: int
    ranks: tuple[int, ...]
    differentials: dict[int, GRMatrix]
    summands: dict[int, tuple[int, ...]] | None = None

    def __post_init__(self):
        self.ranks = tuple(self.ranks)
        for j, D in self.differentials.items():
            if not (self.min_degree < j <= self.max_degree):
                raise DimensionMismatch(f"differential D_{j} outside the degree window")
            if D.shape != (self.rank(j), self.rank(j - 1)):
                raise DimensionMismatch(f"D_{j} is {D.shape}, expected {(self.rank(j), self.rank(j - 1))}")
            if not D.context.same_as(self.context):
                raise ContextMismatch(f"D_{j} lives in a different context")

    @property
    def max_degree(self) -> int:
        return self.min_degree + len(self.ranks) - 1

    def degrees(self) -> range:
        return range(self.min_degree, self.max_degree + 1)

    def rank(self, j: int) -> int:
        if self.min_degree <= j <= self.max_degree:
            return self.ranks[j - self.min_degree]
        return 0

    def diff(self, j: int) -> GRMatrix:
        D = self.differentials.get(j)
        if D is None:
            return GRMatrix.zeros(self.context, self.rank(j), self.rank(j - 1))
        return D

    def labels(self, j: int) -> tuple[int, ...]:
        if self.summands is None:
            raise ValueError("complex carries no summand labels")
        return self.summands.get(j, ())

    def rank_list(self) -> list[int]:
        return list(self.ranks)


def complex_from_matrices(context: RingContext, ranks: Sequence[int], diffs: Sequence[GRMatrix], min_degree: int = 0) -> FreeComplex:
    """``diffs[i]`` is ``D_{min_degree + i + 1}``."""
    return FreeComplex(context, min_degree, tuple(ranks), {min_degree + i + 1: D for i, D in enumerate(diffs)})


def suspend(C: FreeComplex, s: int = 1) -> FreeComplex:
    """``(Sigma^s C)_j = C_{j-s}`` with differentials multiplied by ``(-1)^s``."""
    if s < 0:
        raise ValueError("suspension needs s >= 0")
    sign = -1 if s % 2 else 1
    diffs = {j + s: (D if sign == 1 else -D) for j, D in C.differentials.items()}
    summands = None if C.summands is None else {j + s: lab for j, lab in C.summands.items()}
    return FreeComplex(C.context, C.min_degree + s, C.ranks, diffs, summands)


@dataclass
class ChainMap:
    """Degree-0 map ``f_j : source_j -> target_j`` (``rank source_j x rank target_j``)."""

    source: FreeComplex
    target: FreeComplex
    components: dict[int, GRMatrix]

    def __post_init__(self):
        for j, F in self.components.items():
            if F.shape != (self.source.rank(j), self.target.rank(j)):
                raise DimensionMismatch(
                    f"component f_{j} is {F.shape}, expected {(self.source.rank(j), self.target.rank(j))}"
                )

    def component(self, j: int) -> GRMatrix:
        F = self.components.get(j)
        if F is None:
            return GRMatrix.zeros(self.source.context, self.source.rank(j), self.target.rank(j))
        return F

    def degrees(self) -> range:
        lo = min(self.source.min_degree, self.target.min_degree)
        hi = max(self.source.max_degree, self.target.max_degree)
        return range(lo, hi + 2)

    def verify(self) -> Report:
        """Squares ``f_j D^target_j == D^source_j f_{j-1}``."""
        rep = Report()
        for j in self.degrees():
            lhs = self.component(j) @ self.target.diff(j)
            rhs = self.source.diff(j) @ self.component(j - 1)
            if lhs.rows == 0 or lhs.cols == 0:
                continue
            aug = (self.component(j).augment() @ self.target.diff(j).augment()) - (
                self.source.diff(j).augment() @ self.component(j - 1).augment()
            )
            rep.add(check_zero_matrix(lhs - rhs, "chain-map square", j, aug))
        return rep


def mapping_cone(f: ChainMap, strict: bool = False) -> FreeComplex:
    """``Con(f)_i = A_{i-1} + B_i`` with ``D_i = [[-dA_{i-1}, -f_{i-1}], [0, dB_i]]``."""
    if strict:
        rep = f.verify()
        if rep.status == "failed":
            raise ValueError("mapping cone of a map that is not a chain map:\n" + rep.format())
    A, B = f.source, f.target
    ctx = B.context
    lo = min(A.min_degree + 1, B.min_degree)
    hi = max(A.max_degree + 1, B.max_degree)
    ranks = tuple(A.rank(i - 1) + B.rank(i) for i in range(lo, hi + 1))
    diffs = {}
    for i in range(lo + 1, hi + 1):
        a_rows, b_rows = A.rank(i - 1), B.rank(i)
        a_cols, b_cols = A.rank(i - 2), B.rank(i - 1)
        blocks = {
            (0, 0): -A.diff(i - 1),
            (0, 1): -f.component(i - 1),
            (1, 1): B.diff(i),
        }
        diffs[i] = GRMatrix.blocks(ctx, [a_rows, b_rows], [a_cols, b_cols], lambda bi, bj: blocks.get((bi, bj)))
    summands = None
    if A.summands is not None and B.summands is not None:
        summands = {i: A.summands.get(i - 1, ()) + B.summands.get(i, ()) for i in range(lo, hi + 1)}
    return FreeComplex(ctx, lo, ranks, diffs, summands)


def reduce(C: FreeComplex, target: RingContext) -> FreeComplex:
    """Re-normalize every entry in ``target``; ranks are unchanged."""
    diffs = {j: D.map(lambda x: induced_map(x, target), target) for j, D in C.differentials.items()}
    return FreeComplex(target, C.min_degree, C.ranks, diffs, C.summands)


def reduce_matrix(M: GRMatrix, target: RingContext) -> GRMatrix:
    return M.map(lambda x: induced_map(x, target), target)


def check_complex(C: FreeComplex, degrees: Iterable[int] | None = None) -> Report:
    """Verdicts for ``D_{j+1} D_j == 0`` across the window."""
    rep = Report()
    js = degrees if degrees is not None else range(C.min_degree + 1, C.max_degree)
    for j in js:
        A, B = C.diff(j + 1), C.diff(j)
        if A.rows == 0 or B.cols == 0:
            continue
        rep.add(check_zero_matrix(A @ B, "chain condition D_{j+1} D_j", j, A.augment() @ B.augment()))
    return rep
