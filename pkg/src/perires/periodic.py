"""Eventually 2-periodic resolutions over a central quotient.

Given a seed resolution ``P`` over ZG, a central element ``x`` and a
null-homotopy ``phi`` of multiplication by ``x``, the reductions ``dbar``,
``phibar`` to Z[Gamma] satisfy ``dbar_i phibar_i + phibar_{i+1} dbar_{i+1} = 0``.
Iterated mapping cones of ``Sigma^(2i-1) Pbar -> M^(i-1)`` stabilise to a
resolution ``M`` of Z over Z[Gamma] whose modules are

    M_j = sum of Pbar_k over k = j (mod 2), 0 <= k <= min(j, n)

and whose differential has block ``dbar_a`` from ``Pbar_a`` to ``Pbar_(a-1)``,
``-phibar_(a+1)`` from ``Pbar_a`` to ``Pbar_(a+1)``, and zero elsewhere. For
``j >= n`` the differentials repeat with period 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complex import (
    ChainMap,
    CheckEntry,
    FreeComplex,
    GRMatrix,
    Report,
    check_zero_matrix,
    mapping_cone,
    reduce_matrix,
    suspend,
)
from .groupring import GroupRingElement, RingContext
from .homology import IntMatrix
from .presentation import SeedResolution

MAX_TOWER_INDEX = 16


class StableRankMismatch(ValueError):
    pass


@dataclass
class NullHomotopy:
    """``phis[i-1]`` is ``phi_i : P_(i-1) -> P_i`` (``rank P_(i-1)`` rows)."""

    phis: tuple[GRMatrix, ...]

    def __post_init__(self):
        self.phis = tuple(self.phis)

    @property
    def n(self) -> int:
        return len(self.phis)

    def phi(self, i: int) -> GRMatrix | None:
        return self.phis[i - 1] if 1 <= i <= len(self.phis) else None

    def check_shapes(self, seed: SeedResolution) -> None:
        if self.n != seed.n:
            raise ValueError(f"homotopy has {self.n} maps, seed has length {seed.n}")
        for i, p in enumerate(self.phis, start=1):
            if p.shape != (seed.rank(i - 1), seed.rank(i)):
                raise ValueError(f"phi_{i} is {p.shape}, expected {(seed.rank(i - 1), seed.rank(i))}")


def verify_null_homotopy(seed: SeedResolution, h: NullHomotopy, x: GroupRingElement) -> Report:
    """``D_i Phi_i + Phi_(i+1) D_(i+1) == x I`` on ``P_i`` for ``0 <= i <= n``."""
    h.check_shapes(seed)
    ctx = seed.context
    rep = Report()
    for i in range(seed.n + 1):
        r = seed.rank(i)
        S = GRMatrix.identity(ctx, r, x)
        aug = S.augment()
        total = GRMatrix.zeros(ctx, r, r)
        total_aug = IntMatrix.zeros(r, r)
        if i >= 1:
            total = total + seed.d(i) @ h.phi(i)
            total_aug = total_aug + seed.d(i).augment() @ h.phi(i).augment()
        if i <= seed.n - 1:
            total = total + h.phi(i + 1) @ seed.d(i + 1)
            total_aug = total_aug + h.phi(i + 1).augment() @ seed.d(i + 1).augment()
        rep.add(check_zero_matrix(total - S, "null-homotopy identity", i, total_aug - aug))
    return rep


def reduce_seed(seed: SeedResolution, h: NullHomotopy, target: RingContext) -> tuple[list[GRMatrix], list[GRMatrix]]:
    dbar = [reduce_matrix(d, target) for d in seed.differentials]
    phibar = [reduce_matrix(p, target) for p in h.phis]
    return dbar, phibar


def check_homotopy_products(phibar: list[GRMatrix]) -> Report:
    """``phibar_a phibar_(a+1) == 0``; needed for the cone maps to be chain maps."""
    rep = Report()
    for a in range(1, len(phibar)):
        P = phibar[a - 1] @ phibar[a]
        rep.add(check_zero_matrix(P, "phibar_a phibar_(a+1) vanishes", a, phibar[a - 1].augment() @ phibar[a].augment()))
    return rep


def _reduced_complex(seed: SeedResolution, dbar: list[GRMatrix], target: RingContext) -> FreeComplex:
    return FreeComplex(
        target,
        0,
        seed.ranks,
        {i: d for i, d in enumerate(dbar, start=1)},
        {i: (i,) for i in range(seed.n + 1)},
    )


def shamash_map(seed: SeedResolution, h: NullHomotopy, target: RingContext) -> ChainMap:
    """``Psi : Sigma Pbar -> Pbar`` with ``Psi_j = phibar_j``."""
    h.check_shapes(seed)
    dbar, phibar = reduce_seed(seed, h, target)
    pbar = _reduced_complex(seed, dbar, target)
    return ChainMap(suspend(pbar, 1), pbar, {j: phibar[j - 1] for j in range(1, seed.n + 1)})


def build_cone_tower(
    seed: SeedResolution, h: NullHomotopy, target: RingContext, i_max: int, strict: bool = False
) -> list[FreeComplex]:
    """``M^0 = Pbar`` and ``M^i = Con(psi^i)`` for ``psi^i : Sigma^(2i-1) Pbar -> M^(i-1)``.

    ``psi^i`` sends the summand ``Pbar_s`` (in degree ``s + 2i - 1``) by
    ``phibar_(s+1)`` into the summand ``Pbar_(s+1)`` of ``M^(i-1)``.
    """
    if i_max < 0:
        raise ValueError("i_max must be nonnegative")
    if i_max > MAX_TOWER_INDEX:
        raise ValueError(f"tower index capped at {MAX_TOWER_INDEX}")
    h.check_shapes(seed)
    dbar, phibar = reduce_seed(seed, h, target)
    pbar = _reduced_complex(seed, dbar, target)
    tower = [pbar]
    n = seed.n
    for i in range(1, i_max + 1):
        prev = tower[-1]
        A = suspend(pbar, 2 * i - 1)
        comps = {}
        for j in A.degrees():
            s = j - (2 * i - 1)
            if not 1 <= s + 1 <= n:
                continue
            labels = prev.labels(j)
            if s + 1 not in labels:
                continue
            sizes = [seed.rank(k) for k in labels]
            where = labels.index(s + 1)
            comps[j] = GRMatrix.blocks(
                target, [seed.rank(s)], sizes, lambda bi, bj, w=where, s=s: phibar[s] if bj == w else None
            )
        psi = ChainMap(A, prev, comps)
        tower.append(mapping_cone(psi, strict=strict))
    return tower


@dataclass
class PeriodicResolution:
    """The resolution ``M`` with its head ``D_1..D_(n-1)`` and period pair ``(D_n, D_(n+1))``."""

    n: int
    context: RingContext
    seed_ranks: tuple[int, ...]
    dbar: list[GRMatrix]
    phibar: list[GRMatrix]
    head: dict[int, GRMatrix]
    period_differentials: tuple[GRMatrix, GRMatrix]
    stable_rank: int | None
    _checked: dict = field(default_factory=dict, repr=False)

    @property
    def t(self) -> int:
        return -(-self.n // 2) + 1

    def summands(self, j: int) -> tuple[int, ...]:
        if j < 0:
            return ()
        return tuple(range(j % 2, min(j, self.n) + 1, 2))

    def module_rank(self, j: int) -> int:
        return sum(self.seed_ranks[k] for k in self.summands(j))

    @property
    def period_modules(self) -> tuple[int, int]:
        return (self.module_rank(self.n - 1), self.module_rank(self.n))

    def differential(self, j: int) -> GRMatrix:
        if j < 1:
            raise ValueError("differentials start in degree 1")
        if j < self.n:
            return self.head[j]
        return self.period_differentials[(j - max(self.n, 1)) % 2]

    @property
    def low_part(self) -> FreeComplex:
        """Degrees ``0..n-2``."""
        top = max(self.n - 2, 0)
        return FreeComplex(
            self.context,
            0,
            tuple(self.module_rank(j) for j in range(top + 1)),
            {j: self.head[j] for j in range(1, top + 1)},
            {j: self.summands(j) for j in range(top + 1)},
        )

    def complex(self, max_degree: int) -> FreeComplex:
        return FreeComplex(
            self.context,
            0,
            tuple(self.module_rank(j) for j in range(max_degree + 1)),
            {j: self.differential(j) for j in range(1, max_degree + 1)},
            {j: self.summands(j) for j in range(max_degree + 1)},
        )

    def check(self, max_degree: int) -> Report:
        """Chain condition ``D_(j+1) D_j == 0`` for ``1 <= j < max_degree``.

        Products are cached by matrix identity, so the periodic tail costs
        two products however far it is checked.
        """
        rep = Report()
        for j in range(1, max_degree):
            A, B = self.differential(j + 1), self.differential(j)
            key = (id(A), id(B))
            hit = self._checked.get(key)
            if hit is None:
                if A.rows == 0 or B.cols == 0:
                    continue
                hit = check_zero_matrix(A @ B, "chain condition D_{j+1} D_j", j, A.augment() @ B.augment())
                self._checked[key] = hit
            rep.add(CheckEntry(hit.check, j, hit.status, hit.detail, hit.offending, hit.witnessed))
        return rep

    def format(self, max_degree: int) -> str:
        names = self.context.alphabet.names
        lines = [
            f"ranks: {', '.join(str(self.module_rank(j)) for j in range(max_degree + 1))}",
            f"seed length n = {self.n}, t = {self.t}, 2-periodic from degree {max(self.n - 1, 0)}",
            f"stable rank: {self.stable_rank if self.stable_rank is not None else 'none (seed rank sums differ)'}",
            f"generators: {', '.join(names)}",
        ]
        for j in range(1, min(max_degree, self.n + 1) + 1):
            tag = ""
            if j >= self.n:
                tag = " (repeats every 2 degrees)"
            summ = " + ".join(f"P{k}" for k in self.summands(j))
            lines.append(f"D_{j}: M_{j} = {summ}  ->  M_{j - 1}{tag}")
            lines.append(str(self.differential(j)))
        return "\n".join(lines)


def _direct_differential(j: int, n: int, ranks, dbar, phibar, ctx) -> GRMatrix:
    def labels(d):
        return tuple(range(d % 2, min(d, n) + 1, 2)) if d >= 0 else ()

    rows, cols = labels(j), labels(j - 1)

    def block(bi, bj):
        a, b = rows[bi], cols[bj]
        if b == a - 1 and 1 <= a <= n:
            return dbar[a - 1]
        if b == a + 1 and 1 <= b <= n:
            return -phibar[b - 1]
        return None

    return GRMatrix.blocks(ctx, [ranks[k] for k in rows], [ranks[k] for k in cols], block)


def assemble_periodic(seed: SeedResolution, h: NullHomotopy, target: RingContext, max_degree: int | None = None) -> PeriodicResolution:
    """Direct block assembly of the periodic resolution (primary path).

    ``max_degree`` is accepted for interface symmetry; the returned object
    serves any degree from its head and period pair.
    """
    if max_degree is not None and max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    h.check_shapes(seed)
    n = seed.n
    dbar, phibar = reduce_seed(seed, h, target)
    ranks = seed.ranks
    head = {j: _direct_differential(j, n, ranks, dbar, phibar, target) for j in range(1, n)}
    pair = (
        _direct_differential(max(n, 1), n, ranks, dbar, phibar, target),
        _direct_differential(max(n, 1) + 1, n, ranks, dbar, phibar, target),
    )
    if n == 0:
        # degenerate seed: D_1 = 0 from an empty module
        head = {}
    even = sum(ranks[0::2])
    odd = sum(ranks[1::2])
    return PeriodicResolution(
        n=n,
        context=target,
        seed_ranks=tuple(ranks),
        dbar=dbar,
        phibar=phibar,
        head=head,
        period_differentials=pair,
        stable_rank=even if even == odd else None,
    )


def stable_rank(res: PeriodicResolution | SeedResolution) -> int:
    ranks = res.seed_ranks if isinstance(res, PeriodicResolution) else res.ranks
    even, odd = sum(ranks[0::2]), sum(ranks[1::2])
    if even != odd:
        raise StableRankMismatch(f"even rank sum {even} != odd rank sum {odd}")
    return even
