import pytest

from perires.catalog import catalog
from perires.complex import GRMatrix, check_complex
from perires.periodic import (
    MAX_TOWER_INDEX,
    NullHomotopy,
    StableRankMismatch,
    assemble_periodic,
    build_cone_tower,
    check_homotopy_products,
    reduce_seed,
    shamash_map,
    stable_rank,
    verify_null_homotopy,
)
from perires.presentation import SeedResolution

NAMES = ["cyclic5", "torus232", "heis3", "tri237", "braid4"]


def resolve(e):
    return assemble_periodic(e.seed, e.homotopy, e.presentation.quotient_context)


class TestNullHomotopy:
    @pytest.mark.parametrize("m", [2, 3, 7, 12])
    def test_cyclic(self, m):
        e = catalog("cyclic", m=m)
        assert verify_null_homotopy(e.seed, e.homotopy, e.central.x).status == "verified-symbolic"

    @pytest.mark.parametrize("pqk", [(2, 3, 1), (2, 3, 2), (3, 5, 4), (7, 2, 3)])
    def test_torus(self, pqk):
        p, q, k = pqk
        e = catalog("torus_knot", p=p, q=q, k=k)
        ctx = e.presentation.group_context
        assert e.homotopy.phi(1) == GRMatrix(ctx, 1, 2, [[-ctx.ngk("a", k * p - 1), ctx.zero()]])
        assert verify_null_homotopy(e.seed, e.homotopy, e.central.x).status == "verified-symbolic"

    def test_corrupt_sign_fails_at_degree_zero(self):
        e = catalog("cyclic", m=5)
        flipped = NullHomotopy((-e.homotopy.phi(1),))
        rep = verify_null_homotopy(e.seed, flipped, e.central.x)
        assert rep.status == "failed"
        assert 0 in {c.degree for c in rep.failed}

    def test_shape_check(self):
        e = catalog("torus_knot", p=2, q=3, k=1)
        with pytest.raises(ValueError):
            NullHomotopy((e.homotopy.phi(1),)).check_shapes(e.seed)


class TestShamash:
    @pytest.mark.parametrize("name", NAMES)
    def test_chain_map(self, entries, name):
        e = entries[name]
        psi = shamash_map(e.seed, e.homotopy, e.presentation.quotient_context)
        assert psi.verify().ok("augmented")
        _, phibar = reduce_seed(e.seed, e.homotopy, e.presentation.quotient_context)
        assert all(psi.component(j) == phibar[j - 1] for j in range(1, e.seed.n + 1))

    def test_heisenberg_components(self):
        e = catalog("heisenberg", k=3)
        quo = e.presentation.quotient_context
        psi = shamash_map(e.seed, e.homotopy, quo)
        N = quo.ngk("z", 2)
        z = quo.zero()
        assert psi.component(1) == GRMatrix(quo, 1, 3, [[z, z, -N]])
        assert psi.component(2) == GRMatrix(quo, 3, 3, [[z, N, z], [z, z, N], [z, z, z]])
        assert psi.component(3) == GRMatrix(quo, 3, 1, [[-N], [z], [z]])

    def test_empty_seed(self):
        e = catalog("cyclic", m=3)
        quo = e.presentation.quotient_context
        seed = SeedResolution(e.seed.context, (1,), ())
        psi = shamash_map(seed, NullHomotopy(()), quo)
        assert psi.components == {}


class TestTower:
    def test_torus_first_cone_ranks(self):
        e = catalog("torus_knot", p=2, q=3, k=2)
        tower = build_cone_tower(e.seed, e.homotopy, e.presentation.quotient_context, 1)
        assert tower[0].rank_list() == [1, 2, 1]
        assert tower[1].rank_list() == [1, 2, 2, 2, 1]

    @pytest.mark.parametrize("name", NAMES)
    def test_staircase_modules(self, entries, name):
        e = entries[name]
        tower = build_cone_tower(e.seed, e.homotopy, e.presentation.quotient_context, 4)
        for i in range(1, 5):
            for j in range(0, 2 * i):
                expected = tuple(sorted(k for k in range(j % 2, j + 1, 2) if k <= e.seed.n))
                assert tuple(sorted(tower[i].labels(j))) == expected

    @pytest.mark.parametrize("name", NAMES)
    def test_levels_are_complexes(self, entries, name):
        e = entries[name]
        for C in build_cone_tower(e.seed, e.homotopy, e.presentation.quotient_context, 4):
            assert check_complex(C).ok("augmented")

    @pytest.mark.parametrize("name", NAMES)
    def test_consecutive_levels_shift_by_two(self, entries, name):
        e = entries[name]
        n = e.seed.n
        res = resolve(e)
        tower = build_cone_tower(e.seed, e.homotopy, e.presentation.quotient_context, res.t + 1)
        lo, hi = tower[res.t], tower[res.t + 1]
        for j in range(max(n - 1, 0), lo.max_degree + 1):
            assert hi.rank(j + 2) == lo.rank(j)
            assert sorted(hi.labels(j + 2)) == sorted(lo.labels(j))
        for j in range(max(n, 1), lo.max_degree + 1):
            assert hi.diff(j + 2) == lo.diff(j)

    @pytest.mark.parametrize("name", NAMES)
    def test_direct_assembly_agrees(self, entries, name):
        e = entries[name]
        res = resolve(e)
        tower = build_cone_tower(e.seed, e.homotopy, e.presentation.quotient_context, 7)
        for j in range(0, 13):
            M = tower[-(-(j + 1) // 2)]
            assert M.rank(j) == res.module_rank(j)
            assert M.labels(j) == res.summands(j)
            if j >= 1:
                assert M.diff(j) == res.differential(j)

    def test_cap(self, entries):
        e = entries["cyclic5"]
        with pytest.raises(ValueError):
            build_cone_tower(e.seed, e.homotopy, e.presentation.quotient_context, MAX_TOWER_INDEX + 1)


class TestAssembly:
    def test_torus_matrices(self):
        p, q, k = 2, 3, 2
        e = catalog("torus_knot", p=p, q=q, k=k)
        res = resolve(e)
        quo = res.context
        assert quo.alphabet.names == ("S", "U")
        assert [res.module_rank(j) for j in range(7)] == [1, 2, 2, 2, 2, 2, 2]
        z = quo.zero()
        d2 = GRMatrix(quo, 2, 2, [[quo.ngk("S", k * p - 1), z], [quo.ngk("S", p - 1), -quo.ngk("U", q - 1)]])
        d3 = GRMatrix(
            quo, 2, 2, [[quo.parse("S - 1"), z], [quo.parse("U - 1"), quo.parse("1 - U") * quo.ngk(f"U^{q}", k - 1)]]
        )
        assert res.differential(2) == d2
        assert res.differential(3) == d3

    @pytest.mark.parametrize("pqk", [(3, 4, 1), (5, 2, 3), (9, 7, 2)])
    def test_torus_general_matrices(self, pqk):
        p, q, k = pqk
        res = resolve(catalog("torus_knot", p=p, q=q, k=k))
        quo = res.context
        z = quo.zero()
        assert res.differential(2) == GRMatrix(
            quo, 2, 2, [[quo.ngk("S", k * p - 1), z], [quo.ngk("S", p - 1), -quo.ngk("U", q - 1)]]
        )
        assert res.differential(3)[1, 1] == quo.parse("1 - U") * quo.ngk(f"U^{q}", k - 1)

    def test_heisenberg_matrices(self):
        k = 3
        res = resolve(catalog("heisenberg", k=k))
        quo = res.context
        N = f"N(z,{k - 1})"
        assert [res.module_rank(j) for j in range(6)] == [1, 3, 4, 4, 4, 4]
        expected = {
            1: [["x - 1"], ["y - 1"], ["z - 1"]],
            2: [["0", "0", N], ["1 - z*y", "x - z", "-1"], ["1 - z", "0", "x - 1"], ["0", "1 - z", "y - 1"]],
            3: [["x - 1", "0", f"-{N}", "0"], ["y - 1", "0", "0", f"-{N}"], ["z - 1", "0", "0", "0"],
                ["0", "z - 1", "1 - z*y", "x - z"]],
            4: [["0", "0", N, "0"], ["1 - z*y", "x - z", "-1", N], ["1 - z", "0", "x - 1", "0"],
                ["0", "1 - z", "y - 1", "0"]],
        }
        for j, rows in expected.items():
            assert res.differential(j) == GRMatrix.parse(quo, rows), j

    def test_braid4_block(self):
        e = catalog("braid4")
        res = resolve(e)
        assert [res.module_rank(j) for j in range(6)] == [1, 3, 4, 4, 4, 4]
        D4 = res.differential(4)
        assert res.summands(4) == (0, 2) and res.summands(3) == (1, 3)
        phibar, dbar = res.phibar, res.dbar
        assert D4.submatrix(0, 1, 0, 3) == -phibar[0]
        assert D4.submatrix(0, 1, 3, 4) == GRMatrix.zeros(res.context, 1, 1)
        assert D4.submatrix(1, 4, 0, 3) == dbar[1]
        assert D4.submatrix(1, 4, 3, 4) == -phibar[2]

    def test_max_degree_zero(self, entries):
        e = entries["torus232"]
        res = assemble_periodic(e.seed, e.homotopy, e.presentation.quotient_context, 0)
        assert res.module_rank(0) == 1
        with pytest.raises(ValueError):
            res.differential(0)

    @pytest.mark.parametrize("name", NAMES)
    def test_periodic_tail(self, entries, name):
        res = resolve(entries[name])
        n = res.n
        for j in range(max(n, 1), 11):
            assert res.differential(j + 2) == res.differential(j)
        for j in range(max(n - 1, 0), 11):
            assert res.module_rank(j + 2) == res.module_rank(j)

    @pytest.mark.parametrize("name", NAMES)
    def test_parity_contents(self, entries, name):
        res = resolve(entries[name])
        n = res.n
        odd = tuple(i for i in range(n + 1) if i % 2)
        even = tuple(i for i in range(n + 1) if i % 2 == 0)
        if n % 2 == 0:
            assert res.summands(n - 1) == odd and res.summands(n) == even
        else:
            assert res.summands(n - 1) == even and res.summands(n) == odd
        assert res.period_modules == (res.module_rank(n - 1), res.module_rank(n))

    @pytest.mark.parametrize("name", NAMES)
    def test_low_degree_submatrices(self, entries, name):
        res = resolve(entries[name])
        for j in range(1, res.n):
            P = res.differential(j + 2 * res.n)
            D = res.differential(j)
            assert P.submatrix(0, D.rows, 0, D.cols) == D

    @pytest.mark.parametrize("name", ["cyclic5", "torus232", "heis3"])
    def test_symbolic_chain_condition(self, entries, name):
        assert resolve(entries[name]).check(13).status == "verified-symbolic"

    @pytest.mark.parametrize("name", NAMES)
    def test_augmented_chain_condition(self, entries, name):
        res = resolve(entries[name])
        for j in range(1, 13):
            assert (res.differential(j + 1).augment() @ res.differential(j).augment()).is_zero()

    @pytest.mark.parametrize("name", NAMES)
    def test_homotopy_products(self, entries, name):
        assert check_homotopy_products(resolve(entries[name]).phibar).ok()

    def test_cyclic_is_periodic_from_zero(self):
        res = resolve(catalog("cyclic", m=4))
        assert res.n == 1 and res.t == 2
        assert res.low_part.rank_list() == [1]
        assert [res.module_rank(j) for j in range(5)] == [1] * 5
        assert res.differential(1) == res.differential(3)
        assert res.differential(2)[0, 0] == -res.context.ngk("t", 3)


class TestStableRank:
    @pytest.mark.parametrize(
        "name,params,r",
        [
            ("cyclic", {"m": 3}, 1),
            ("torus_knot", {"p": 2, "q": 3, "k": 2}, 2),
            ("heisenberg", {"k": 2}, 4),
            ("triangle", {"l": 2, "m": 3, "n": 7}, 3),
            ("braid4", {}, 4),
        ],
    )
    def test_values(self, name, params, r):
        e = catalog(name, **params)
        assert stable_rank(e.seed) == r
        assert stable_rank(resolve(e)) == r == resolve(e).stable_rank

    def test_mismatch(self):
        e = catalog("torus_knot", p=2, q=3, k=1)
        seed = SeedResolution(e.seed.context, (1, 2), (e.seed.d(1),))
        with pytest.raises(StableRankMismatch, match="1 != 2|2"):
            stable_rank(seed)
