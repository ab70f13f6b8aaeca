"""Print (co)homology tables for the catalog families.

    python3 scripts/tables.py [--max-degree 10]
"""

import argparse
import math
import random

from perires.catalog import catalog
from perires.homology import abelianization_oracle, homology_table
from perires.periodic import assemble_periodic, stable_rank

CASES = [
    ("cyclic", {"m": 6}),
    ("torus_knot", {"p": 2, "q": 3, "k": 2}),
    ("heisenberg", {"k": 1}),
    ("heisenberg", {"k": 3}),
    ("triangle", {"l": 2, "m": 3, "n": 7}),
    ("triangle", {"l": 2, "m": 4, "n": 5}),
    ("triangle", {"l": 3, "m": 3, "n": 4}),
    ("braid4", {}),
]


def show(name, params, maxdeg):
    e = catalog(name, **params)
    res = assemble_periodic(e.seed, e.homotopy, e.presentation.quotient_context)
    t = homology_table(res, maxdeg)
    print(f"## {e.label}  stable rank {stable_rank(res)}, periodic from degree {res.n - 1}")
    print(f"{'deg':>4}  {'H_j':<24}{'H^j'}")
    for j in range(maxdeg + 1):
        print(f"{j:>4}  {str(t.homology[j]):<24}{t.cohomology[j]}")
    print()


def torus_sweep(count, seed):
    rng = random.Random(seed)
    print("## torus_knot sweep: H_1 against abelianization and lcm(k,p,q)")
    print(f"{'(p,q,k)':<12}{'H_1':<10}{'oracle':<10}{'kpq':>6}{'lcm':>6}")
    seen = set()
    while len(seen) < count:
        p, q, k = rng.randint(2, 9), rng.randint(2, 9), rng.randint(1, 9)
        if math.gcd(p, q) != 1 or (p, q, k) in seen:
            continue
        seen.add((p, q, k))
        e = catalog("torus_knot", p=p, q=q, k=k)
        res = assemble_periodic(e.seed, e.homotopy, e.presentation.quotient_context)
        h1 = homology_table(res, 3).homology[1]
        oracle = abelianization_oracle(e.presentation, e.central.word)
        print(f"{str((p, q, k)):<12}{str(h1):<10}{str(oracle):<10}{k * p * q:>6}{math.lcm(k, p, q):>6}")
    print()


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-degree", type=int, default=10)
    ap.add_argument("--sweep", type=int, default=10)
    ap.add_argument("--seed", type=int, default=4)
    args = ap.parse_args()
    for name, params in CASES:
        show(name, params, args.max_degree)
    torus_sweep(args.sweep, args.seed)


if __name__ == "__main__":
    main()
