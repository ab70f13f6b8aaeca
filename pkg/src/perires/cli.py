"""Command-line front end: ``perires catalog|resolve|homology|verify|snf``.

Exit codes: 0 success, 2 invalid input, 3 verification failure (in
``--strict symbolic`` mode an inconclusive verdict also counts as failure).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Sequence

from .catalog import FAMILIES, CatalogEntry, catalog
from .complex import CheckEntry, Report
from .fox import fundamental_check
from .groupring import NormalizationInconclusive
from .homology import ChainConditionError, homology_table, read_int_matrix, snf, universal_coefficients_ok
from .periodic import PeriodicResolution, assemble_periodic, check_homotopy_products, verify_null_homotopy
from .presentation import (
    PresentationError,
    check_centrality,
    check_witnesses,
    entry_to_json,
    load_presentation,
    verify_seed,
)
from .words import WordError

EXIT_OK, EXIT_INVALID, EXIT_VERDICT = 0, 2, 3


class InvalidJob(ValueError):
    pass


@dataclass
class JobSpec:
    catalog: str | None
    params: dict[str, int]
    file: str | None
    max_degree: int = 10
    output: str = "text"
    strict: str = "augmented"

    def __post_init__(self):
        if (self.catalog is None) == (self.file is None):
            raise InvalidJob("give exactly one of --catalog or --file")
        if self.max_degree < 0:
            raise InvalidJob("--max-degree must be nonnegative")

    def load(self) -> CatalogEntry:
        if self.file is not None:
            return load_presentation(self.file)
        return catalog(self.catalog, **self.params)


def parse_params(text: str | None) -> dict[str, int]:
    out: dict[str, int] = {}
    if not text:
        return out
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise InvalidJob(f"bad parameter {item!r}; expected key=value")
        try:
            out[key.strip()] = int(value)
        except ValueError:
            raise InvalidJob(f"parameter {key.strip()} must be an integer, got {value!r}") from None
    return out


def _job(args) -> JobSpec:
    return JobSpec(
        catalog=args.catalog,
        params=parse_params(args.params),
        file=args.file,
        max_degree=args.max_degree,
        output=args.output,
        strict=args.strict,
    )


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def _resolution(entry: CatalogEntry) -> PeriodicResolution:
    return assemble_periodic(entry.seed, entry.homotopy, entry.presentation.quotient_context)


# ---------------------------------------------------------------------------
# commands


def cmd_catalog(args) -> int:
    fams = list(FAMILIES.values())
    if args.json or args.output == "json":
        _emit([{"name": f.name, "signature": f.signature, "params": list(f.params), "constraints": f.constraints} for f in fams])
    else:
        w = max(len(f.signature) for f in fams)
        for f in fams:
            print(f"{f.signature:<{w}}  {f.constraints}")
    return EXIT_OK


def cmd_resolve(args) -> int:
    job = _job(args)
    entry = job.load()
    res = _resolution(entry)
    rep = res.check(job.max_degree + 1) if job.max_degree >= 1 else Report()
    top = job.max_degree
    if job.output == "json":
        _emit(
            {
                "presentation": entry_to_json(entry),
                "resolution": {
                    "n": res.n,
                    "t": res.t,
                    "ranks": [res.module_rank(j) for j in range(top + 1)],
                    "summands": [list(res.summands(j)) for j in range(top + 1)],
                    "generators": list(res.context.alphabet.names),
                    "differentials": {
                        str(j): res.differential(j).to_strings() for j in range(1, min(top, res.n + 1) + 1)
                    },
                    "periodic_from": max(res.n - 1, 0),
                    "stable_rank": res.stable_rank,
                    "verification": rep.status if rep.entries else None,
                },
            }
        )
    else:
        print(f"# {entry.label}")
        print(res.format(top))
        if rep.entries:
            print(f"chain condition to degree {top}: {rep.status}")
    return _exit_for(rep, job.strict)


def cmd_homology(args) -> int:
    job = _job(args)
    entry = job.load()
    res = _resolution(entry)
    rep = res.check(job.max_degree + 1)
    if rep.status == "failed":
        print(rep.format(), file=sys.stderr)
        return EXIT_VERDICT
    try:
        table = homology_table(res, job.max_degree)
    except ChainConditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERDICT
    if not universal_coefficients_ok(table):
        print("error: universal coefficient cross-check failed", file=sys.stderr)
        return EXIT_VERDICT
    if job.output == "json":
        _emit(table.to_json())
    else:
        print(f"# {entry.label}")
        print(table.format())
    return _exit_for(rep, job.strict)


def full_report(entry: CatalogEntry, max_degree: int) -> Report:
    pres, central, seed, h = entry
    rep = Report()
    for r in pres.relators:
        ok = fundamental_check(r)
        rep.add(CheckEntry(f"Fox fundamental formula on relator {r}", None, "zero" if ok else "failed"))
    rep.extend(check_witnesses(pres, central.word))
    rep.extend(check_centrality(pres, central.word))
    for e in verify_seed(seed).entries:
        e.check = "seed: " + e.check
        rep.add(e)
    for e in verify_null_homotopy(seed, h, central.x).entries:
        rep.add(e)
    res = _resolution(entry)
    rep.extend(check_homotopy_products(res.phibar))
    for e in res.check(max_degree + 1).entries:
        e.check = "resolution: " + e.check
        rep.add(e)
    even, odd = sum(seed.ranks[0::2]), sum(seed.ranks[1::2])
    rep.add(
        CheckEntry(
            "stable rank (even and odd seed rank sums agree)",
            None,
            "zero" if even == odd else "failed",
            f"even {even}, odd {odd}",
        )
    )
    return rep


def cmd_verify(args) -> int:
    job = _job(args)
    entry = job.load()
    rep = full_report(entry, job.max_degree)
    if job.output == "json":
        doc = rep.to_json()
        doc["subject"] = entry.label
        _emit(doc)
    else:
        print(f"# {entry.label}")
        print(rep.format())
        for e in rep.entries:
            for i, j, s, v in e.offending[:5]:
                print(f"    {v} at ({i},{j}): {s}")
    return _exit_for(rep, job.strict)


def cmd_snf(args) -> int:
    text = sys.stdin.read() if args.path == "-" else open(args.path, encoding="utf-8").read()
    A = read_int_matrix(text)
    factors = snf(A)
    if args.output == "json":
        _emit({"rows": A.rows, "cols": A.cols, "invariant_factors": list(factors)})
    else:
        print(" ".join(str(d) for d in factors) if factors else "(zero matrix)")
    return EXIT_OK


def _exit_for(rep: Report, strict: str) -> int:
    if not rep.entries:
        return EXIT_OK
    if rep.status == "failed":
        return EXIT_VERDICT
    if strict == "symbolic" and rep.status != "verified-symbolic":
        return EXIT_VERDICT
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="perires",
        description="Eventually 2-periodic resolutions and integral (co)homology of central quotients.",
    )
    sub = parser.add_subparsers(dest="command", metavar="{catalog,resolve,homology,verify,snf}")
    sub.required = True

    p = sub.add_parser("catalog", help="list the built-in families")
    p.add_argument("--json", action="store_true", help="machine-readable listing")
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_catalog)

    for name, func, help_ in (
        ("resolve", cmd_resolve, "build the periodic resolution"),
        ("homology", cmd_homology, "integral homology and cohomology table"),
        ("verify", cmd_verify, "run every available check"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--catalog", metavar="NAME")
        p.add_argument("--params", metavar="k=v,...")
        p.add_argument("--file", metavar="PATH")
        p.add_argument("--max-degree", type=int, default=10)
        p.add_argument("--output", choices=("text", "json"), default="text")
        p.add_argument("--strict", choices=("symbolic", "augmented"), default="augmented")
        p.set_defaults(func=func)

    p = sub.add_parser("snf", help="invariant factors of an integer matrix file ('-' for stdin)")
    p.add_argument("path")
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_snf)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidJob, PresentationError, WordError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NormalizationInconclusive as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERDICT


if __name__ == "__main__":
    sys.exit(main())
