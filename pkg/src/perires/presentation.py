"""Finitely presented groups with a central quotient and a seed resolution.

``G = <gens | relators>`` carries a central word ``w``; ``Gamma = G / <w>``.
Two ring contexts are attached: the group ring of ``G`` and of ``Gamma``.
Each gets its own normalizer and (optionally) representation witnesses.
Witnesses of ``Gamma`` are also witnesses of ``G``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Any, Sequence

from .complex import FreeComplex, GRMatrix, Report, check_zero_matrix, check_complex, CheckEntry
from .fox import fox_derivative, free_context
from .groupring import (
    AmalgamOfCyclics,
    FiniteCyclicOrder,
    FreeReduction,
    GroupRingElement,
    Normalizer,
    PolycyclicCollection,
    RepresentationWitness,
    RewritingSystem,
    RingContext,
    induced_map,
)
from .words import Alphabet, Word, WordError, parse_word


class PresentationError(ValueError):
    """Invalid presentation data (bad shapes, unknown names, bad parameters)."""


@dataclass
class Presentation:
    alphabet: Alphabet
    relators: tuple[Word, ...]
    normalizer_G: Normalizer = field(default_factory=FreeReduction)
    normalizer_quotient: Normalizer = field(default_factory=FreeReduction)
    witnesses_G: tuple[RepresentationWitness, ...] = ()
    witnesses_quotient: tuple[RepresentationWitness, ...] = ()
    quotient_names: tuple[str, ...] | None = None

    def __post_init__(self):
        self.relators = tuple(self.relators)
        for r in self.relators:
            if r.is_identity():
                raise PresentationError("relators must be nonempty reduced words")
            if r.alphabet != self.alphabet:
                raise PresentationError("relator over a different alphabet")
        if self.quotient_names is not None and len(self.quotient_names) != len(self.alphabet):
            raise PresentationError("quotient generator names must match the generator count")

    @cached_property
    def free_context(self) -> RingContext:
        return free_context(self.alphabet)

    @cached_property
    def group_context(self) -> RingContext:
        complete = self.normalizer_G.complete and not (
            isinstance(self.normalizer_G, FreeReduction) and self.relators
        )
        return RingContext(
            self.alphabet,
            self.normalizer_G,
            label="group",
            complete=complete,
            witnesses=self.witnesses_quotient + self.witnesses_G,
        )

    @cached_property
    def quotient_context(self) -> RingContext:
        # the central word is a relation of Gamma, so free reduction never decides it
        complete = self.normalizer_quotient.complete and not isinstance(self.normalizer_quotient, FreeReduction)
        alphabet = Alphabet(self.quotient_names) if self.quotient_names else self.alphabet
        return RingContext(
            alphabet,
            self.normalizer_quotient,
            label="quotient",
            complete=complete,
            witnesses=self.witnesses_quotient,
        )

    def word(self, text: str) -> Word:
        return parse_word(text, self.alphabet)


@dataclass
class CentralData:
    """The central word ``w`` and ``x = sign * (w - 1)`` in the group ring of G."""

    word: Word
    sign: int
    x: GroupRingElement

    @classmethod
    def make(cls, pres: Presentation, word: Word, sign: int) -> "CentralData":
        if sign not in (1, -1):
            raise PresentationError("central sign must be +1 or -1")
        ctx = pres.group_context
        x = (ctx.word(word) - ctx.one()) * sign
        return cls(word, sign, x)


@dataclass
class SeedResolution:
    """``P_0 <- P_1 <- ... <- P_n`` over the group ring of G.

    ``differentials[i-1]`` is ``d_i`` with ``rank P_i`` rows and ``rank P_{i-1}`` columns.
    """

    context: RingContext
    ranks: tuple[int, ...]
    differentials: tuple[GRMatrix, ...]

    def __post_init__(self):
        self.ranks = tuple(self.ranks)
        self.differentials = tuple(self.differentials)
        if not self.ranks or any(r < 0 for r in self.ranks):
            raise PresentationError("seed ranks must be a nonempty list of nonnegative integers")
        if len(self.differentials) != len(self.ranks) - 1:
            raise PresentationError(f"{len(self.ranks)} ranks need {len(self.ranks) - 1} differentials")
        for i, d in enumerate(self.differentials, start=1):
            if d.shape != (self.ranks[i], self.ranks[i - 1]):
                raise PresentationError(f"d_{i} is {d.shape}, expected {(self.ranks[i], self.ranks[i - 1])}")

    @property
    def n(self) -> int:
        return len(self.ranks) - 1

    def d(self, i: int) -> GRMatrix | None:
        return self.differentials[i - 1] if 1 <= i <= self.n else None

    def rank(self, i: int) -> int:
        return self.ranks[i] if 0 <= i <= self.n else 0

    def complex(self) -> FreeComplex:
        return FreeComplex(
            self.context,
            0,
            self.ranks,
            {i: d for i, d in enumerate(self.differentials, start=1)},
            {i: (i,) for i in range(self.n + 1)},
        )


def lyndon_partial(pres: Presentation) -> tuple[GRMatrix, GRMatrix | None]:
    """``d_1 = (g_i - 1)`` and ``d_2`` = Fox Jacobian of the relators, in the group ring of G."""
    ctx = pres.group_context
    k = len(pres.alphabet)
    if k < 1:
        raise PresentationError("need at least one generator")
    d1 = GRMatrix(ctx, k, 1, [[ctx.gen_minus_one(i)] for i in range(k)])
    if not pres.relators:
        return d1, None
    rows = [[induced_map(fox_derivative(r, i), ctx) for i in range(k)] for r in pres.relators]
    return d1, GRMatrix(ctx, len(rows), k, rows)


def verify_seed(seed: SeedResolution) -> Report:
    rep = Report()
    d1 = seed.d(1)
    if d1 is not None:
        bad = not d1.augment().is_zero()
        rep.add(CheckEntry("augmented d_1 is the zero column", 1, "failed" if bad else "zero"))
    rep.extend(check_complex(seed.complex()))
    return rep


def check_witnesses(pres: Presentation, central: Word | None = None) -> Report:
    """Each witness must kill the relators (and the central word, for Gamma witnesses)."""
    rep = Report()
    for level, ws, extra in (("G", pres.witnesses_G, ()), ("Gamma", pres.witnesses_quotient, (central,))):
        for k, w in enumerate(ws):
            words = list(pres.relators) + [c for c in extra if c is not None]
            bad = [str(r) for r in words if not w.kills(r.syllables)]
            rep.add(
                CheckEntry(
                    f"witness {w.name or k} is a representation of {level}",
                    None,
                    "failed" if bad else "zero",
                    f"does not kill {', '.join(bad)}" if bad else "",
                )
            )
    return rep


def check_centrality(pres: Presentation, central: Word) -> Report:
    """``g w g^-1 w^-1 == 1`` for each generator, at the best available verdict."""
    ctx = pres.group_context
    rows = []
    for i in range(len(pres.alphabet)):
        g = Word.gen(pres.alphabet, i)
        comm = g * central * g.inverse() * central.inverse()
        rows.append([ctx.word(comm) - ctx.one()])
    M = GRMatrix(ctx, len(rows), 1, rows)
    return Report([check_zero_matrix(M, "central word commutes with generators", None)])


# ---------------------------------------------------------------------------
# presentation files


def _normalizer_from_json(data: dict | None, alphabet: Alphabet) -> Normalizer:
    if data is None:
        return FreeReduction()
    kind = data.get("kind")
    names = alphabet.names
    try:
        if kind == "free":
            return FreeReduction()
        if kind == "cyclic":
            orders = data.get("orders", {})
            unknown = set(orders) - set(names)
            if unknown:
                raise PresentationError(f"unknown generators in orders: {sorted(unknown)}")
            return FiniteCyclicOrder(tuple(int(orders.get(n, 0)) for n in names))
        if kind == "polycyclic":
            order = tuple(alphabet.index(n) for n in data["order"])
            if sorted(order) != list(range(len(names))):
                raise PresentationError("polycyclic order must list every generator once")
            pos = {g: i for i, g in enumerate(order)}
            rel = data.get("relative_orders", {})
            pw = data.get("powers", {})
            relative = tuple(int(rel.get(names[g], 0)) for g in order)
            powers = tuple(
                parse_word(pw.get(names[g], "1"), alphabet).syllables if relative[i] else ()
                for i, g in enumerate(order)
            )
            conj = []
            for c in data.get("conjugates", []):
                j, i = pos[alphabet.index(c["gen"])], pos[alphabet.index(c["by"])]
                if j <= i:
                    raise PresentationError("conjugate rules need gen later than by in the order")
                s = int(c["sign"])
                if s not in (1, -1):
                    raise PresentationError("conjugate sign must be +1 or -1")
                conj.append(((j, i, s), parse_word(c["word"], alphabet).syllables))
            return PolycyclicCollection(order, relative, powers, tuple(conj))
        if kind == "amalgam":
            a, b = (alphabet.index(n) for n in data["generators"])
            return AmalgamOfCyclics(a, b, int(data["p"]), int(data["q"]), int(data.get("k", 0)))
        if kind == "rewriting":
            rules = tuple(
                (parse_word(l, alphabet).syllables, parse_word(r, alphabet).syllables) for l, r in data["rules"]
            )
            cap = data.get("step_cap")
            return RewritingSystem(rules, bool(data.get("confluent", False)), None if cap is None else int(cap))
    except (KeyError, TypeError) as exc:
        raise PresentationError(f"malformed {kind!r} normalizer: {exc}") from None
    except WordError as exc:
        raise PresentationError(str(exc)) from None
    raise PresentationError(f"unknown normalizer kind {kind!r}")


def _matrix_from_json(ctx: RingContext, rows: Any, shape: tuple[int, int], what: str) -> GRMatrix:
    if not isinstance(rows, list) or len(rows) != shape[0] or any(
        not isinstance(r, list) or len(r) != shape[1] for r in rows
    ):
        raise PresentationError(f"{what} must be a {shape[0]}x{shape[1]} matrix")
    try:
        return GRMatrix.parse(ctx, [[str(x) for x in r] for r in rows], cols=shape[1])
    except WordError as exc:
        raise PresentationError(f"{what}: {exc}") from None


def _witnesses_from_json(mats: Any, k: int, what: str) -> RepresentationWitness:
    if not isinstance(mats, list) or len(mats) != k:
        raise PresentationError(f"{what} needs one matrix per generator")
    try:
        return RepresentationWitness.from_lists(mats, name=what)
    except (ValueError, TypeError) as exc:
        raise PresentationError(f"{what}: {exc}") from None


def entry_from_json(doc: dict):
    """Build a :class:`~perires.catalog.CatalogEntry` from a presentation document."""
    from .catalog import CatalogEntry
    from .periodic import NullHomotopy

    try:
        alphabet = Alphabet(tuple(doc["generators"]))
        relators = tuple(parse_word(r, alphabet) for r in doc.get("relators", []))
        central_word = parse_word(doc["central_word"], alphabet)
        sign_text = str(doc["central_x_sign"])
        seed_doc = doc["seed"]
        ranks = tuple(int(r) for r in seed_doc["ranks"])
        diff_doc = seed_doc["differentials"]
        hom_doc = doc["homotopy"]
    except KeyError as exc:
        raise PresentationError(f"missing field {exc}") from None
    except WordError as exc:
        raise PresentationError(str(exc)) from None
    if sign_text not in ("+1", "-1", "1"):
        raise PresentationError("central_x_sign must be \"+1\" or \"-1\"")
    sign = -1 if sign_text == "-1" else 1
    norm = doc.get("normalizer")
    if isinstance(norm, dict) and ("group" in norm or "quotient" in norm):
        norm_G = _normalizer_from_json(norm.get("group"), alphabet)
        norm_Q = _normalizer_from_json(norm.get("quotient"), alphabet)
    else:
        norm_G, norm_Q = FreeReduction(), _normalizer_from_json(norm, alphabet)
    k = len(alphabet)
    wit = doc.get("witness") or {}
    wq, wg = [], []
    if "generator_matrices" in wit:
        wq.append(_witnesses_from_json(wit["generator_matrices"], k, "witness"))
    for i, m in enumerate(wit.get("additional", [])):
        wq.append(_witnesses_from_json(m, k, f"witness {i + 1}"))
    for i, m in enumerate(wit.get("group_matrices", [])):
        wg.append(_witnesses_from_json(m, k, f"group witness {i}"))
    qnames = doc.get("quotient_generators")
    try:
        pres = Presentation(alphabet, relators, norm_G, norm_Q, tuple(wg), tuple(wq), tuple(qnames) if qnames else None)
    except (ValueError, WordError) as exc:
        raise PresentationError(str(exc)) from None
    ctx = pres.group_context
    n = len(ranks) - 1
    if not isinstance(diff_doc, list) or len(diff_doc) != n:
        raise PresentationError(f"seed needs {n} differentials for {len(ranks)} ranks")
    diffs = [_matrix_from_json(ctx, diff_doc[i - 1], (ranks[i], ranks[i - 1]), f"d_{i}") for i in range(1, n + 1)]
    if not isinstance(hom_doc, list) or len(hom_doc) != n:
        raise PresentationError(f"homotopy needs {n} matrices")
    phis = [_matrix_from_json(ctx, hom_doc[i - 1], (ranks[i - 1], ranks[i]), f"phi_{i}") for i in range(1, n + 1)]
    seed = SeedResolution(ctx, ranks, tuple(diffs))
    central = CentralData.make(pres, central_word, sign)
    return CatalogEntry(doc.get("name", "file"), dict(doc.get("params", {})), pres, central, seed, NullHomotopy(tuple(phis)))


def entry_to_json(entry) -> dict:
    pres, central, seed, h = entry.presentation, entry.central, entry.seed, entry.homotopy
    names = pres.alphabet
    doc = {
        "name": entry.name,
        "params": entry.params,
        "generators": list(names.names),
        "relators": [str(r) for r in pres.relators],
        "central_word": str(central.word),
        "central_x_sign": "+1" if central.sign == 1 else "-1",
        "seed": {
            "ranks": list(seed.ranks),
            "differentials": [d.to_strings() for d in seed.differentials],
        },
        "homotopy": [p.to_strings() for p in h.phis],
        "normalizer": {
            "group": pres.normalizer_G.to_json(names),
            "quotient": pres.normalizer_quotient.to_json(names),
        },
    }
    if pres.quotient_names:
        doc["quotient_generators"] = list(pres.quotient_names)
    wit: dict[str, Any] = {}
    if pres.witnesses_quotient:
        wit["generator_matrices"] = pres.witnesses_quotient[0].to_json()
        if len(pres.witnesses_quotient) > 1:
            wit["additional"] = [w.to_json() for w in pres.witnesses_quotient[1:]]
    if pres.witnesses_G:
        wit["group_matrices"] = [w.to_json() for w in pres.witnesses_G]
    if wit:
        doc["witness"] = wit
    return doc


def load_presentation(path: str | Path):
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise PresentationError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(doc, dict):
        raise PresentationError(f"{path}: expected a JSON object")
    # resolve output wraps the presentation document
    if "presentation" in doc and isinstance(doc["presentation"], dict):
        doc = doc["presentation"]
    return entry_from_json(doc)


def catalog(name: str, **params):
    from .catalog import catalog as _catalog

    return _catalog(name, **params)
