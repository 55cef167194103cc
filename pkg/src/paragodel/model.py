"""Finite fuzzy bi-relational Kripke models and their paired valuations."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

from .algebra import ONE, ZERO, fmt, gcoimpl, gimpl, join, meet, rational01
from .formula import And, Atom, Box, Dia, Formula, Impl, Neg, desugar

MODES = ("pos", "neg", "strong")


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class ValuePair:
    """Support of truth (``pos``, v1) and support of falsity (``neg``, v2)."""

    pos: Fraction
    neg: Fraction

    def swap(self) -> "ValuePair":
        return ValuePair(self.neg, self.pos)

    def __iter__(self):
        return iter((self.pos, self.neg))

    def __str__(self) -> str:
        return f"({fmt(self.pos)}, {fmt(self.neg)})"


def pair(v1, v2) -> ValuePair:
    return ValuePair(rational01(v1), rational01(v2))


@dataclass(frozen=True)
class KripkeModel:
    """A finite model ``<W, R+, R-, v1, v2>``.

    Missing relation entries read as 0 and missing atom entries as (0, 0).
    Zero entries are dropped on construction so equal models compare equal.
    """

    worlds: tuple[str, ...]
    rplus: Mapping[tuple[str, str], Fraction] = field(default_factory=dict)
    rminus: Mapping[tuple[str, str], Fraction] = field(default_factory=dict)
    val: Mapping[tuple[str, str], ValuePair] = field(default_factory=dict)

    def __post_init__(self):
        worlds = tuple(self.worlds)
        if not worlds:
            raise ModelError("a model needs at least one world")
        if len(set(worlds)) != len(worlds):
            raise ModelError(f"duplicate world names in {worlds}")
        known = set(worlds)
        object.__setattr__(self, "worlds", worlds)
        for name in ("rplus", "rminus"):
            rel = {}
            for (u, v), x in dict(getattr(self, name)).items():
                if u not in known or v not in known:
                    raise ModelError(f"{name} edge ({u}, {v}) mentions an unknown world")
                x = rational01(x)
                if x:
                    rel[(u, v)] = x
            object.__setattr__(self, name, rel)
        val = {}
        for (w, p), vp in dict(self.val).items():
            if w not in known:
                raise ModelError(f"valuation of {p} at unknown world {w}")
            vp = vp if isinstance(vp, ValuePair) else pair(*vp)
            if vp.pos or vp.neg:
                val[(w, p)] = vp
        object.__setattr__(self, "val", val)

    __hash__ = None

    def relation(self, coord: int) -> Mapping[tuple[str, str], Fraction]:
        """R+ for coordinate 1, R- for coordinate 2."""
        return self.rplus if coord == 1 else self.rminus

    def r(self, coord: int, u: str, v: str) -> Fraction:
        return self.relation(coord).get((u, v), ZERO)

    def value(self, w: str, atom: str) -> ValuePair:
        return self.val.get((w, atom), ValuePair(ZERO, ZERO))

    def check_world(self, w: str) -> None:
        if w not in self.worlds:
            raise ModelError(f"unknown world {w!r}; model has {', '.join(self.worlds)}")

    @property
    def atoms(self) -> frozenset[str]:
        return frozenset(p for _, p in self.val)


# ---------------------------------------------------------------------------
# evaluation

class Evaluator:
    """Evaluates formulas on one model, sharing a memo across calls."""

    def __init__(self, m: KripkeModel):
        self.model = m
        ws = m.worlds
        self._rel = {i: [[m.r(i, u, v) for v in ws] for u in ws] for i in (1, 2)}
        self._memo: dict[Formula, tuple[list, list]] = {}

    def columns(self, f: Formula) -> tuple[list, list]:
        """``(v1 per world, v2 per world)`` for a desugared formula."""
        hit = self._memo.get(f)
        if hit is not None:
            return hit
        go = self.columns
        n = len(self.model.worlds)
        if isinstance(f, Atom):
            vals = [self.model.value(w, f.name) for w in self.model.worlds]
            out = ([v.pos for v in vals], [v.neg for v in vals])
        elif isinstance(f, Neg):
            a1, a2 = go(f.sub)
            out = (a2, a1)
        elif isinstance(f, And):
            (a1, a2), (b1, b2) = go(f.left), go(f.right)
            out = ([meet(x, y) for x, y in zip(a1, b1)], [join(x, y) for x, y in zip(a2, b2)])
        elif isinstance(f, Impl):
            (a1, a2), (b1, b2) = go(f.left), go(f.right)
            out = ([gimpl(x, y) for x, y in zip(a1, b1)], [gcoimpl(y, x) for x, y in zip(a2, b2)])
        elif isinstance(f, Box):
            sub = go(f.sub)
            rel = self._rel
            out = tuple(
                [min((gimpl(rel[i][u][v], sub[i - 1][v]) for v in range(n)), default=ONE) for u in range(n)]
                for i in (1, 2)
            )
        elif isinstance(f, Dia):
            sub = go(f.sub)
            rel = self._rel
            out = tuple(
                [max((meet(rel[i][u][v], sub[i - 1][v]) for v in range(n)), default=ZERO) for u in range(n)]
                for i in (1, 2)
            )
        else:
            raise TypeError(f"unexpected node {f!r}; desugar first")
        self._memo[f] = out
        return out

    def pair(self, w: str, f: Formula) -> ValuePair:
        """Value of ``f`` (sugar allowed) at ``w``."""
        self.model.check_world(w)
        k = self.model.worlds.index(w)
        v1, v2 = self.columns(desugar(f))
        return ValuePair(v1[k], v2[k])


def evaluate_all(m: KripkeModel, phi: Formula) -> dict[str, ValuePair]:
    """Value pair of ``phi`` at every world of ``m``."""
    v1, v2 = Evaluator(m).columns(desugar(phi))
    return {w: ValuePair(a, b) for w, a, b in zip(m.worlds, v1, v2)}


def evaluate(m: KripkeModel, w: str, phi: Formula) -> ValuePair:
    """``(v1(phi, w), v2(phi, w))``."""
    m.check_world(w)
    return evaluate_all(m, phi)[w]


def violates(vp: ValuePair, mode: str) -> bool:
    """Whether a value pair falsifies ``pos`` (v1 < 1), ``neg`` (v2 > 0) or either."""
    if mode == "pos":
        return vp.pos != ONE
    if mode == "neg":
        return vp.neg != ZERO
    if mode == "strong":
        return vp.pos != ONE or vp.neg != ZERO
    raise ValueError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class ValidityReport:
    holds: bool
    witness: tuple[str, ValuePair] | None = None


def check_validity_on_model(m: KripkeModel, phi: Formula, mode: str = "strong") -> ValidityReport:
    values = evaluate_all(m, phi)
    for w in m.worlds:
        if violates(values[w], mode):
            return ValidityReport(False, (w, values[w]))
    return ValidityReport(True)


# ---------------------------------------------------------------------------
# frames

@dataclass(frozen=True)
class FrameReport:
    crisp_plus: bool
    crisp_minus: bool
    mono_relational: bool


def frame_predicates(m: KripkeModel) -> FrameReport:
    crisp = lambda rel: all(x in (ZERO, ONE) for x in rel.values())  # noqa: E731
    return FrameReport(crisp(m.rplus), crisp(m.rminus), dict(m.rplus) == dict(m.rminus))


def attach_counterpart(
    worlds: Sequence[str],
    relation: Mapping[tuple[str, str], object],
    other: Mapping[tuple[str, str], object],
    side: str,
) -> KripkeModel:
    """Turn a single-relation frame into a bi-relational one.

    ``side="plus"`` makes ``relation`` the R+ of the result (R- is ``other``);
    ``side="minus"`` makes it R-. The result has an empty valuation.
    """
    known = set(worlds)
    for u, v in list(relation) + list(other):
        if u not in known or v not in known:
            raise ModelError(f"edge ({u}, {v}) is outside the world set {sorted(known)}")
    if side == "plus":
        return KripkeModel(tuple(worlds), relation, other)
    if side == "minus":
        return KripkeModel(tuple(worlds), other, relation)
    raise ValueError(f"side must be 'plus' or 'minus', not {side!r}")


def with_valuation(frame: KripkeModel, val: Mapping) -> KripkeModel:
    return KripkeModel(frame.worlds, frame.rplus, frame.rminus, val)


# ---------------------------------------------------------------------------
# JSON model files

def model_from_json(doc) -> KripkeModel:
    """Build a model from the JSON document (a dict or its text)."""
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ModelError(f"model file is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "worlds" not in doc:
        raise ModelError("model document must be an object with a 'worlds' list")
    try:
        worlds = tuple(str(w) for w in doc["worlds"])
        rels = {}
        for key in ("rplus", "rminus"):
            rels[key] = {}
            for entry in doc.get(key, []):
                u, v, x = entry
                rels[key][(str(u), str(v))] = rational01(str(x))
        val = {}
        for entry in doc.get("val", []):
            w, p, v1, v2 = entry
            val[(str(w), str(p))] = pair(str(v1), str(v2))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ModelError):
            raise
        raise ModelError(f"malformed model entry: {exc}") from exc
    return KripkeModel(worlds, rels["rplus"], rels["rminus"], val)


def model_to_json(m: KripkeModel) -> dict:
    order = {w: i for i, w in enumerate(m.worlds)}
    edge_key = lambda e: (order[e[0][0]], order[e[0][1]])  # noqa: E731
    return {
        "worlds": list(m.worlds),
        "rplus": [[u, v, fmt(x)] for (u, v), x in sorted(m.rplus.items(), key=edge_key)],
        "rminus": [[u, v, fmt(x)] for (u, v), x in sorted(m.rminus.items(), key=edge_key)],
        "val": [
            [w, p, fmt(vp.pos), fmt(vp.neg)]
            for (w, p), vp in sorted(m.val.items(), key=lambda e: (order[e[0][0]], e[0][1]))
        ],
    }


def dumps_model(m: KripkeModel) -> str:
    """JSON text with one relation/valuation entry per line."""
    doc = model_to_json(m)
    lines = ["{", f'  "worlds": {json.dumps(doc["worlds"])},']
    for key in ("rplus", "rminus", "val"):
        entries = [f"    {json.dumps(e)}" for e in doc[key]]
        end = "" if key == "val" else ","
        if entries:
            lines.append(f'  "{key}": [\n' + ",\n".join(entries) + f"\n  ]{end}")
        else:
            lines.append(f'  "{key}": []{end}')
    lines.append("}")
    return "\n".join(lines)


def load_model(path) -> KripkeModel:
    return model_from_json(Path(path).read_text(encoding="utf-8"))
