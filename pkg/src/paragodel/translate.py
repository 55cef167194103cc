"""Translations between the single-relation bi-Gödel modal language and the
paired language, plus the crisp shadow of a model.

Source formulas use ``box``/``dia`` for the ordinary modalities of the
single-relation logic and contain no De Morgan negation. They are ordinary
:class:`Formula` trees; :func:`check_source` guards the boundary.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .algebra import ONE, ZERO, gcoimpl, gimpl, rational01
from .formula import (
    And, Atom, Bot, Box, Coimpl, Dia, Formula, GNeg, Iff, Impl, Neg, Or, SourceError, Top, check_source,
)
from .model import KripkeModel

KINDS = ("plusbullet", "minusbullet", "nabla", "partial")


def _map(phi: Formula, box, dia) -> Formula:
    def go(f):
        if isinstance(f, (Atom, Top, Bot)):
            return f
        if isinstance(f, Box):
            return box(go(f.sub))
        if isinstance(f, Dia):
            return dia(go(f.sub))
        if isinstance(f, GNeg):
            return GNeg(go(f.sub))
        return type(f)(go(f.left), go(f.right))

    return go(check_source(phi))


def plus_bullet(phi: Formula) -> Formula:
    """box -> black box, dia -> black diamond (the same tree here)."""
    return _map(phi, Box, Dia)


def minus_bullet(phi: Formula) -> Formula:
    """box -> neg box neg, dia -> neg dia neg."""
    return _map(phi, lambda x: Neg(Box(Neg(x))), lambda x: Neg(Dia(Neg(x))))


def nabla(phi: Formula) -> Formula:
    """Prefix every subformula with ``~~``."""
    check_source(phi, (Bot, And, Or, Impl))

    def go(f):
        if isinstance(f, (Atom, Bot)):
            inner = f
        elif isinstance(f, (Box, Dia)):
            inner = type(f)(go(f.sub))
        else:
            inner = type(f)(go(f.left), go(f.right))
        return GNeg(GNeg(inner))

    return go(phi)


def _one_minus(x: Formula) -> Formula:
    return Coimpl(Top(), x)


def partial(phi: Formula) -> Formula:
    """The dual translation: atoms to ``1 -< (1 -< p)``, & and | swapped,
    ``chi -> psi`` to ``psi' -< chi'``, box/dia kept."""
    check_source(phi, (And, Or, Impl))

    def go(f):
        if isinstance(f, Atom):
            return _one_minus(_one_minus(f))
        if isinstance(f, And):
            return Or(go(f.left), go(f.right))
        if isinstance(f, Or):
            return And(go(f.left), go(f.right))
        if isinstance(f, Impl):
            return Coimpl(go(f.right), go(f.left))
        return type(f)(go(f.sub))

    return go(phi)


TRANSLATIONS = {"plusbullet": plus_bullet, "minusbullet": minus_bullet, "nabla": nabla, "partial": partial}


# ---------------------------------------------------------------------------
# single-relation semantics


@dataclass(frozen=True)
class SingleModel:
    """A fuzzy frame ``<W, S>`` with a single valuation (the source logic)."""

    worlds: tuple[str, ...]
    rel: Mapping[tuple[str, str], Fraction]
    val: Mapping[tuple[str, str], Fraction]

    def __post_init__(self):
        object.__setattr__(self, "worlds", tuple(self.worlds))
        object.__setattr__(self, "rel", {k: rational01(x) for k, x in dict(self.rel).items()})
        object.__setattr__(self, "val", {k: rational01(x) for k, x in dict(self.val).items()})

    __hash__ = None


def single_eval(m: SingleModel, w: str, phi: Formula) -> Fraction:
    """Value of a source formula in the single-relation bi-Gödel semantics."""
    memo: dict = {}

    def go(f, u):
        key = (f, u)
        if key in memo:
            return memo[key]
        if isinstance(f, Atom):
            out = m.val.get((u, f.name), ZERO)
        elif isinstance(f, Top):
            out = ONE
        elif isinstance(f, Bot):
            out = ZERO
        elif isinstance(f, And):
            out = min(go(f.left, u), go(f.right, u))
        elif isinstance(f, Or):
            out = max(go(f.left, u), go(f.right, u))
        elif isinstance(f, Impl):
            out = gimpl(go(f.left, u), go(f.right, u))
        elif isinstance(f, Coimpl):
            out = gcoimpl(go(f.left, u), go(f.right, u))
        elif isinstance(f, GNeg):
            out = gimpl(go(f.sub, u), ZERO)
        elif isinstance(f, Iff):
            a, b = go(f.left, u), go(f.right, u)
            out = min(gimpl(a, b), gimpl(b, a))
        elif isinstance(f, Box):
            out = min((gimpl(m.rel.get((u, v), ZERO), go(f.sub, v)) for v in m.worlds), default=ONE)
        elif isinstance(f, Dia):
            out = max((min(m.rel.get((u, v), ZERO), go(f.sub, v)) for v in m.worlds), default=ZERO)
        elif isinstance(f, Neg):
            raise SourceError("De Morgan negation has no single-relation reading")
        else:
            raise TypeError(f"unexpected node {f!r}")
        memo[key] = out
        return out

    return go(phi, w)


def counterpart_model(m: SingleModel, other: Mapping[tuple[str, str], object], side: str) -> KripkeModel:
    """The counterpart frame carrying ``m``'s valuation as v1 (v2 is 0)."""
    from .model import attach_counterpart, with_valuation

    frame = attach_counterpart(m.worlds, m.rel, other, side)
    return with_valuation(frame, {k: (x, ZERO) for k, x in m.val.items()})


# ---------------------------------------------------------------------------
# classical shadow


@dataclass(frozen=True)
class ClassicalModel:
    worlds: tuple[str, ...]
    edges: frozenset  # pairs (u, v)
    true: frozenset  # pairs (world, atom)


def shadow_model(m: KripkeModel) -> ClassicalModel:
    """Edge where R- is 1, atom true where v2 is 1."""
    return ClassicalModel(
        m.worlds,
        frozenset(k for k, x in m.rminus.items() if x == ONE),
        frozenset(k for k, vp in m.val.items() if vp.neg == ONE),
    )


def classical_holds(cm: ClassicalModel, w: str, phi: Formula) -> bool:
    """Classical Kripke truth of a source formula (``a -< b`` reads a and not b)."""

    def go(f, u):
        if isinstance(f, Atom):
            return (u, f.name) in cm.true
        if isinstance(f, Top):
            return True
        if isinstance(f, Bot):
            return False
        if isinstance(f, And):
            return go(f.left, u) and go(f.right, u)
        if isinstance(f, Or):
            return go(f.left, u) or go(f.right, u)
        if isinstance(f, Impl):
            return (not go(f.left, u)) or go(f.right, u)
        if isinstance(f, Coimpl):
            return go(f.left, u) and not go(f.right, u)
        if isinstance(f, GNeg):
            return not go(f.sub, u)
        if isinstance(f, Iff):
            return go(f.left, u) == go(f.right, u)
        if isinstance(f, Box):
            return all(go(f.sub, v) for v in cm.worlds if (u, v) in cm.edges)
        if isinstance(f, Dia):
            return any(go(f.sub, v) for v in cm.worlds if (u, v) in cm.edges)
        raise SourceError(f"not a source formula node: {f!r}")

    return go(phi, w)
