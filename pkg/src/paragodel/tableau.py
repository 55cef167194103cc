"""Constraint tableaux for the paraconsistent Gödel modal logic.

Branches hold constraints ``X <= Y`` / ``X < Y`` between structures: labelled
formulas ``w:i:phi``, the constants 0 and 1, and relation terms ``wR+v`` /
``wR-v``. A branch closes when its order graph has a cycle through a strict
edge. Complete open branches are turned into finite countermodels.

Internally structures are tuples so that hashing stays cheap:

    (0, w, i, fid)   formula ``fid`` at world ``w``, coordinate ``i``
    (1, c)           constant ``c``
    (2, w, i, v)     ``w S v`` with S = R+ for i = 1 and R- for i = 2
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import ONE, ZERO, fmt
from .formula import (
    TOP_ATOM, And, Atom, Box, Coimpl, Dia, Formula, GNeg, Impl, Neg, Top, desugar, to_text,
)
from .model import Evaluator, KripkeModel, ValuePair, violates

ZS = (1, 0)
OS = (1, 1)

ATOM, NEG, AND, IMPL, BOX, DIA = range(6)
_OPNAME = {NEG: "neg", AND: "and", IMPL: "impl", BOX: "box", DIA: "dia"}

DEFAULT_MAX_STATES = 256
DEFAULT_MAX_BRANCHES = 200_000


class ResourceLimitExceeded(RuntimeError):
    """The search hit the configured branch or state cap."""


class RealisationError(AssertionError):
    """An extracted model failed to realise its branch. Always an engine bug."""


# ---------------------------------------------------------------------------
# public structures


@dataclass(frozen=True)
class FormulaAt:
    world: str
    coord: int
    formula: Formula

    def __str__(self):
        return f"{self.world}:{self.coord}:{to_text(self.formula)}"


@dataclass(frozen=True)
class Const:
    value: int

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Rel:
    src: str
    sign: str  # "plus" or "minus"
    dst: str

    def __post_init__(self):
        if self.sign not in ("plus", "minus"):
            raise ValueError(f"relation sign must be plus or minus, not {self.sign!r}")

    def __str__(self):
        return f"{self.src}R{'+' if self.sign == 'plus' else '-'}{self.dst}"


Structure = FormulaAt | Const | Rel


@dataclass(frozen=True)
class Constraint:
    left: Structure
    right: Structure
    strict: bool = False

    def __str__(self):
        return f"{self.left} {'<' if self.strict else '<='} {self.right}"


def le(a, b) -> Constraint:
    return Constraint(a, b, False)


def lt(a, b) -> Constraint:
    return Constraint(a, b, True)


def ge(a, b) -> Constraint:
    return Constraint(b, a, False)


def gt(a, b) -> Constraint:
    return Constraint(b, a, True)


@dataclass(frozen=True)
class Branch:
    """A snapshot of a tableau branch in public form."""

    constraints: frozenset
    worlds: tuple[str, ...]
    applied: tuple = ()


@dataclass(frozen=True)
class RealisationReport:
    ok: bool
    checked: int
    classes: int
    atomic: int
    violations: tuple[str, ...] = ()


@dataclass(frozen=True)
class Proved:
    branches: int = 0


@dataclass(frozen=True, eq=False)
class Countermodel:
    model: KripkeModel
    world: str
    coordinate: int
    value: ValuePair
    report: RealisationReport | None = None
    branch: Branch | None = None
    branches: int = 0


Verdict = Proved | Countermodel


@dataclass(frozen=True, eq=False)
class SatResult:
    satisfiable: bool
    model: KripkeModel | None = None
    world: str | None = None
    branches: int = 0


# ---------------------------------------------------------------------------
# formula table


class _Table:
    """Hash-conses desugared formulas to small integers."""

    def __init__(self):
        self.ids: dict[Formula, int] = {}
        self.nodes: list[tuple] = []
        self.forms: list[Formula] = []
        self.one = self.intern(desugar(Top()))

    def intern(self, f: Formula) -> int:
        hit = self.ids.get(f)
        if hit is not None:
            return hit
        if isinstance(f, Atom):
            node = (ATOM, f.name, None)
        elif isinstance(f, Neg):
            node = (NEG, self.intern(f.sub), None)
        elif isinstance(f, And):
            node = (AND, self.intern(f.left), self.intern(f.right))
        elif isinstance(f, Impl):
            node = (IMPL, self.intern(f.left), self.intern(f.right))
        elif isinstance(f, Box):
            node = (BOX, self.intern(f.sub), None)
        elif isinstance(f, Dia):
            node = (DIA, self.intern(f.sub), None)
        else:
            raise TypeError(f"not a core formula: {f!r}")
        fid = len(self.nodes)
        self.ids[f] = fid
        self.nodes.append(node)
        self.forms.append(f)
        return fid


def _trivial(c) -> bool:
    l, r, s = c
    if s:
        return l == ZS and r == OS
    return l == r or l == ZS or r == OS


# ---------------------------------------------------------------------------
# branches


class _Branch:
    __slots__ = ("bid", "cons", "conset", "succ", "nworlds", "queues", "rel_succ", "reusers", "witness", "closed")

    def __init__(self, bid):
        self.bid = bid
        self.cons: list = []
        self.conset: set = set()
        self.succ: dict = {ZS: [(OS, True)], OS: []}
        self.nworlds = 0
        self.queues = [deque(), deque(), deque(), deque()]
        self.rel_succ: dict = {}
        self.reusers: dict = {}
        self.witness: dict = {}
        self.closed = False

    def copy(self, bid) -> "_Branch":
        b = _Branch.__new__(_Branch)
        b.bid = bid
        b.cons = self.cons.copy()
        b.conset = self.conset.copy()
        b.succ = {k: v.copy() for k, v in self.succ.items()}
        b.nworlds = self.nworlds
        b.queues = [q.copy() for q in self.queues]
        b.rel_succ = {k: v.copy() for k, v in self.rel_succ.items()}
        b.reusers = {k: v.copy() for k, v in self.reusers.items()}
        b.witness = self.witness.copy()
        b.closed = self.closed
        return b

    def occurs(self, c) -> bool:
        if _trivial(c) or c in self.conset:
            return True
        return not c[2] and (c[0], c[1], True) in self.conset

    def _node(self, n):
        if n not in self.succ:
            self.succ[n] = [(OS, False)]
            self.succ[ZS].append((n, False))

    def reaches(self, src, dst, strict) -> bool:
        """Is there a path src ~> dst that is strict (or ``strict`` already)?"""
        succ = self.succ
        seen = {src: strict}
        stack = [(src, strict)]
        while stack:
            x, f = stack.pop()
            if f and x == dst:
                return True
            for y, s in succ[x]:
                nf = f or s
                prev = seen.get(y)
                if prev is None or (nf and not prev):
                    seen[y] = nf
                    stack.append((y, nf))
        return False


def _sccs(succ: dict) -> tuple[dict, list[list]]:
    """Tarjan's algorithm, iterative. Components come out sinks first."""
    index: dict = {}
    low: dict = {}
    comp: dict = {}
    onstack: set = set()
    stack: list = []
    comps: list = []
    counter = 0
    for root in succ:
        if root in index:
            continue
        work = [(root, iter(succ[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        onstack.add(root)
        while work:
            v, it = work[-1]
            pushed = False
            for w, _ in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    onstack.add(w)
                    work.append((w, iter(succ[w])))
                    pushed = True
                    break
                if w in onstack:
                    low[v] = min(low[v], index[w])
            if pushed:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                members = []
                while True:
                    w = stack.pop()
                    onstack.discard(w)
                    comp[w] = len(comps)
                    members.append(w)
                    if w == v:
                        break
                comps.append(members)
    return comp, comps


def _graph_closed(succ: dict) -> bool:
    comp, _ = _sccs(succ)
    return any(s and comp[u] == comp[v] for u, out in succ.items() for v, s in out)


# ---------------------------------------------------------------------------
# the engine


class Tableau:
    """Saturating depth-first constraint tableau.

    ``transcript`` collects one line per rule application when it is a list.
    """

    def __init__(self, max_states: int = DEFAULT_MAX_STATES, max_branches: int = DEFAULT_MAX_BRANCHES,
                 transcript: list | None = None):
        self.max_states = max_states
        self.max_branches = max_branches
        self.transcript = transcript
        self.table = _Table()
        self.names: list[str] = []
        self.branches = 0

    # -- conversion ----------------------------------------------------------

    def _world(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            self.names.append(name)
            return len(self.names) - 1

    def name(self, k: int) -> str:
        while len(self.names) <= k:
            used = set(self.names)
            j = len(self.names)
            while f"w{j}" in used:
                j += 1
            self.names.append(f"w{j}")
        return self.names[k]

    def fa(self, w: int, i: int, fid: int):
        if fid == self.table.one:
            return OS if i == 1 else ZS
        return (0, w, i, fid)

    def internal(self, x: Structure):
        if isinstance(x, FormulaAt):
            if x.coord not in (1, 2):
                raise ValueError(f"coordinate must be 1 or 2, not {x.coord}")
            return self.fa(self._world(x.world), x.coord, self.table.intern(desugar(x.formula)))
        if isinstance(x, Const):
            if x.value not in (0, 1):
                raise ValueError(f"constant must be 0 or 1, not {x.value}")
            return OS if x.value else ZS
        if isinstance(x, Rel):
            return (2, self._world(x.src), 1 if x.sign == "plus" else 2, self._world(x.dst))
        raise TypeError(f"not a structure: {x!r}")

    def public(self, n) -> Structure:
        if n[0] == 1:
            return Const(n[1])
        if n[0] == 0:
            return FormulaAt(self.name(n[1]), n[2], self.table.forms[n[3]])
        return Rel(self.name(n[1]), "plus" if n[2] == 1 else "minus", self.name(n[3]))

    def show(self, n) -> str:
        if n[0] == 1:
            return str(n[1])
        if n[0] == 0:
            return f"{self.name(n[1])}:{n[2]}:{to_text(self.table.forms[n[3]])}"
        return f"{self.name(n[1])}R{'+' if n[2] == 1 else '-'}{self.name(n[3])}"

    def show_c(self, c) -> str:
        return f"{self.show(c[0])} {'<' if c[2] else '<='} {self.show(c[1])}"

    # -- adding constraints --------------------------------------------------

    def add(self, b: _Branch, c) -> None:
        if b.closed or b.occurs(c):
            return
        l, r, s = c
        b._node(l)
        b._node(r)
        if b.reaches(r, l, s):
            b.closed = True
        b.succ[l].append((r, s))
        b.cons.append(c)
        b.conset.add(c)
        if b.closed:
            return
        for side, x in ((0, l), (1, r)):
            if x[0] == 2:
                key = (x[1], x[2])
                known = b.rel_succ.setdefault(key, [])
                if x[3] not in known:
                    known.append(x[3])
                    for inst in b.reusers.get(key, ()):
                        b.queues[3].append(inst + (x[3],))
            elif x[0] == 0:
                self._schedule(b, c, side, x)

    def _schedule(self, b: _Branch, c, side, x) -> None:
        op = self.table.nodes[x[3]][0]
        i = x[2]
        if op == ATOM:
            return
        if op == NEG:
            prio = 0
        elif op == AND:
            prio = 1 if (side == 0) == (i == 1) else 0
        elif op == IMPL:
            prio = 0 if c[2] and ((side == 0) == (i == 1)) else 1
        elif (op == BOX) == (side == 0):
            prio = 2
        else:
            key = (x[1], i)
            inst = (c, side)
            b.reusers.setdefault(key, []).append(inst)
            for v in b.rel_succ.get(key, ()):
                b.queues[3].append(inst + (v,))
            return
        b.queues[prio].append((c, side))

    # -- rules ---------------------------------------------------------------

    def _rule(self, b: _Branch, inst):
        """Return ``(name, alternatives)``; each alternative is
        ``(constraints, key)`` where a non-None key names the witness world
        the alternative introduces."""
        c, side = inst[0], inst[1]
        l, r, s = c
        F, X = (l, r) if side == 0 else (r, l)
        _, w, i, fid = F
        op, a, bb = self.table.nodes[fid]
        rel = ("<" if s else "<=") if side == 0 else (">" if s else ">=")
        name = f"{_OPNAME[op]}{i}{rel}"
        fa = self.fa

        def same(y):  # y in the premise's position relative to X
            return (y, X, s) if side == 0 else (X, y, s)

        if op == NEG:
            return name, [([same(fa(w, 3 - i, a))], None)]
        A = fa(w, i, a)
        if op == AND:
            B = fa(w, i, bb)
            if (side == 0) == (i == 1):
                return name, [([same(A)], None), ([same(B)], None)]
            return name, [([same(A), same(B)], None)]
        if op == IMPL:
            B = fa(w, i, bb)
            if side == 0 and i == 1:
                if s:
                    return name, [([(B, X, True), (B, A, True)], None)]
                return name, [([(OS, X, False)], None), ([(X, OS, True), (B, X, False), (B, A, True)], None)]
            if side == 0:
                return name, [([(B, A, False)], None), ([(B, X, s)], None)]
            if i == 1:
                return name, [([(A, B, False)], None), ([(X, B, s)], None)]
            if s:
                return name, [([(X, B, True), (A, B, True)], None)]
            return name, [([(X, ZS, False)], None), ([(ZS, X, True), (X, B, False), (A, B, True)], None)]
        # modal
        if len(inst) == 3:
            v = inst[2]
            S = (2, w, i, v)
            sub = fa(v, i, a)
            if op == BOX:
                return name, [([(X, sub, s)], None), ([(S, sub, False)], None)]
            return name, [([(sub, X, s)], None), ([(S, X, s)], None)]
        # One witness per (world, coordinate, modal formula): the successor
        # attaining the min (box) or max (dia) serves every premise about it.
        key = (w, i, fid)
        n = b.witness.get(key)
        if n is None:
            n = b.nworlds
        else:
            key = None
        S = (2, w, i, n)
        sub = fa(n, i, a)
        if op == BOX:
            if s:
                return name, [([(sub, S, True), (sub, X, True)], key)]
            return name, [([(OS, X, False)], None), ([(X, OS, True), (sub, S, True), (sub, X, False)], key)]
        return name, [([(X, S, s), (X, sub, s)], key)]

    # -- search --------------------------------------------------------------

    def _new_branch(self, parent: _Branch | None = None) -> _Branch:
        bid = f"b{self.branches}"
        self.branches += 1
        if self.branches > self.max_branches:
            raise ResourceLimitExceeded(f"more than {self.max_branches} branches")
        return _Branch(bid) if parent is None else parent.copy(bid)

    def _log(self, name, b, premise, alts):
        if self.transcript is None:
            return
        concl = " / ".join(", ".join(self.show_c(c) for c in cs) for cs, _ in alts)
        self.transcript.append(f"{name} | {self.show_c(premise)} | {concl} | {b.bid}")

    def _saturate(self, b: _Branch):
        """Expand ``b`` until it closes, completes or needs to branch.

        Returns None (closed), [] (complete and open) or the list of children.
        """
        while not b.closed:
            inst = None
            for q in b.queues:
                if q:
                    inst = q.popleft()
                    break
            if inst is None:
                return []
            c = inst[0]
            if not c[2] and (c[0], c[1], True) in b.conset:
                continue  # the strict twin fires instead
            name, alts = self._rule(b, inst)
            if any(fresh is None and all(b.occurs(x) for x in cs) for cs, fresh in alts):
                continue
            self._log(name, b, c, alts)
            children = [b] if len(alts) == 1 else [b] + [self._new_branch(b) for _ in alts[1:]]
            for child, (cs, fresh) in zip(children, alts):
                if fresh is not None:
                    child.witness[fresh] = child.nworlds
                    child.nworlds += 1
                    if child.nworlds > self.max_states:
                        raise ResourceLimitExceeded(f"more than {self.max_states} states on a branch")
                for x in cs:
                    self.add(child, x)
            if len(children) > 1:
                return children
        return None

    def run(self, initial: Iterable) -> _Branch | None:
        """Search for a complete open branch; None when every branch closes."""
        root = self._new_branch()
        cons = [self.internal_c(c) for c in initial]
        root.nworlds = len(self.names)
        if root.nworlds > self.max_states:
            raise ResourceLimitExceeded(f"more than {self.max_states} states on a branch")
        for c in cons:
            self.add(root, c)
        stack = [root]
        while stack:
            b = stack.pop()
            out = self._saturate(b)
            if out is None:
                continue
            if not out:
                return b
            stack.extend(reversed(out))
        return None

    def internal_c(self, c: Constraint):
        return (self.internal(c.left), self.internal(c.right), bool(c.strict))

    # -- extraction ----------------------------------------------------------

    def snapshot(self, b: _Branch) -> Branch:
        return Branch(
            frozenset(Constraint(self.public(l), self.public(r), s) for l, r, s in b.cons),
            tuple(self.name(k) for k in range(b.nworlds)),
        )

    def extract(self, b: _Branch) -> tuple[KripkeModel, RealisationReport]:
        succ = {k: list(v) for k, v in b.succ.items()}
        comp, comps = _sccs(succ)
        strict_up = [False] * len(comps)
        for k, members in enumerate(comps):  # sinks first
            strict_up[k] = any(
                s or (comp[y] != k and strict_up[comp[y]]) for x in members for y, s in succ[x]
            )
        for x in succ:
            if x[0] == 2 and not strict_up[comp[x]]:
                succ[OS].append((x, False))
        comp, comps = _sccs(succ)
        order = range(len(comps) - 1, -1, -1)  # sources first
        atomic = [
            any(x[0] != 0 or self.table.nodes[x[3]][0] == ATOM for x in members) for members in comps
        ]
        below = [0] * len(comps)  # atomic classes <= C
        sbelow = [0] * len(comps)  # atomic classes < C
        for k in order:
            if atomic[k]:
                below[k] |= 1 << k
            for x in comps[k]:
                for y, s in succ[x]:
                    d = comp[y]
                    if d == k:
                        continue
                    below[d] |= below[k]
                    sbelow[d] |= sbelow[k] | (below[k] if s else 0)
        denom = sbelow[comp[OS]].bit_count()

        def value(x) -> Fraction:
            return Fraction(sbelow[comp[x]].bit_count(), denom)

        worlds = tuple(self.name(k) for k in range(b.nworlds))
        rels = {1: {}, 2: {}}
        val: dict = {}
        for x in succ:
            if x[0] == 2:
                rels[x[2]][(worlds[x[1]], worlds[x[3]])] = value(x)
            elif x[0] == 0:
                node = self.table.nodes[x[3]]
                if node[0] == ATOM and node[1] != TOP_ATOM:
                    key = (worlds[x[1]], node[1])
                    cur = val.get(key, [ZERO, ZERO])
                    cur[x[2] - 1] = value(x)
                    val[key] = cur
        model = KripkeModel(worlds, rels[1], rels[2], {k: tuple(v) for k, v in val.items()})
        report = self.realise(model, b.cons)
        report = RealisationReport(
            report.ok, report.checked, sum(atomic), sum(1 for x in succ if x[0] != 1 and (x[0] == 2 or self.table.nodes[x[3]][0] == ATOM)),
            report.violations,
        )
        if not report.ok:
            raise RealisationError("; ".join(report.violations[:5]))
        return model, report

    def realise(self, model: KripkeModel, cons: Sequence) -> RealisationReport:
        ev = Evaluator(model)
        index = {w: k for k, w in enumerate(model.worlds)}

        def val(x):
            if x[0] == 1:
                return Fraction(x[1])
            if x[0] == 2:
                return model.r(x[2], self.name(x[1]), self.name(x[3]))
            return ev.columns(self.table.forms[x[3]])[x[2] - 1][index[self.name(x[1])]]

        bad = []
        for c in cons:
            a, z = val(c[0]), val(c[1])
            if not (a < z if c[2] else a <= z):
                bad.append(f"{self.show_c(c)} fails with {fmt(a)} vs {fmt(z)}")
        return RealisationReport(not bad, len(cons), 0, 0, tuple(bad))


# ---------------------------------------------------------------------------
# public operations


def _engine(max_states, max_branches, transcript) -> Tableau:
    return Tableau(max_states, max_branches, transcript)


def expand(initial: Iterable[Constraint], *, max_states: int = DEFAULT_MAX_STATES,
           max_branches: int = DEFAULT_MAX_BRANCHES, transcript: list | None = None) -> Verdict:
    """Run the tableau from ``initial``.

    Proved means every branch closed. Otherwise the extracted model of the
    first complete open branch comes back, reporting the first labelled
    formula of ``initial`` (or 0 at the first world) as the witness.
    """
    initial = list(initial)
    t = _engine(max_states, max_branches, transcript)
    b = t.run(initial)
    if b is None:
        return Proved(t.branches)
    model, report = t.extract(b)
    world, coord, value = model.worlds[0], 1, ValuePair(ZERO, ZERO)
    for c in initial:
        for x in (c.left, c.right):
            if isinstance(x, FormulaAt):
                world, coord = x.world, x.coord
                value = Evaluator(model).pair(world, desugar(x.formula))
                break
        else:
            continue
        break
    return Countermodel(model, world, coord, value, report, t.snapshot(b), t.branches)


def close_check(b: Branch | Iterable[Constraint]) -> bool:
    """Whether a set of constraints is closed (contains a strict cycle)."""
    cons = b.constraints if isinstance(b, Branch) else b
    t = Tableau()
    succ: dict = {ZS: [(OS, True)], OS: []}
    for c in cons:
        l, r, s = t.internal_c(c)
        for n in (l, r):
            if n not in succ:
                succ[n] = [(OS, False)]
                succ[ZS].append((n, False))
        succ[l].append((r, s))
    return _graph_closed(succ)


def extract_model(b: Branch) -> tuple[KripkeModel, RealisationReport]:
    """Build the model of a complete open branch and check it realises ``b``."""
    t = Tableau()
    for w in b.worlds:
        t._world(w)
    ib = _Branch("b0")
    for c in sorted(b.constraints, key=str):
        ib_c = t.internal_c(c)
        ib._node(ib_c[0])
        ib._node(ib_c[1])
        ib.succ[ib_c[0]].append((ib_c[1], ib_c[2]))
        ib.cons.append(ib_c)
        ib.conset.add(ib_c)
    ib.nworlds = len(t.names)
    if _graph_closed(ib.succ):
        raise ValueError("branch is closed")
    return t.extract(ib)


def _check_mode(mode, allowed):
    if mode not in allowed:
        raise ValueError(f"mode must be one of {', '.join(allowed)}, not {mode!r}")


def prove(phi: Formula, mode: str = "strong", *, max_states: int = DEFAULT_MAX_STATES,
          max_branches: int = DEFAULT_MAX_BRANCHES, transcript: list | None = None) -> Verdict:
    """Decide pos (v1 = 1), neg (v2 = 0) or strong validity of ``phi``."""
    _check_mode(mode, ("pos", "neg", "strong"))
    phi = desugar(phi)
    coords = {"pos": (1,), "neg": (2,), "strong": (1, 2)}[mode]
    branches = 0
    for i in coords:
        t = _engine(max_states, max_branches, transcript)
        w0 = t.name(0)
        start = lt(FormulaAt(w0, 1, phi), Const(1)) if i == 1 else gt(FormulaAt(w0, 2, phi), Const(0))
        b = t.run([start])
        branches += t.branches
        if b is None:
            continue
        model, report = t.extract(b)
        value = Evaluator(model).pair(w0, phi)
        if not violates(value, "pos" if i == 1 else "neg"):
            raise RealisationError(f"extracted model does not falsify coordinate {i}: {value}")
        return Countermodel(model, w0, i, value, report, t.snapshot(b), branches)
    return Proved(branches)


def decide_sat(phi: Formula, mode: str = "pos1", *, max_states: int = DEFAULT_MAX_STATES,
               max_branches: int = DEFAULT_MAX_BRANCHES, transcript: list | None = None) -> SatResult:
    """Is there a model and world with v1(phi) = 1 (pos1), and also v2(phi) = 0 (strong)?"""
    _check_mode(mode, ("pos1", "strong"))
    phi = desugar(phi)
    t = _engine(max_states, max_branches, transcript)
    w0 = t.name(0)
    initial = [ge(FormulaAt(w0, 1, phi), Const(1))]
    if mode == "strong":
        initial.append(le(FormulaAt(w0, 2, phi), Const(0)))
    b = t.run(initial)
    if b is None:
        return SatResult(False, branches=t.branches)
    model, _ = t.extract(b)
    return SatResult(True, model, w0, t.branches)


def sat_reduction_formula(phi: Formula, mode: str = "pos1") -> Formula:
    """A formula that is pos-falsifiable exactly when ``phi`` is satisfiable.

    v1(~~(1 -< psi)) is 1 when v1(psi) < 1 and 0 when v1(psi) = 1. For
    strong satisfiability psi also carries ~neg phi, whose v1 is 1 exactly
    when v2(phi) = 0.
    """
    _check_mode(mode, ("pos1", "strong"))
    psi = phi if mode == "pos1" else And(phi, GNeg(Neg(phi)))
    return desugar(GNeg(GNeg(Coimpl(Top(), psi))))


def decide_sat_by_reduction(phi: Formula, mode: str = "pos1", **kw) -> SatResult:
    """Satisfiability via validity: prove the reduction formula in pos mode."""
    v = prove(sat_reduction_formula(phi, mode), "pos", **kw)
    if isinstance(v, Proved):
        return SatResult(False, branches=v.branches)
    return SatResult(True, v.model, v.world, v.branches)
