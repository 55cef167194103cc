"""Bounded brute-force model search over rational value grids.

Models with ``n`` worlds and values in {0, 1/N, ..., 1} are enumerated in a
fixed mixed-radix order. The parameters are grouped per world:

    R(w)   R+(w, v) for every v, then R-(w, v) for every v
    V(w)   (v1, v2) of every atom, atoms sorted

and the groups are ordered R(w0), ..., R(wn-1), V(w0), ..., V(wn-1), each
group counting lexicographically. A model's enumeration index is its
position in that order.

Evaluation is vectorised with numpy: every subformula at every world becomes
an integer array (grid numerators) with one axis per group, broadcast so that
it only materialises the groups it depends on. An atom at w only varies along
V(w); a box at w adds R(w); and so on. A formula of modal depth 1 checked at
one world never touches R of the other worlds.
"""
from __future__ import annotations

import ctypes
import hashlib
import itertools
import math
import sys
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

import numpy as np

from .formula import And, Atom, Box, Dia, Formula, Impl, Neg, atoms, desugar, metrics
from .model import KripkeModel, ValuePair, dumps_model, evaluate, violates

DEFAULT_BUDGET = 50_000_000
DEFAULT_WORLD_CAP = 2
BLOCK_CELLS = 1 << 21  # evaluate in slices of about this many models


@dataclass(frozen=True)
class SearchBounds:
    max_worlds: int = 2
    grid_denominator: int = 2
    crisp_only: bool = False
    crisp_minus_only: bool = False
    mono_relational_only: bool = False
    budget: int = DEFAULT_BUDGET  # largest array (cells) one evaluation may build
    symmetry: bool = True

    def __post_init__(self):
        if self.max_worlds < 1:
            raise ValueError("max_worlds must be at least 1")
        if not 1 <= self.grid_denominator <= 120:
            raise ValueError("grid_denominator must lie in 1..120")


def default_bounds(phi: Formula, cap: int = DEFAULT_WORLD_CAP, grid: int = 2) -> SearchBounds:
    """max_worlds = min(cap, k^(k+1)) with k the number of modalities (at least 1)."""
    k = metrics(phi).modal_count
    return SearchBounds(max_worlds=max(1, min(cap, k ** (k + 1))), grid_denominator=grid)


@dataclass(frozen=True, eq=False)
class SearchResult:
    status: str  # "found", "none" or "budget"
    model: KripkeModel | None = None
    world: str | None = None
    value: ValuePair | None = None
    worlds: int | None = None  # world count of the found model
    index: int | None = None  # enumeration index of the found model
    examined: int = 0  # models covered, counting every assignment of the searched spaces
    grid_denominator: int = 2

    @property
    def found(self) -> bool:
        return self.status == "found"

    def __iter__(self):
        # lets callers unpack ``model, world = result`` when found
        return iter((self.model, self.world))


@dataclass(frozen=True)
class VerdictCheck:
    agrees: bool
    conclusive: bool
    detail: str = ""

    def __bool__(self):
        return self.agrees


_TUNED = False


def _tune_allocator() -> None:
    # Large numpy temporaries are mmapped and handed back to the kernel on
    # free by default, so every operation pays for fresh page faults. Keeping
    # them on the heap makes the big evaluations several times faster.
    global _TUNED
    if _TUNED or not sys.platform.startswith("linux"):
        return
    _TUNED = True
    try:
        libc = ctypes.CDLL("libc.so.6")
        libc.mallopt(-3, 1 << 30)  # M_MMAP_THRESHOLD
        libc.mallopt(-1, 1 << 31)  # M_TRIM_THRESHOLD
    except (OSError, AttributeError):
        pass


def _gimpl(a, b, N):
    return np.maximum(b, (a <= b).view(np.int8) * N)


def _gcoimpl(a, b):
    return a * (a > b)


# ---------------------------------------------------------------------------
# enumeration space


class _Space:
    def __init__(self, n: int, atom_names: Sequence[str], b: SearchBounds):
        self.n = n
        self.atoms = list(atom_names)
        self.N = N = b.grid_denominator
        levels = list(range(N + 1))
        crisp = [0, N]
        plus = crisp if b.crisp_only else levels
        minus = crisp if (b.crisp_only or b.crisp_minus_only) else levels
        self.mono = b.mono_relational_only
        if self.mono:
            rows = list(itertools.product(*([plus] * n)))
            rows = [r + r for r in rows]
        else:
            rows = list(itertools.product(*([plus] * n + [minus] * n)))
        self.rel = np.array(rows, dtype=np.int8).reshape(len(rows), 2 * n)
        vals = list(itertools.product(*([levels] * (2 * len(self.atoms)))))
        self.val = np.array(vals, dtype=np.int8).reshape(len(vals), 2 * len(self.atoms))
        self.sizes = [len(self.rel)] * n + [len(self.val)] * n
        self.total = math.prod(self.sizes)

    def axis_array(self, axis: int, column: np.ndarray) -> np.ndarray:
        shape = [1] * (2 * self.n)
        shape[axis] = len(column)
        return np.ascontiguousarray(column).reshape(shape)

    def atom(self, w: int, name: str, coord: int) -> np.ndarray:
        if name not in self.atoms:
            return np.zeros([1] * (2 * self.n), dtype=np.int8)
        col = 2 * self.atoms.index(name) + coord - 1
        return self.axis_array(self.n + w, self.val[:, col])

    def edge(self, w: int, coord: int, v: int, block: slice | None = None) -> np.ndarray:
        col = self.rel[:, (coord - 1) * self.n + v]
        return self.axis_array(w, col if block is None or w != 0 else col[block])

    def model(self, digits: Sequence[int]) -> KripkeModel:
        n, N = self.n, self.N
        names = tuple(f"w{k}" for k in range(n))
        rp, rm, val = {}, {}, {}
        for w in range(n):
            row = self.rel[digits[w]]
            for v in range(n):
                rp[(names[w], names[v])] = Fraction(int(row[v]), N)
                rm[(names[w], names[v])] = Fraction(int(row[n + v]), N)
            vrow = self.val[digits[n + w]]
            for k, a in enumerate(self.atoms):
                val[(names[w], a)] = (Fraction(int(vrow[2 * k]), N), Fraction(int(vrow[2 * k + 1]), N))
        return KripkeModel(names, rp, rm, val)


# ---------------------------------------------------------------------------
# vectorised evaluation


class _Vec:
    """Evaluator over one slice of the first axis (the R(w0) group).

    Values that do not depend on that axis are kept in ``static`` and shared
    by every slice; the rest live in the per-slice memo.
    """

    def __init__(self, space: _Space, block: slice | None = None, parent: "_Vec | None" = None):
        self.s = space
        self.N = np.int8(space.N)
        self.block = block
        self.memo: dict = {}
        self.static: dict = parent.static if parent else {}
        self.dmemo: dict = parent.dmemo if parent else {}

    def slice(self, lo: int, hi: int) -> "_Vec":
        return _Vec(self.s, slice(lo, hi), self)

    def deps(self, f: Formula, w: int) -> frozenset:
        """Axes the value of ``f`` at ``w`` depends on."""
        key = (f, w)
        hit = self.dmemo.get(key)
        if hit is not None:
            return hit
        n = self.s.n
        if isinstance(f, Atom):
            out = frozenset((n + w,)) if f.name in self.s.atoms else frozenset()
        elif isinstance(f, Neg):
            out = self.deps(f.sub, w)
        elif isinstance(f, (And, Impl)):
            out = self.deps(f.left, w) | self.deps(f.right, w)
        elif isinstance(f, (Box, Dia)):
            out = frozenset((w,)).union(*(self.deps(f.sub, v) for v in range(n)))
        else:
            raise TypeError(f"unexpected node {f!r}")
        self.dmemo[key] = out
        return out

    def cells(self, f: Formula, w: int) -> int:
        """Largest array built while evaluating ``f`` at ``w``."""
        best = 0
        stack, seen = [(f, w)], set()
        while stack:
            g, u = stack.pop()
            if (g, u) in seen:
                continue
            seen.add((g, u))
            best = max(best, math.prod(self.s.sizes[a] for a in self.deps(g, u)))
            if isinstance(g, (Box, Dia)):
                stack.extend((g.sub, v) for v in range(self.s.n))
            else:
                stack.extend((c, u) for c in g.children())
        return best

    def ev(self, f: Formula, w: int):
        key = (f, w)
        store = self.memo if 0 in self.deps(f, w) else self.static
        hit = store.get(key)
        if hit is not None:
            return hit
        N = self.N
        if isinstance(f, Atom):
            out = (self.s.atom(w, f.name, 1), self.s.atom(w, f.name, 2))
        elif isinstance(f, Neg):
            a1, a2 = self.ev(f.sub, w)
            out = (a2, a1)
        elif isinstance(f, And):
            (a1, a2), (b1, b2) = self.ev(f.left, w), self.ev(f.right, w)
            out = (np.minimum(a1, b1), np.maximum(a2, b2))
        elif isinstance(f, Impl):
            (a1, a2), (b1, b2) = self.ev(f.left, w), self.ev(f.right, w)
            out = (_gimpl(a1, b1, N), _gcoimpl(b2, a2))
        elif isinstance(f, Box):
            subs = [self.ev(f.sub, v) for v in range(self.s.n)]
            out = []
            for i in (1, 2):
                acc = None
                for v, sv in enumerate(subs):
                    term = _gimpl(self.s.edge(w, i, v, self.block), sv[i - 1], N)
                    acc = term if acc is None else np.minimum(acc, term)
                out.append(acc)
            out = tuple(out)
        elif isinstance(f, Dia):
            subs = [self.ev(f.sub, v) for v in range(self.s.n)]
            out = []
            for i in (1, 2):
                acc = None
                for v, sv in enumerate(subs):
                    term = np.minimum(self.s.edge(w, i, v, self.block), sv[i - 1])
                    acc = term if acc is None else np.maximum(acc, term)
                out.append(acc)
            out = tuple(out)
        else:
            raise TypeError(f"unexpected node {f!r}")
        store[key] = out
        return out


def _hit(v1, v2, N, target: str):
    if target == "pos":
        return v1 != N
    if target == "neg":
        return v2 != 0
    if target == "strong":
        return (v1 != N) | (v2 != 0)
    if target == "pos1":
        return v1 == N
    if target == "sat-strong":
        return (v1 == N) & (v2 == 0)
    raise ValueError(f"unknown target {target!r}")


def _first_index(mask: np.ndarray) -> tuple[int, ...] | None:
    flat = mask.reshape(-1)
    k = int(np.argmax(flat))
    if not flat[k]:
        return None
    digits = np.unravel_index(k, mask.shape)
    # axes of extent 1 were irrelevant: their lowest digit, 0, is the first hit
    return tuple(int(d) for d in digits)


def _search(phi: Formula, target: str, b: SearchBounds, transcript: list | None) -> SearchResult:
    _tune_allocator()
    f = desugar(phi)
    names = sorted(atoms(f))
    examined = 0
    for n in range(1, b.max_worlds + 1):
        space = _Space(n, names, b)
        vec = _Vec(space)
        worlds = [0] if b.symmetry else list(range(n))
        need = max(vec.cells(f, w) for w in worlds)
        if need > b.budget:
            if transcript is not None:
                transcript.append(f"{n}:* | - | budget exceeded ({need} cells > {b.budget})")
            return SearchResult("budget", examined=examined, grid_denominator=b.grid_denominator)
        first = space.sizes[0]
        per_row = max(1, need // first) if any(0 in vec.deps(f, w) for w in worlds) else need
        step = max(1, BLOCK_CELLS // per_row)
        digits = None
        for lo in range(0, first, step):
            part = vec.slice(lo, min(first, lo + step))
            masks = [_hit(*part.ev(f, w), part.N, target) for w in worlds]
            mask = masks[0]
            for m in masks[1:]:
                mask = mask | m
            digits = _first_index(np.asarray(mask))
            if digits is not None:
                digits = (digits[0] + lo,) + digits[1:]
                local = (digits[0] - lo if mask.shape[0] > 1 else 0,) + digits[1:]
                world = next(w for w, m in zip(worlds, masks) if np.broadcast_to(m, mask.shape)[local])
                break
            if mask.shape[0] == 1:
                break  # the mask ignores the sliced axis: later slices repeat it
        if digits is None:
            examined += space.total
            if transcript is not None:
                transcript.append(f"{n}:* | - | none ({space.total} models)")
            continue
        index = int(np.ravel_multi_index(digits, space.sizes))
        model = space.model(digits)
        name = model.worlds[world]
        value = evaluate(model, name, f)
        examined += index + 1
        if transcript is not None:
            h = hashlib.sha256(dumps_model(model).encode()).hexdigest()[:12]
            transcript.append(f"{n}:{index} | {h} | {'countermodel' if target in ('pos', 'neg', 'strong') else 'model'}")
        return SearchResult("found", model, name, value, n, index, examined, b.grid_denominator)
    return SearchResult("none", examined=examined, grid_denominator=b.grid_denominator)


# ---------------------------------------------------------------------------
# public operations


def search_countermodel(phi: Formula, mode: str = "strong", bounds: SearchBounds | None = None,
                        transcript: list | None = None) -> SearchResult:
    """First model (in enumeration order) with a world where ``phi`` fails ``mode``."""
    if mode not in ("pos", "neg", "strong"):
        raise ValueError(f"mode must be pos, neg or strong, not {mode!r}")
    b = bounds or default_bounds(phi)
    res = _search(phi, mode, b, transcript)
    if res.found and not violates(res.value, mode):
        raise AssertionError(f"oracle model does not replay: {res.value}")
    return res


def search_satisfying(phi: Formula, mode: str = "pos1", bounds: SearchBounds | None = None,
                      transcript: list | None = None) -> SearchResult:
    """First model with a world where v1(phi) = 1 (pos1), and also v2(phi) = 0 (strong)."""
    if mode not in ("pos1", "strong"):
        raise ValueError(f"mode must be pos1 or strong, not {mode!r}")
    b = bounds or default_bounds(phi)
    res = _search(phi, "pos1" if mode == "pos1" else "sat-strong", b, transcript)
    if res.found:
        ok = res.value.pos == 1 and (mode == "pos1" or res.value.neg == 0)
        if not ok:
            raise AssertionError(f"oracle model does not replay: {res.value}")
    return res


def verify_verdict(phi: Formula, mode: str, verdict, bounds: SearchBounds | None = None) -> VerdictCheck:
    """Cross-check a tableau verdict.

    Countermodels are replayed through the evaluator; Proved verdicts are
    checked by searching for a countermodel within ``bounds``.
    """
    from .tableau import Countermodel, Proved

    if isinstance(verdict, Countermodel):
        m = verdict.model
        if verdict.world not in m.worlds:
            return VerdictCheck(False, True, f"witness world {verdict.world} is not in the model")
        value = evaluate(m, verdict.world, phi)
        coord_mode = "pos" if verdict.coordinate == 1 else "neg"
        if value != verdict.value:
            return VerdictCheck(False, True, f"claimed {verdict.value}, evaluator gives {value}")
        if mode != "strong" and coord_mode != mode:
            return VerdictCheck(False, True, f"witness coordinate {verdict.coordinate} does not match mode {mode}")
        if not violates(value, coord_mode):
            return VerdictCheck(False, True, f"value {value} does not falsify coordinate {verdict.coordinate}")
        return VerdictCheck(True, True, f"evaluator confirms {value} at {verdict.world}")
    if isinstance(verdict, Proved):
        res = search_countermodel(phi, mode, bounds)
        if res.status == "budget":
            return VerdictCheck(True, False, "search budget exceeded")
        if res.found:
            return VerdictCheck(False, True, f"oracle countermodel at {res.world} with value {res.value}")
        return VerdictCheck(True, True, f"no countermodel among {res.examined} models")
    raise TypeError(f"not a verdict: {verdict!r}")


def monotonicity_rule_check(phi: Formula, chi: Formula, bounds: SearchBounds | None = None,
                            mode: str = "strong") -> VerdictCheck:
    """From phi -> chi infer box phi -> box chi and dia phi -> dia chi, within bounds."""
    b = bounds or SearchBounds()
    premise = search_countermodel(Impl(phi, chi), mode, b)
    if premise.status == "budget":
        return VerdictCheck(True, False, "premise search budget exceeded")
    if premise.found:
        return VerdictCheck(True, True, "premise has a countermodel; nothing to check")
    for k in (Box, Dia):
        res = search_countermodel(Impl(k(phi), k(chi)), mode, b)
        if res.status == "budget":
            return VerdictCheck(True, False, f"{k.__name__.lower()} conclusion search budget exceeded")
        if res.found:
            return VerdictCheck(False, True, f"{k.__name__.lower()} conclusion fails at {res.world}")
    return VerdictCheck(True, True, "both conclusions survive the search")


# ---------------------------------------------------------------------------
# tableau/oracle agreement over an exhaustive suite


@dataclass
class AgreementReport:
    formulas: int = 0
    proved: int = 0
    countermodels: int = 0
    oracle_scans: int = 0
    inconclusive: int = 0
    small_countermodels: int = 0  # extracted models within the oracle's world bound
    disagreements: list = None

    def __post_init__(self):
        if self.disagreements is None:
            self.disagreements = []


def run_agreement(formulas, mode: str = "strong", bounds: SearchBounds | None = None,
                  progress=None) -> AgreementReport:
    """prove() every formula; replay countermodels through the evaluator and
    search for countermodels to every Proved formula within ``bounds``."""
    from .formula import to_text
    from .tableau import Countermodel, prove

    b = bounds or SearchBounds(max_worlds=2, grid_denominator=2)
    rep = AgreementReport()
    for k, phi in enumerate(formulas):
        rep.formulas += 1
        v = prove(phi, mode)
        if isinstance(v, Countermodel):
            rep.countermodels += 1
            rep.small_countermodels += len(v.model.worlds) <= b.max_worlds
            check = verify_verdict(phi, mode, v)
        else:
            rep.proved += 1
            rep.oracle_scans += 1
            check = verify_verdict(phi, mode, v, b)
        if not check.conclusive:
            rep.inconclusive += 1
        if not check.agrees:
            rep.disagreements.append((to_text(phi), type(v).__name__, check.detail))
        if progress is not None:
            progress(k, phi, v, check)
    return rep
