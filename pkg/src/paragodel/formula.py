"""Formulas of the paraconsistent Gödel modal language.

Core connectives are ``neg`` (De Morgan negation), ``&``, ``->``, ``box`` and
``dia``. Everything else (``0``, ``1``, ``~``, ``|``, ``-<``, ``<->``) is sugar
that :func:`desugar` expands into the core.

Concrete syntax, tightest binding first::

    neg  ~  box  dia      prefix
    &                     left assoc
    |                     left assoc
    -<                    right assoc
    ->                    right assoc
    <->                   right assoc
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Sequence

__all__ = [
    "Formula", "Atom", "Neg", "And", "Impl", "Box", "Dia",
    "Top", "Bot", "Or", "Coimpl", "GNeg", "Iff",
    "TOP_ATOM", "ParseError", "SourceError",
    "parse", "to_text", "desugar", "is_core", "metrics", "Metrics",
    "subformulas", "atoms", "check_source",
]

# 1 := TOP_ATOM -> TOP_ATOM. Its value never matters, so one shared atom is enough.
TOP_ATOM = "_top"


class Formula:
    """Base class of all formula nodes. Nodes are immutable and hashable."""

    __slots__ = ()

    def __str__(self) -> str:
        return to_text(self)

    def children(self) -> tuple["Formula", ...]:
        return ()


def _node(cls):
    # frozen dataclass with a cached structural hash; formulas get hashed a lot
    names = [n for n in cls.__annotations__ if n != "_hash"]

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((cls.__name__,) + tuple(getattr(self, n) for n in names)))

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"{cls.__name__}({', '.join(repr(getattr(self, n)) for n in names)})"

    # __post_init__ must exist before dataclass() writes __init__
    cls.__post_init__ = __post_init__
    cls = dataclass(frozen=True, repr=False)(cls)
    cls.__hash__ = __hash__
    cls.__repr__ = __repr__
    return cls


@_node
class Atom(Formula):
    name: str
    _hash: int = field(init=False, compare=False, default=0)


@_node
class Neg(Formula):
    sub: Formula
    _hash: int = field(init=False, compare=False, default=0)

    def children(self):
        return (self.sub,)


@_node
class And(Formula):
    left: Formula
    right: Formula
    _hash: int = field(init=False, compare=False, default=0)

    def children(self):
        return (self.left, self.right)


@_node
class Impl(Formula):
    left: Formula
    right: Formula
    _hash: int = field(init=False, compare=False, default=0)

    def children(self):
        return (self.left, self.right)


@_node
class Box(Formula):
    sub: Formula
    _hash: int = field(init=False, compare=False, default=0)

    def children(self):
        return (self.sub,)


@_node
class Dia(Formula):
    sub: Formula
    _hash: int = field(init=False, compare=False, default=0)

    def children(self):
        return (self.sub,)


@_node
class Top(Formula):
    _hash: int = field(init=False, compare=False, default=0)


@_node
class Bot(Formula):
    _hash: int = field(init=False, compare=False, default=0)


@_node
class Or(Formula):
    left: Formula
    right: Formula
    _hash: int = field(init=False, compare=False, default=0)

    def children(self):
        return (self.left, self.right)


@_node
class Coimpl(Formula):
    left: Formula
    right: Formula
    _hash: int = field(init=False, compare=False, default=0)

    def children(self):
        return (self.left, self.right)


@_node
class GNeg(Formula):
    sub: Formula
    _hash: int = field(init=False, compare=False, default=0)

    def children(self):
        return (self.sub,)


@_node
class Iff(Formula):
    left: Formula
    right: Formula
    _hash: int = field(init=False, compare=False, default=0)

    def children(self):
        return (self.left, self.right)


CORE_TYPES = (Atom, Neg, And, Impl, Box, Dia)
UNARY = (Neg, GNeg, Box, Dia)
BINARY = (And, Or, Coimpl, Impl, Iff)


# ---------------------------------------------------------------------------
# lexing and parsing

class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class Token(NamedTuple):
    kind: str
    text: str
    pos: int


_UNICODE = {
    "¬": "neg", "∼": "~", "■": "box", "♦": "dia", "∧": "&", "∨": "|",
    "→": "->", "⤙": "-<", "↔": "<->", "𝟎": "0", "𝟏": "1",
}
_TOKEN_RE = re.compile(
    r"\s*(?:(?P<op><->|->|-<|[&|~()])|(?P<const>[01])(?![0-9A-Za-z_])"
    r"|(?P<ident>[a-z_][A-Za-z0-9_]*)|(?P<uni>[¬∼■♦∧∨→⤙↔𝟎𝟏]))"
)
_KEYWORDS = {"neg", "box", "dia"}


def tokenize(text: str) -> Iterator[Token]:
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            yield Token("end", "", pos)
            return
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unknown token {text[pos]!r}", pos)
        start = m.start(m.lastgroup)
        value = m.group(m.lastgroup)
        if m.lastgroup == "uni":
            value = _UNICODE[value]
            kind = "kw" if value in _KEYWORDS else ("const" if value in "01" else "op")
        elif m.lastgroup == "ident":
            kind = "kw" if value in _KEYWORDS else "ident"
        else:
            kind = m.lastgroup
        yield Token(kind, value, start)
        pos = m.end()


# binary operators: token -> (precedence, right associative, constructor)
_BINOPS = {
    "<->": (1, True, Iff),
    "->": (2, True, Impl),
    "-<": (3, True, Coimpl),
    "|": (4, False, Or),
    "&": (5, False, And),
}
_PREFIX = {"neg": Neg, "~": GNeg, "box": Box, "dia": Dia}
_UNARY_PREC = 6


class _Parser:
    def __init__(self, text: str):
        self.tokens = list(tokenize(text))
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def parse(self) -> Formula:
        result = self.expr(0)
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return result

    def expr(self, min_prec: int) -> Formula:
        left = self.prefix()
        while True:
            t = self.tok
            op = _BINOPS.get(t.text) if t.kind == "op" else None
            if op is None or op[0] < min_prec:
                return left
            prec, right_assoc, ctor = op
            self.advance()
            right = self.expr(prec if right_assoc else prec + 1)
            left = ctor(left, right)

    def prefix(self) -> Formula:
        t = self.advance()
        if t.kind == "end":
            raise ParseError("unexpected end of input", t.pos)
        if t.text in _PREFIX and t.kind in ("kw", "op"):
            return _PREFIX[t.text](self.expr(_UNARY_PREC))
        if t.kind == "ident":
            return Atom(t.text)
        if t.kind == "const":
            return Top() if t.text == "1" else Bot()
        if t.text == "(":
            inner = self.expr(0)
            close = self.advance()
            if close.text != ")":
                raise ParseError(f"expected ')' but found {close.text or 'end of input'!r}", close.pos)
            return inner
        raise ParseError(f"unexpected {t.text!r}", t.pos)


def parse(text: str) -> Formula:
    """Parse concrete syntax into a formula AST (sugar is kept)."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# printing

_PREFIX_TEXT = {Neg: "neg ", GNeg: "~", Box: "box ", Dia: "dia "}
_BINOP_TEXT = {Iff: "<->", Impl: "->", Coimpl: "-<", Or: "|", And: "&"}
_PREC = {cls: (prec, right) for _, (prec, right, cls) in _BINOPS.items()}


def _prec(phi: Formula) -> int:
    if isinstance(phi, BINARY):
        return _PREC[type(phi)][0]
    if isinstance(phi, UNARY):
        return _UNARY_PREC
    return _UNARY_PREC + 1


def to_text(phi: Formula) -> str:
    """Canonical text with minimal parentheses; ``parse(to_text(f)) == f``."""
    if isinstance(phi, Atom):
        return phi.name
    if isinstance(phi, Top):
        return "1"
    if isinstance(phi, Bot):
        return "0"
    if isinstance(phi, UNARY):
        inner = to_text(phi.sub)
        if _prec(phi.sub) < _UNARY_PREC:
            inner = f"({inner})"
        return _PREFIX_TEXT[type(phi)] + inner
    prec, right_assoc = _PREC[type(phi)]
    left, right = to_text(phi.left), to_text(phi.right)
    lp, rp = _prec(phi.left), _prec(phi.right)
    if lp < prec or (lp == prec and right_assoc):
        left = f"({left})"
    # -< is not associative; nested coimplications are always bracketed
    if rp < prec or (rp == prec and (not right_assoc or isinstance(phi, Coimpl))):
        right = f"({right})"
    return f"{left} {_BINOP_TEXT[type(phi)]} {right}"


# ---------------------------------------------------------------------------
# desugaring and structure

_ONE = Impl(Atom(TOP_ATOM), Atom(TOP_ATOM))
_ZERO = Neg(_ONE)


def desugar(phi: Formula) -> Formula:
    """Expand all sugar into Atom/Neg/And/Impl/Box/Dia. Idempotent."""
    cache: dict[Formula, Formula] = {}

    def go(f: Formula) -> Formula:
        hit = cache.get(f)
        if hit is not None:
            return hit
        if isinstance(f, Atom):
            out = f
        elif isinstance(f, Top):
            out = _ONE
        elif isinstance(f, Bot):
            out = _ZERO
        elif isinstance(f, (Neg, Box, Dia)):
            sub = go(f.sub)
            out = f if sub is f.sub else type(f)(sub)
        elif isinstance(f, (And, Impl)):
            a, b = go(f.left), go(f.right)
            out = f if (a is f.left and b is f.right) else type(f)(a, b)
        elif isinstance(f, GNeg):
            out = Impl(go(f.sub), _ZERO)
        elif isinstance(f, Or):
            out = Neg(And(Neg(go(f.left)), Neg(go(f.right))))
        elif isinstance(f, Coimpl):
            out = Neg(Impl(Neg(go(f.right)), Neg(go(f.left))))
        elif isinstance(f, Iff):
            a, b = go(f.left), go(f.right)
            out = And(Impl(a, b), Impl(b, a))
        else:
            raise TypeError(f"not a formula: {f!r}")
        cache[f] = out
        return out

    return go(phi)


def subformulas(phi: Formula) -> Iterator[Formula]:
    """All occurrences, pre-order."""
    stack = [phi]
    while stack:
        f = stack.pop()
        yield f
        stack.extend(reversed(f.children()))


def is_core(phi: Formula) -> bool:
    return all(isinstance(f, CORE_TYPES) for f in subformulas(phi))


def atoms(phi: Formula) -> frozenset[str]:
    return frozenset(f.name for f in subformulas(phi) if isinstance(f, Atom) and f.name != TOP_ATOM)


@dataclass(frozen=True)
class Metrics:
    modal_count: int
    modal_depth: int
    size: int
    atoms: frozenset[str]


def metrics(phi: Formula) -> Metrics:
    """Modal count/depth after desugaring, node count as written, and atoms.

    Desugaring adds no modalities but ``<->`` copies both sides, so the modal
    count is taken on the expanded tree. ``atoms`` excludes the reserved atom
    behind ``1``.
    """
    def depth(f: Formula) -> int:
        d = max((depth(c) for c in f.children()), default=0)
        return d + 1 if isinstance(f, (Box, Dia)) else d

    count = sum(isinstance(f, (Box, Dia)) for f in subformulas(desugar(phi)))
    size = sum(1 for _ in subformulas(phi))
    return Metrics(count, depth(phi), size, atoms(phi))


class SourceError(ValueError):
    pass


def check_source(phi: Formula, allowed: tuple[type, ...] | None = None) -> Formula:
    """Validate a formula of the single-relation source language.

    Source formulas have no De Morgan negation; ``box``/``dia`` in them stand
    for the ordinary (white) modalities. ``allowed`` narrows the connectives
    further (atoms, boxes and diamonds are always allowed).
    """
    for f in subformulas(phi):
        if isinstance(f, Neg):
            raise SourceError(f"De Morgan negation is not allowed in a source formula: {to_text(f)}")
        if allowed is not None and not isinstance(f, (Atom, Box, Dia) + allowed):
            raise SourceError(f"connective {type(f).__name__} not allowed here: {to_text(f)}")
    return phi


def enumerate_core(atom_names: Sequence[str], max_size: int, max_depth: int | None = None) -> list[Formula]:
    """Every core formula over ``atom_names`` with at most ``max_size`` nodes.

    Ordered by size, then modal depth, then constructor; modal depth is capped
    by ``max_depth`` when given.
    """
    by: dict[tuple[int, int], list[Formula]] = {}  # (size, depth) -> formulas
    cap = max_size if max_depth is None else max_depth
    for n in range(1, max_size + 1):
        for d in range(cap + 1):
            out: list[Formula] = []
            if n == 1 and d == 0:
                out.extend(Atom(a) for a in atom_names)
            if n > 1:
                out.extend(Neg(f) for f in by.get((n - 1, d), ()))
                if d > 0:
                    for k in (Box, Dia):
                        out.extend(k(f) for f in by.get((n - 1, d - 1), ()))
                for cls in (And, Impl):
                    for ln in range(1, n - 1):
                        rn = n - 1 - ln
                        for dl in range(d + 1):
                            for dr in range(d + 1):
                                if max(dl, dr) != d:
                                    continue
                                for a in by.get((ln, dl), ()):
                                    out.extend(cls(a, b) for b in by.get((rn, dr), ()))
            by[(n, d)] = out
    return [f for n in range(1, max_size + 1) for d in range(cap + 1) for f in by[(n, d)]]
