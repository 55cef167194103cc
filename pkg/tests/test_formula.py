import pytest
from hypothesis import given

from paragodel.formula import (
    TOP_ATOM, And, Atom, Bot, Box, Coimpl, Dia, GNeg, Iff, Impl, Neg, Or, ParseError, SourceError, Top,
    atoms, check_source, desugar, enumerate_core, is_core, metrics, parse, subformulas, to_text,
)

from conftest import formulas

p, q = Atom("p"), Atom("q")
ONE = Impl(Atom(TOP_ATOM), Atom(TOP_ATOM))


@pytest.mark.parametrize("text, tree", [
    ("box p -> box q", Impl(Box(p), Box(q))),
    ("neg box p -> box neg p", Impl(Neg(Box(p)), Box(Neg(p)))),
    ("~ box (p | ~p)", GNeg(Box(Or(p, GNeg(p))))),
    ("p -> q -> p", Impl(p, Impl(q, p))),
    ("p -< q -< p", Coimpl(p, Coimpl(q, p))),
    ("p & q | p", Or(And(p, q), p)),
    ("p | q -< p", Coimpl(Or(p, q), p)),
    ("p -< q -> p", Impl(Coimpl(p, q), p)),
    ("p -> q <-> q", Iff(Impl(p, q), q)),
    ("neg p & q", And(Neg(p), q)),
    ("1 -< 0", Coimpl(Top(), Bot())),
    ("box dia ~neg p", Box(Dia(GNeg(Neg(p))))),
])
def test_parse_examples(text, tree):
    assert parse(text) == tree


def test_unicode_spelling():
    assert parse("¬■p → ■¬p") == parse("neg box p -> box neg p")
    assert parse("∼■(p ∨ ∼p)") == parse("~box (p | ~p)")
    assert parse("𝟏 ⤙ (p ∧ q) ↔ ♦𝟎") == parse("1 -< (p & q) <-> dia 0")


@pytest.mark.parametrize("text, pos", [
    ("p &", 3),
    ("(p -> q", 7),
    ("p $ q", 2),
    ("box", 3),
    ("p q", 2),
    (")", 0),
    ("P", 0),
])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.pos == pos


def test_keywords_are_not_atoms():
    with pytest.raises(ParseError):
        parse("neg")
    assert parse("boxer") == Atom("boxer")


@given(formulas(max_leaves=10))
def test_print_parse_roundtrip(f):
    assert parse(to_text(f)) == f


@given(formulas(max_leaves=10))
def test_desugar_is_core_and_idempotent(f):
    d = desugar(f)
    assert is_core(d)
    assert desugar(d) == d


def test_desugar_expansions():
    assert desugar(Top()) == ONE
    assert desugar(Bot()) == Neg(ONE)
    assert desugar(Or(p, q)) == Neg(And(Neg(p), Neg(q)))
    assert desugar(Coimpl(p, q)) == Neg(Impl(Neg(q), Neg(p)))
    assert desugar(GNeg(p)) == Impl(p, Neg(ONE))
    assert desugar(Iff(p, q)) == And(Impl(p, q), Impl(q, p))


def test_metrics_examples():
    def md(f):
        m = metrics(f)
        return m.modal_count, m.modal_depth

    assert md(Box(p)) == (1, 1)
    assert md(Impl(Box(p), Dia(Box(q)))) == (3, 2)
    assert md(p) == (0, 0)
    # <-> duplicates its sides when expanded
    assert metrics(Iff(Box(p), q)).modal_count == 2
    assert metrics(Top()).atoms == frozenset()


def test_atoms_skip_reserved():
    assert atoms(desugar(parse("p -> 1"))) == {"p"}


def test_subformulas_preorder():
    assert [to_text(f) for f in subformulas(parse("box p & q"))] == ["box p & q", "box p", "p", "q"]


def test_check_source():
    assert check_source(parse("box (p -> q) -< dia p")) is not None
    with pytest.raises(SourceError):
        check_source(parse("neg box p"))
    with pytest.raises(SourceError):
        check_source(parse("p -< q"), (And, Or, Impl))


def test_enumerate_core_counts_and_order():
    two = enumerate_core(["p", "q"], 8, 2)
    sizes = [sum(1 for _ in subformulas(f)) for f in two]
    assert sizes == sorted(sizes)
    assert [sizes.count(n) for n in range(1, 9)] == [2, 6, 26, 110, 562, 2774, 14666, 77886]
    assert len(set(two)) == len(two)
    assert all(is_core(f) for f in two)
    assert all(metrics(f).modal_depth <= 2 for f in two[-2000:])
    assert enumerate_core(["p"], 2) == [p, Neg(p), Box(p), Dia(p)]


def test_enumerate_core_is_exhaustive_small():
    # brute force over all trees of size <= 4
    def trees(n):
        if n == 1:
            yield from (p, q)
            return
        for f in trees(n - 1):
            yield from (Neg(f), Box(f), Dia(f))
        for k in range(1, n - 1):
            for a in trees(k):
                for b in trees(n - 1 - k):
                    yield from (And(a, b), Impl(a, b))

    want = {f for n in range(1, 5) for f in trees(n) if metrics(f).modal_depth <= 1}
    assert set(enumerate_core(["p", "q"], 4, 1)) == want
