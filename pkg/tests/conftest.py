from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

from paragodel.formula import And, Atom, Bot, Box, Coimpl, Dia, GNeg, Iff, Impl, Neg, Or, Top
from paragodel.model import KripkeModel, load_model

CORPUS = Path(__file__).parent / "corpus"

settings.register_profile("default", deadline=None, max_examples=100)
settings.register_profile("ci", deadline=None, max_examples=300)
settings.load_profile("default")


@pytest.fixture
def corpus():
    return CORPUS


@pytest.fixture
def sources():
    return load_model(CORPUS / "sources.json")


@pytest.fixture
def mirror():
    return load_model(CORPUS / "mirror.json")


@pytest.fixture
def sources_rminus1():
    return load_model(CORPUS / "sources_rminus1.json")


# -- strategies --------------------------------------------------------------

ATOMS = ("p", "q")


def core_formulas(max_leaves=8, atoms=ATOMS):
    """neg, &, ->, box, dia over a couple of atoms."""
    return st.recursive(
        st.sampled_from(atoms).map(Atom),
        lambda sub: st.one_of(
            sub.map(Neg), sub.map(Box), sub.map(Dia),
            st.builds(And, sub, sub), st.builds(Impl, sub, sub),
        ),
        max_leaves=max_leaves,
    )


def formulas(max_leaves=8, atoms=ATOMS):
    """The full surface language, sugar included."""
    leaf = st.one_of(st.sampled_from(atoms).map(Atom), st.just(Top()), st.just(Bot()))
    return st.recursive(
        leaf,
        lambda sub: st.one_of(
            sub.map(Neg), sub.map(GNeg), sub.map(Box), sub.map(Dia),
            st.builds(And, sub, sub), st.builds(Or, sub, sub), st.builds(Impl, sub, sub),
            st.builds(Coimpl, sub, sub), st.builds(Iff, sub, sub),
        ),
        max_leaves=max_leaves,
    )


def grid_values(den=4):
    return st.integers(0, den).map(lambda k: Fraction(k, den))


@st.composite
def models(draw, max_worlds=3, atoms=ATOMS, den=4, mono=False, crisp=False):
    n = draw(st.integers(1, max_worlds))
    ws = tuple(f"w{i}" for i in range(n))
    val_s = st.sampled_from((Fraction(0), Fraction(1))) if crisp else grid_values(den)
    rplus, rminus = {}, {}
    for u in ws:
        for v in ws:
            rplus[(u, v)] = draw(val_s)
            rminus[(u, v)] = rplus[(u, v)] if mono else draw(val_s)
    val = {(w, p): (draw(grid_values(den)), draw(grid_values(den))) for w in ws for p in atoms}
    return KripkeModel(ws, rplus, rminus, val)


# -- acceptance ledger -------------------------------------------------------

_ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line for an acceptance criterion."""

    def record(number: int, title: str, ok: bool, detail: str = ""):
        line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  ({detail})"
        _ACCEPTANCE[number] = line
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, 12):
        terminalreporter.write_line(_ACCEPTANCE.get(n, f"criterion {n:2d} ----  no result (errored or deselected)"))
