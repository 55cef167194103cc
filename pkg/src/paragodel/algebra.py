"""Exact arithmetic on the bi-Gödel algebra over [0, 1].

Values are :class:`fractions.Fraction` instances confined to the unit
interval. Nothing in the package ever touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

Rational01 = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def rational01(x) -> Fraction:
    """Coerce ``x`` to an exact value in [0, 1].

    Accepts ints, Fractions and strings such as ``"2/3"``, ``"0.7"`` or
    ``"1"``. Floats are rejected because they are not exact.
    """
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"refusing inexact value {x!r}; use a string or Fraction")
    if isinstance(x, str):
        try:
            value = Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational literal: {x!r}") from exc
    elif isinstance(x, Rational):
        value = Fraction(x)
    else:
        raise TypeError(f"cannot read {x!r} as a rational")
    if not 0 <= value <= 1:
        raise ValueError(f"{x!r} lies outside [0, 1]")
    return value


def fmt(x: Fraction) -> str:
    """Lowest-terms ``p/q`` (or ``0``/``1``)."""
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def meet(a: Fraction, b: Fraction) -> Fraction:
    return a if a <= b else b


def join(a: Fraction, b: Fraction) -> Fraction:
    return b if a <= b else a


def gimpl(a: Fraction, b: Fraction) -> Fraction:
    """Gödel implication: 1 if a <= b, else b."""
    return ONE if a <= b else b


def gcoimpl(a: Fraction, b: Fraction) -> Fraction:
    """Gödel coimplication: 0 if a <= b, else a."""
    return ZERO if a <= b else a
