"""Exact rational scalars.

Every cost, certificate and verdict value in this package is an exact
rational (``fractions.Fraction``; plain ``int`` is accepted anywhere a
rational is, since Python promotes mixed int/Fraction arithmetic exactly).
Floats are rejected at every parse boundary: linearizability is an
algebraic property and a single rounding step can flip a verdict.
"""

from __future__ import annotations

from fractions import Fraction

Rat = Fraction

#: Values accepted wherever an exact rational is expected.
RatLike = int | Fraction


def to_rat(value) -> Fraction:
    """Convert ``value`` to an exact rational.

    Accepts int, Fraction, and strings of the form "p/q", "p", or an exact
    decimal like "0.25". Floats and bools are rejected.
    """
    if isinstance(value, bool):
        raise ValueError(f"boolean is not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse rational from {value!r}: {exc}") from exc
    if isinstance(value, float):
        raise ValueError(
            f"float {value!r} rejected: use an integer or a 'p/q' string"
        )
    raise ValueError(f"cannot interpret {value!r} as a rational")


def rat_to_json(value: RatLike) -> int | str:
    """Canonical JSON form: integer when the denominator is 1, else "p/q"."""
    f = Fraction(value)
    if f.denominator == 1:
        return int(f)
    return f"{f.numerator}/{f.denominator}"


def format_rat(value: RatLike) -> str:
    f = Fraction(value)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"
