"""Parsing and printing of exact rationals as ``"p/q"`` strings."""

from fractions import Fraction
import re

from .errors import ValidationError

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(value, where="value"):
    """Read an int or a ``"p/q"`` string. Floats are refused (not exact)."""
    if isinstance(value, bool):
        raise ValidationError(f"{where}: expected a rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        m = _RATIONAL.match(value)
        if m:
            den = int(m.group(2)) if m.group(2) is not None else 1
            if den == 0:
                raise ValidationError(f"{where}: zero denominator in {value!r}")
            return Fraction(int(m.group(1)), den)
    raise ValidationError(f"{where}: malformed rational {value!r}")


def format_rational(x):
    return str(Fraction(x))


def frac_mod1(x):
    """Representative of ``x`` in [0, 1)."""
    x = Fraction(x)
    return x - (x.numerator // x.denominator)
