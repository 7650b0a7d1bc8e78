"""
Exact rational helpers
Costs, ratios and dual values are `fractions.Fraction` everywhere
"""

from fractions import Fraction
from functools import lru_cache

from modules.errors import NegativeCost, SchemaError


def to_cost(value, field='cost'):
    """
    Parse a cost given as an int, a Fraction or a "p/q" string.

    Floats are rejected: solver paths never see floating point.
    """
    if isinstance(value, bool):
        raise SchemaError("boolean is not a cost", field=field)
    if isinstance(value, Fraction):
        cost = value
    elif isinstance(value, int):
        cost = Fraction(value)
    elif isinstance(value, str):
        try:
            cost = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise SchemaError(f"cannot parse rational '{value}'", field=field)
        if '.' in value or 'e' in value.lower():
            raise SchemaError(f"decimal notation not allowed: '{value}'", field=field)
    else:
        raise SchemaError(f"unsupported cost type {type(value).__name__}", field=field)

    if cost < 0:
        raise SchemaError(f"negative cost {value}", field=field, cause=NegativeCost)
    return cost


def to_rational(value, field='value'):
    """Like `to_cost` but allows negative values (dual values, tampered files)"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise SchemaError(f"cannot parse rational '{value}'", field=field)


def fmt(value):
    """Exact "p/q" (or integer) form used in every machine-readable file"""
    return str(Fraction(value))


def fmt_human(value, digits=6):
    """Exact form plus a decimal approximation, for terminal output"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value)
    return f"{value} (~{float(value):.{digits}g})"


@lru_cache(maxsize=None)
def harmonic(k):
    """H(k) = 1 + 1/2 + ... + 1/k as an exact rational; H(0) = 0"""
    if k < 0:
        raise ValueError("harmonic number of a negative index")
    return sum((Fraction(1, i) for i in range(1, k + 1)), Fraction(0))
