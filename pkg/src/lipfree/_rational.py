from fractions import Fraction
from numbers import Rational

from .errors import InputError


def as_fraction(x):
    """Coerce an int, Fraction or "p/q" string to a Fraction; floats are rejected."""
    if isinstance(x, bool):
        raise InputError(f"not a rational: {x!r}")
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {x!r}") from exc
    raise InputError(f"not a rational: {x!r}")


def fmt(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def dyadic(k):
    """2**-k as an exact Fraction."""
    return Fraction(1, 1 << k) if k >= 0 else Fraction(1 << -k)
