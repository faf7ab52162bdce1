"""Exact rationals: parsing, canonical formatting, and the working number type.

All arithmetic uses ``gmpy2.mpq``; it compares and hashes equal to
``fractions.Fraction``, so Fractions are accepted anywhere a rational is.
"""

from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq as Q

from .errors import ParseError

__all__ = ["Q", "to_rational", "fmt"]


def to_rational(x) -> Q:
    """Coerce ints, Fractions and strings like ``"3"``, ``"-1/2"`` to an exact rational.

    Floats are rejected: every value in this package is exact.
    """
    if isinstance(x, bool):
        raise ParseError(f"not a rational: {x!r}")
    if isinstance(x, Rational):
        return Q(x)
    if isinstance(x, str):
        try:
            return Q(Fraction(x.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational: {x!r}") from exc
    raise ParseError(f"not a rational: {x!r}")


def fmt(q) -> str:
    """Canonical ``p/q`` string (``q > 0``, reduced, integers without ``/1``)."""
    return str(Q(q))
