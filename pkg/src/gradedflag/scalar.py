"""Rational scalar type.

``Q`` is ``gmpy2.mpq`` when gmpy2 is importable and ``fractions.Fraction``
otherwise. Both are exact, always reduced, and share the numbers protocol,
so the rest of the package never inspects which one is in use.
"""

from fractions import Fraction

try:
    from gmpy2 import mpq as Q

    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - exercised only without gmpy2
    Q = Fraction
    HAVE_GMPY2 = False

ZERO = Q(0)
ONE = Q(1)


def scalar(x):
    """Coerce ints, ``"p/q"`` strings, Fractions and mpq values to ``Q``."""
    if isinstance(x, Q):
        return x
    if isinstance(x, str):
        return Q(Fraction(x.strip()))
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; use 'p/q' strings")
    return Q(x)


def to_str(x):
    """Canonical ``"p/q"`` (or ``"p"``) text for a scalar."""
    x = Q(x)
    if x.denominator == 1:
        return str(int(x.numerator))
    return f"{int(x.numerator)}/{int(x.denominator)}"
