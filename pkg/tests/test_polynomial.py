from hypothesis import given
from hypothesis import strategies as st

from gradedflag.polynomial import Poly
from gradedflag.scalar import Q

terms = st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(-3, 3), max_size=4)
points = st.tuples(st.integers(-3, 3), st.integers(-3, 3))


def test_canonical_zero():
    p = Poly(2, {(1, 0): 0})
    assert not p and p.terms == {} and p == Poly(2)
    assert p.degree() == -1


def test_format():
    t1, t2 = Poly.variables(2)
    p = t1 * t1 * Q(-1) + t2 * Q(1, 2) + 3
    assert p.format(["a", "b"]) == "3 + 1/2*b - a^2"


@given(terms, terms, points)
def test_ring_homomorphism(a, b, x):
    p, q = Poly(2, a), Poly(2, b)
    assert (p * q)(x) == p(x) * q(x)
    assert (p + q)(x) == p(x) + q(x)
    assert (p - q)(x) == p(x) - q(x)


@given(terms, terms)
def test_commutative(a, b):
    p, q = Poly(2, a), Poly(2, b)
    assert p * q == q * p and p + q == q + p
    assert hash(p + q) == hash(q + p)
