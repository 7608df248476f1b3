import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gradedflag.elementary_group import MINUS, PLUS, GroupElement, bergman
from gradedflag.filtration import is_transversal
from gradedflag.flag_geometry import (Inapplicable, WrongSide, canonical_kernel, canonical_kernel_matrix,
                                      chart_point, kernel_equivariance_check, kernel_transversality,
                                      killing_duality_check, opposite_chart_point, point, section_value,
                                      stabilizes, tangent_rep)
from gradedflag.properties import rand_pair, rand_parabolic, rand_word
from gradedflag.scalar import Q

from conftest import entry

E, F = (1, 0, 0), (0, 0, 1)
ints = st.integers(-3, 3)


def test_sl2_kernel_is_bergman(sl2):
    L, G = sl2.algebra, sl2.grading
    for y, value in ((F, 0), ((0, 0, -1), 4)):
        K = canonical_kernel(opposite_chart_point(G, y), chart_point(G, E), 1).matrix
        assert K[0, 0] == value == bergman(L, G, E, tuple(-a for a in y), 1).matrix[0, 0]


def test_kernel_sides(sl2):
    G = sl2.grading
    with pytest.raises(WrongSide):
        canonical_kernel(chart_point(G, E), chart_point(G, E), 1)
    with pytest.raises(WrongSide):
        section_value(E, opposite_chart_point(G, F), 1)


def test_base_pair_kernel(gl211):
    G = gl211.grading
    m, n = G.plus_filtration(), G.minus_filtration()
    for i in (1, 2):
        K = canonical_kernel_matrix(m, n, i)
        assert K.is_square() and K.nrows == G.plus_space(i).dim
    assert kernel_transversality(m, n)
    assert not kernel_transversality(m, m)


@given(ints, ints, ints, ints)
def test_kernel_predicate_matches_transversality_sl2(a, b, c, d):
    G = entry("sl2").grading
    m = point(G, MINUS, GroupElement(G, [(PLUS, (a, 0, 0)), (MINUS, (0, 0, b))]))
    n = point(G, PLUS, GroupElement(G, [(MINUS, (0, 0, c)), (PLUS, (d, 0, 0))]))
    assert kernel_transversality(m, n) == is_transversal(m.filtration, n.filtration)


@pytest.mark.parametrize("name", ["sl2", "gl(2,2)", "gl(2,1,1)"])
def test_equivariance(name):
    e = entry(name)
    rng = random.Random(3)
    for t in range(6):
        m, n = rand_pair(e, rng, boundary=t % 3 == 2)
        g = rand_word(e.grading, rng)
        for i in range(1, e.grading.k + 1):
            assert kernel_equivariance_check(g, m, n, i)


def test_killing_duality():
    sl2 = entry("sl2")
    assert killing_duality_check(sl2.algebra, sl2.grading, sl2.grading.minus_filtration(), 1)
    s = entry("sl(2,2)")
    rng = random.Random(0)
    n_pt = point(s.grading, PLUS, rand_word(s.grading, rng))
    assert killing_duality_check(s.algebra, s.grading, n_pt, 1)
    for name in ("gl(2,2)", "abelian(3)"):
        e = entry(name)
        with pytest.raises(Inapplicable):
            killing_duality_check(e.algebra, e.grading, e.grading.minus_filtration(), 1)


@pytest.mark.parametrize("side", [MINUS, PLUS])
def test_tangent_rep_homomorphism(gl211, side):
    G = gl211.grading
    rng = random.Random(8)
    base = G.minus_filtration() if side == MINUS else G.plus_filtration()
    for _ in range(3):
        p, q = rand_parabolic(G, rng, side), rand_parabolic(G, rng, side)
        assert stabilizes(p, base) and stabilizes(q, base)
        for i in (1, 2):
            for sign in (PLUS, MINUS):
                assert tangent_rep(p * q, i, sign).matrix == \
                    tangent_rep(p, i, sign).matrix @ tangent_rep(q, i, sign).matrix


def test_tangent_rep_requires_stabilizer(sl2):
    g = GroupElement(sl2.grading, [(PLUS, E), (MINUS, F)])
    with pytest.raises(ValueError):
        tangent_rep(g, 1)


def test_section_value_at_base(sl2):
    pt = point(sl2.grading, PLUS)
    assert section_value((Q(2), 5, 7), pt, 1) == (2,)
