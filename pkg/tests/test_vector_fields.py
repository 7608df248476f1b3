import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gradedflag.elementary_group import GroupElement, denominators
from gradedflag.polynomial import Poly
from gradedflag.properties import rand_element, rand_plus, rand_word
from gradedflag.scalar import Q
from gradedflag.vector_fields import (PolyMap, closed_form_3graded, closed_form_5graded,
                                      closed_form_5graded_cases, domain_coords, realize, realize_numeric,
                                      transform_check, transform_sides)

from conftest import entry

ints = st.integers(-3, 3)


def unit(name, label):
    L = entry(name).algebra
    return tuple(1 if lab == label else 0 for lab in L.labels)


def test_sl2_f():
    e = entry("sl2")
    pm = realize(e.algebra, e.grading, (0, 0, 1), 1)
    t = Poly.var(1, 0)
    assert pm.polys == (-(t * t),)
    assert pm.format() == "-t^2 e"


def test_top_layer_is_constant(gl211):
    L, G = gl211.algebra, gl211.grading
    for v in G.layers[2].vectors:
        pm = realize(L, G, v, 1)
        assert pm.degree() == 0 and pm((0,) * 5) == domain_coords(G, v, 1)


def test_zero_map(gl211):
    pm = realize(gl211.algebra, gl211.grading, (0,) * 16, 2)
    assert pm.is_zero() and pm == PolyMap.zero(2, 2) and pm.format() == "0"


def test_value_at_origin(gl211):
    L, G = gl211.algebra, gl211.grading
    Y = tuple(range(16))
    y = G.to_graded(Y)
    for i in (1, 2):
        pm = realize(L, G, Y, i)
        assert pm((0,) * pm.input_dim) == tuple(y[j] for j in G.plus_block(i))


def test_five_graded_examples(gl211):
    L, G = gl211.algebra, gl211.grading
    t1, t2 = Poly.variables(2)
    # Y in g_0, i = 2: -[x, Y] with x = t1 E14 + t2 E24 and Y = E11
    pm = realize(L, G, unit("gl(2,1,1)", "E11"), 2)
    assert pm.polys == (t1, Poly(2))
    # Y in g_-2, i = 2: 1/2 [x, [x, Y]] with Y = E41
    pm = realize(L, G, unit("gl(2,1,1)", "E41"), 2)
    assert pm.polys == (-(t1 * t1), -(t1 * t2))
    assert pm.format() == "-t1^2 E14 - t1*t2 E24"


def test_closed_forms_all_layers(gl211):
    L, G = gl211.algebra, gl211.grading
    rng = random.Random(2)
    Y = rand_element(G, rng)
    cases = closed_form_5graded_cases(L, G, Y)
    assert len(cases) == 10
    for (i, d), pm in cases.items():
        assert realize(L, G, G.project_coords(Y, d), i) == pm
    one, two = closed_form_5graded(L, G, Y)
    assert one == realize(L, G, Y, 1) and two == realize(L, G, Y, 2)
    with pytest.raises(ValueError):
        closed_form_3graded(L, G, Y)


def test_closed_form_3graded(gl22):
    L, G = gl22.algebra, gl22.grading
    rng = random.Random(9)
    for _ in range(5):
        Y = rand_element(G, rng)
        assert realize(L, G, Y, 1) == closed_form_3graded(L, G, Y)
    with pytest.raises(ValueError):
        closed_form_5graded(L, G, Y)


@pytest.mark.parametrize("name", ["sl2", "gl(2,2)", "gl(2,1,1)"])
def test_symbolic_matches_numeric(name):
    e = entry(name)
    L, G = e.algebra, e.grading
    rng = random.Random(17)
    for _ in range(70):
        i = rng.randint(1, G.k)
        Y = rand_element(G, rng)
        pm = realize(L, G, Y, i)
        xg = [Q(rng.randint(-3, 3)) for _ in range(pm.input_dim)]
        x = G.from_graded(xg + [0] * (L.dim - len(xg)))
        assert pm(xg) == realize_numeric(L, G, Y, i, x)
        assert pm.degree() <= 2 * G.k


@given(st.lists(ints, min_size=3, max_size=3), st.lists(ints, min_size=3, max_size=3), ints, ints)
def test_linearity_sl2(a, b, p, q):
    e = entry("sl2")
    L, G = e.algebra, e.grading
    comb = tuple(p * x + q * y for x, y in zip(a, b))
    assert realize(L, G, comb, 1) == realize(L, G, a, 1).scale(p) + realize(L, G, b, 1).scale(q)


def test_transform_identity_and_random(gl211):
    L, G = gl211.algebra, gl211.grading
    rng = random.Random(21)
    ident = GroupElement.identity(G)
    x = rand_plus(G, rng)
    Y = rand_element(G, rng)
    for i in (1, 2):
        lhs, rhs = transform_sides(L, G, ident, Y, x, i)
        assert lhs == rhs == realize(L, G, Y, i, chart_layer=1)(domain_coords(G, x, 1))
    checked = 0
    while checked < 5:
        g, x = rand_word(G, rng), rand_plus(G, rng)
        try:
            assert all(transform_check(L, G, g, Y, x, i) for i in (1, 2))
        except ValueError:
            continue
        checked += 1


def test_transform_linear_case(sl2):
    # (g^{-1} v)~(x) = d_g(x) v for v in the plus part
    L, G = sl2.algebra, sl2.grading
    g = GroupElement(G, [("-", (0, 0, 2)), ("+", (1, 0, 0))])
    x, v = (3, 0, 0), (5, 0, 0)
    lhs = realize(L, G, g.inverse_matrix @ v, 1)(domain_coords(G, x, 1))
    assert lhs == denominators(G, g, x)[1] @ (5,)


def test_bad_layer(sl2):
    with pytest.raises(IndexError):
        realize(sl2.algebra, sl2.grading, (0, 0, 1), 2)
    with pytest.raises(ValueError):
        realize(sl2.algebra, sl2.grading, (0, 0, 1), 1)((1, 2))
