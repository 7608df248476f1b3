import pytest

from gradedflag.exact_linalg import Matrix, Subspace
from gradedflag.grading import (Grading, GradingError, eq1_holds, euler_from_derivation, graded_bracket,
                                grading_from_derivation, grading_from_euler, validate_grading)
from gradedflag.scalar import Q

from conftest import entry

# layer dimensions from block counting: block (a, b) of sizes (s_a, s_b) sits in degree b - a
LAYER_DIMS = {
    "sl2": (1, 1, 1),
    "gl(1,1)": (1, 2, 1),
    "gl(2,2)": (4, 8, 4),
    "gl(2,1,1)": (2, 3, 6, 3, 2),
    "gl(1,1,1)": (1, 2, 3, 2, 1),
    "sl(2,2)": (4, 7, 4),
}


@pytest.mark.parametrize("name", sorted(LAYER_DIMS))
def test_layer_dims_and_validity(name):
    e = entry(name)
    G = e.grading
    assert tuple(G.layers[d].dim for d in G.degrees) == LAYER_DIMS[name]
    assert validate_grading(e.algebra, G) == []
    assert eq1_holds(G.derivation, G.k)


def test_sl2_euler(sl2):
    L, G = sl2.algebra, sl2.grading
    assert G.euler.coords == (0, Q(1, 2), 0)
    assert euler_from_derivation(L, G.derivation).coords == (0, Q(1, 2), 0)
    assert G.derivation == Matrix.diagonal([1, 0, -1])


def test_projection_and_degree(sl2):
    G = sl2.grading
    assert G.project_coords((1, 2, 3), 1) == (1, 0, 0)
    assert G.degree_of((0, 0, 5)) == -1
    assert G.degree_of((1, 0, 1)) is None
    assert G.in_plus((1, 0, 0), 1) and not G.in_plus((1, 1, 0), 1)
    assert G.in_minus((0, 0, 1), 1)


def test_from_derivation_roundtrip(gl211):
    L, G = gl211.algebra, gl211.grading
    G2 = grading_from_derivation(L, G.derivation, 2)
    assert G2.same_layers(G)
    with pytest.raises(GradingError):
        grading_from_derivation(L, G.derivation, 1)


def test_opposite(gl211):
    G = gl211.grading
    opp = G.opposite()
    assert opp.layers[2] == G.layers[-2]
    assert opp.derivation == -G.derivation
    assert opp.plus_filtration() == G.minus_filtration()


def test_validate_reports_bad_layers(sl2):
    L = sl2.algebra
    # e and f swapped into the wrong degrees relative to h: bracket rule fails
    n = 3
    bad = Grading(L, 1, {1: Subspace.span([(0, 1, 0)], n), 0: Subspace.span([(1, 0, 0)], n),
                         -1: Subspace.span([(0, 0, 1)], n)})
    checks = {r["check"] for r in validate_grading(L, bad)}
    assert "bracket" in checks
    overlap = Grading(L, 1, {1: Subspace.span([(1, 0, 0)], n), 0: Subspace.span([(1, 0, 0)], n)})
    assert validate_grading(L, overlap)[0]["check"] == "direct_sum"


def test_euler_mismatch(sl2):
    L = sl2.algebra
    G = grading_from_euler(L, (0, Q(1, 2), 0), 1)
    G.euler = L.element((0, 1, 0))
    assert [r["check"] for r in validate_grading(L, G)] == ["euler"]


def test_graded_bracket_matches_algebra(gl211):
    L, G = gl211.algebra, gl211.grading
    gb = graded_bracket(G)
    x = tuple(Q(i % 3 - 1) for i in range(16))
    y = tuple(Q((i * 7) % 5 - 2) for i in range(16))
    got = G.from_graded(gb.bracket(G.to_graded(x), G.to_graded(y)))
    assert got == L.bracket_coords(x, y)
