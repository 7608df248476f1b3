import pytest

from gradedflag.exact_linalg import Matrix, Subspace
from gradedflag.filtration import (Filtration, NotTransversal, chart_coordinates, chart_embed,
                                   grading_from_transversal, is_filtration, is_transversal,
                                   nilpotent_exp, orbit_iteration, torsor_solve, u_of, unflatten)
from gradedflag.scalar import Q

from conftest import entry

# raising derivations are inner: ad of the plus part (gl adds no outer raising ones)
U_DIMS = {"sl2": 1, "gl(2,2)": 4, "gl(2,1,1)": 5, "sl(2,2)": 4, "gl(1,1,1,1,1)": 10}


def test_base_filtrations(sl2):
    G = sl2.grading
    plus, minus = G.plus_filtration(), G.minus_filtration()
    assert plus.dims() == (1, 2) and minus.dims() == (1, 2)
    assert is_filtration(sl2.algebra, plus) == []
    assert is_transversal(plus, minus)
    assert not is_transversal(plus, plus)
    assert plus.step(2).dim == 0 and plus.step(-1).dim == 3


def test_bad_filtration_reported(sl2):
    n = 3
    # h alone is not closed under [n_1, n_0] in the required way once n_1 = <h>
    f = Filtration(sl2.algebra, 1, {1: Subspace.span([(0, 1, 0)], n), 0: Subspace.span([(0, 1, 0)], n)})
    assert any(r["check"] == "bracket" for r in is_filtration(sl2.algebra, f))


@pytest.mark.parametrize("name", sorted(U_DIMS))
def test_u_dimension(name):
    e = entry(name)
    U = u_of(e.algebra, e.grading.plus_filtration())
    assert U.dim == U_DIMS[name]
    ad_plus = Subspace.span([e.algebra.ad(v).vec() for v in e.grading.plus_space(1).vectors],
                            e.algebra.dim ** 2)
    assert U == ad_plus


def test_sl2_u_is_ad_e(sl2):
    U = u_of(sl2.algebra, sl2.grading.plus_filtration())
    assert U == Subspace.span([sl2.algebra.ad((1, 0, 0)).vec()], 9)


def test_exp_of_e_on_f(sl2):
    # e^{ad e} f = f + [e, f] + 1/2 [e, [e, f]] = f + h - e
    X = sl2.algebra.ad((1, 0, 0))
    assert nilpotent_exp(X, 2) @ (0, 0, 1) == (-1, 1, 1)


def test_torsor_sl2(sl2):
    L, G = sl2.algebra, sl2.grading
    v = (Q(3, 7), 0, 0)
    Y, rounds = torsor_solve(L, G, chart_embed(L, G, v))
    assert Y == L.ad(v) and rounds == 1
    report = {}
    assert chart_coordinates(L, G, chart_embed(L, G, v), report).coords == v
    assert report["unique"]


def test_torsor_rejects_non_transversal(sl2):
    L, G = sl2.algebra, sl2.grading
    with pytest.raises(NotTransversal):
        torsor_solve(L, G, G.plus_filtration())


def test_grading_from_transversal(gl211):
    L, G = gl211.algebra, gl211.grading
    G2 = grading_from_transversal(L, G.plus_filtration(), G.minus_filtration(), with_euler=True)
    assert G2.same_layers(G)
    assert G2.euler is not None and L.ad(G2.euler) == G.derivation
    with pytest.raises(NotTransversal):
        grading_from_transversal(L, G.plus_filtration(), G.plus_filtration())


def test_orbit_iteration_gl211(gl211):
    L, G = gl211.algebra, gl211.grading
    U = u_of(L, G.plus_filtration())
    X = unflatten([sum(c * b[j] for c, b in zip((1, -2, 3, 1, 2), U.vectors)) for j in range(256)], 16)
    Y, rounds = orbit_iteration(G.derivation, X, 2)
    assert rounds <= 5
    assert nilpotent_exp(Y, 4) @ G.derivation @ nilpotent_exp(-Y, 4) == G.derivation + X


def test_nilpotent_exp_requires_nilpotency():
    from gradedflag.filtration import NotNilpotent

    with pytest.raises(NotNilpotent):
        nilpotent_exp(Matrix([[1, 0], [0, 0]]), 3)
