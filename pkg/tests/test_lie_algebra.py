import pytest
from hypothesis import given
from hypothesis import strategies as st

from gradedflag.exact_linalg import Matrix, det
from gradedflag.lie_algebra import InvalidAlgebra, LieAlgebra
from gradedflag.scalar import Q

from conftest import entry

coords = st.lists(st.integers(-3, 3), min_size=3, max_size=3)


def test_sl2_brackets(sl2):
    L = sl2.algebra
    e, h, f = (L.basis_element(i) for i in range(3))
    assert L.bracket(h, e) == e * 2
    assert L.bracket(h, f) == f * -2
    assert L.bracket(e, f) == h


def test_sl2_killing(sl2):
    # ad-trace table computed independently from the bracket relations
    assert sl2.algebra.killing_form() == Matrix([[0, 0, 4], [0, 8, 0], [4, 0, 0]])
    assert det(sl2.algebra.killing_form()) == -128
    assert sl2.algebra.is_semisimple()


def test_killing_determinants():
    # B(x, y) = 2n tr(xy) - 2 tr(x) tr(y) on gl_n, evaluated independently
    assert det(entry("gl(2,2)").algebra.killing_form()) == 0
    assert det(entry("sl(2,2)").algebra.killing_form()) == 2 ** 47
    assert det(entry("abelian(3)").algebra.killing_form()) == 0


@given(coords, coords, coords)
def test_jacobi_and_antisymmetry_on_elements(a, b, c):
    L = entry("sl2").algebra
    x, y, z = (L.element(v) for v in (a, b, c))
    assert L.bracket(x, y) == -L.bracket(y, x)
    jac = L.bracket(x, L.bracket(y, z)) + L.bracket(y, L.bracket(z, x)) + L.bracket(z, L.bracket(x, y))
    assert jac.is_zero()


def test_broken_jacobi_reports_triple():
    # perturb [e, h] so that Jacobi fails on (e, h, f)
    structure = {(1, 0): [3, 0, 0], (0, 1): [-3, 0, 0], (1, 2): [0, 0, -2],
                 (2, 1): [0, 0, 2], (0, 2): [0, 1, 0], (2, 0): [0, -1, 0]}
    with pytest.raises(InvalidAlgebra) as exc:
        LieAlgebra(structure, labels=("e", "h", "f"))
    assert exc.value.report == [(0, 1, 2)]
    L = LieAlgebra(structure, labels=("e", "h", "f"), check=False)
    assert L.check_jacobi() == [(0, 1, 2)]


def test_antisymmetry_violation():
    with pytest.raises(InvalidAlgebra) as exc:
        LieAlgebra({(0, 1): [1, 0]}, dim=2)
    assert ("antisymmetry", 0, 1) in exc.value.report


def test_derivations_and_automorphisms(sl2):
    L = sl2.algebra
    assert L.is_derivation(L.ad((1, 2, 3)))
    assert not L.is_derivation(Matrix.identity(3))
    # the grading automorphism e -> 2e, f -> f/2
    g = Matrix.diagonal([2, 1, Q(1, 2)])
    assert L.is_automorphism(g)
    assert not L.is_automorphism(Matrix.diagonal([2, 1, 1]))


def test_center_of_gl():
    L = entry("gl(2,2)").algebra
    z = L.center()
    assert z.dim == 1
    ident = tuple(1 if i % 5 == 0 else 0 for i in range(16))
    assert z.contains(ident)
    assert entry("sl2").algebra.center().dim == 0


def test_format(sl2):
    assert sl2.algebra.format((1, 0, Q(-1, 2))) == "e - 1/2*f"
