"""Points of the flag geometry, tangent representations and the canonical kernel.

A point on the ``+`` side is ``g · n-`` and a point on the ``-`` side is
``g · n+``, where ``g`` is the witnessing group element. Quotients
``g / n_j`` are represented on the complement spanned by the standard basis
vectors at the non-pivot positions of ``n_j``; subspaces use their canonical
echelon basis. These frames depend only on the subspaces, so matrix
identities between them are honest equalities.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .elementary_group import (MINUS, PLUS, GroupElement, LayerOperator, codenominators,
                               denominators)
from .exact_linalg import Matrix, Subspace, det, invert
from .filtration import Filtration
from .grading import Grading
from .lie_algebra import Element, LieAlgebra, coords_of
from .scalar import ZERO


class WrongSide(ValueError):
    pass


class Inapplicable(ValueError):
    pass


@dataclass(frozen=True)
class GeometryPoint:
    side: str
    filtration: Filtration
    witness: GroupElement

    @property
    def grading(self) -> Grading:
        return self.witness.grading

    def translate(self, g: GroupElement) -> "GeometryPoint":
        return GeometryPoint(self.side, self.filtration.apply(g.matrix), g * self.witness)


def base_filtration(G0: Grading, side: str) -> Filtration:
    if side == PLUS:
        return G0.minus_filtration()
    if side == MINUS:
        return G0.plus_filtration()
    raise ValueError(f"side must be '+' or '-', got {side!r}")


def point(G0: Grading, side: str, witness: Optional[GroupElement] = None) -> GeometryPoint:
    witness = witness or GroupElement.identity(G0)
    return GeometryPoint(side, base_filtration(G0, side).apply(witness.matrix), witness)


def chart_point(G0: Grading, x) -> GeometryPoint:
    """``e^{ad x} · n-`` for ``x`` in n+_1."""
    return point(G0, PLUS, GroupElement(G0, [(PLUS, x)]))


def opposite_chart_point(G0: Grading, y) -> GeometryPoint:
    """``e^{ad y} · n+`` for ``y`` in n-_1."""
    return point(G0, MINUS, GroupElement(G0, [(MINUS, y)]))


def act_on_filtration(g: GroupElement, f: Filtration) -> Filtration:
    return f.apply(g.matrix)


def stabilizes(g: GroupElement, f: Filtration) -> bool:
    return f.apply(g.matrix) == f


# representations of the parabolics


def tangent_rep(p: GroupElement, i: int, sign: str = PLUS) -> LayerOperator:
    """``rho+_i(p) = d_p(0)_i^{-1}`` or ``rho-_i(p) = c_p(0)_i`` for ``p`` fixing a base filtration."""
    G0 = p.grading
    if not (stabilizes(p, G0.minus_filtration()) or stabilizes(p, G0.plus_filtration())):
        raise ValueError("element does not stabilize a base filtration")
    zero = (ZERO,) * G0.algebra.dim
    if sign == PLUS:
        m = invert(denominators(G0, p, zero)[i])
    elif sign == MINUS:
        m = codenominators(G0, p, zero)[i]
    else:
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    return LayerOperator(i, sign, m)


def section_value(Y, pt: GeometryPoint, i: int) -> tuple:
    """``pr_{n+_i}(g^{-1} Y)`` for the witness ``g``, in graded coordinates of n+_i."""
    if pt.side != PLUS:
        raise WrongSide("sections are evaluated at points of the + side")
    G0 = pt.grading
    y = G0.to_graded(pt.witness.inverse_matrix @ coords_of(Y))
    return tuple(y[j] for j in G0.plus_block(i))


def tangent_vector(pt: GeometryPoint, coords: Sequence, i: int) -> tuple:
    """``g x mod g n-_{-i+1}`` in quotient coordinates of the point's tangent space."""
    G0 = pt.grading
    n = G0.algebra.dim
    full = list(coords) + [ZERO] * (n - len(coords))
    v = pt.witness.matrix @ G0.from_graded(full)
    return quotient_coords(pt.filtration.step(1 - i), v)


# canonical frames


def complement_indices(s: Subspace) -> list:
    piv = set(s.pivots)
    return [j for j in range(s.ambient_dim) if j not in piv]


def quotient_coords(s: Subspace, v) -> tuple:
    """Coordinates of ``v mod s`` on the standard complement of ``s``."""
    r = s.reduce(v)
    return tuple(r[j] for j in complement_indices(s))


def quotient_map(source: Subspace, modulus: Subspace) -> Matrix:
    """Matrix of ``source -> g / modulus`` in canonical frames."""
    cols = [quotient_coords(modulus, b) for b in source.vectors]
    return Matrix.from_columns(cols, source.ambient_dim - modulus.dim)


def canonical_kernel_matrix(m: Filtration, n: Filtration, i: int) -> Matrix:
    """``K_{n,m}``: ``m_i -> g / n_{-i+1}`` in canonical frames."""
    return quotient_map(m.step(i), n.step(1 - i))


@dataclass(frozen=True)
class KernelMap:
    i: int
    source: GeometryPoint
    target: GeometryPoint
    matrix: Matrix


def canonical_kernel(m_pt: GeometryPoint, n_pt: GeometryPoint, i: int) -> KernelMap:
    """``K^(i)_{n,m}`` in witness frames.

    With ``m = h · n+`` and ``n = g · n-`` the source ``m_i`` is coordinatized
    by ``h`` applied to n+_i, and ``g / n_{-i+1}`` by ``g`` applied to n+_i,
    so the matrix is ``pr_{n+_i} g^{-1} h`` restricted to n+_i.
    """
    if m_pt.side != MINUS or n_pt.side != PLUS:
        raise WrongSide("kernel needs a - side source and a + side target")
    G0 = n_pt.grading
    rel = n_pt.witness.inverse() * m_pt.witness
    zero = (ZERO,) * G0.algebra.dim
    return KernelMap(i, m_pt, n_pt, denominators(G0, rel.inverse(), zero)[i])


def canonical_kernel_reverse(m_pt: GeometryPoint, n_pt: GeometryPoint, i: int) -> Matrix:
    """``K^(i)_{m,n}``: ``n_i -> g / m_{-i+1}`` in witness frames, ``pr_{n-_i} h^{-1} g``."""
    G0 = n_pt.grading
    rel = m_pt.witness.inverse() * n_pt.witness
    zero = (ZERO,) * G0.algebra.dim
    return codenominators(G0, rel, zero)[i]


def kernel_transversality(m_pt, n_pt) -> bool:
    """Whether every ``K^(i)_{n,m}`` and ``K^(i)_{m,n}`` is invertible.

    Accepts geometry points or bare filtrations; the kernels are taken in
    canonical frames.
    """
    m = m_pt.filtration if isinstance(m_pt, GeometryPoint) else m_pt
    n = n_pt.filtration if isinstance(n_pt, GeometryPoint) else n_pt
    for i in range(1, m.k + 1):
        for a, b in ((m, n), (n, m)):
            K = canonical_kernel_matrix(a, b, i)
            if not K.is_square() or det(K) == 0:
                return False
    return True


def _frame_change(s: Subspace, t: Subspace, g: Matrix) -> Matrix:
    """Matrix of ``Y -> g Y`` from ``s`` to ``t = g s`` in echelon frames."""
    cols = [t.coordinates(g @ b) for b in s.vectors]
    if any(c is None for c in cols):
        raise ValueError("image does not lie in the target subspace")
    return Matrix.from_columns(cols, t.dim)


def _quotient_change(s: Subspace, t: Subspace, g: Matrix) -> Matrix:
    """Matrix of ``Y mod s -> g Y mod t`` on standard complements."""
    n = s.ambient_dim
    cols = []
    for j in complement_indices(s):
        e = tuple(1 if r == j else 0 for r in range(n))
        cols.append(quotient_coords(t, g @ e))
    return Matrix.from_columns(cols, n - t.dim)


def kernel_equivariance_sides(g: GroupElement, m: Filtration, n: Filtration, i: int):
    """``(K_{gn,gm}, T_n g · K_{n,m} · (T'_m g)^{-1})`` in canonical frames."""
    gm, gn = m.apply(g.matrix), n.apply(g.matrix)
    lhs = canonical_kernel_matrix(gm, gn, i)
    t_prime = _frame_change(m.step(i), gm.step(i), g.matrix)
    t = _quotient_change(n.step(1 - i), gn.step(1 - i), g.matrix)
    rhs = t @ canonical_kernel_matrix(m, n, i) @ invert(t_prime)
    return lhs, rhs


def kernel_equivariance_check(g: GroupElement, m_pt, n_pt, i: int) -> bool:
    m = m_pt.filtration if isinstance(m_pt, GeometryPoint) else m_pt
    n = n_pt.filtration if isinstance(n_pt, GeometryPoint) else n_pt
    lhs, rhs = kernel_equivariance_sides(g, m, n, i)
    return lhs == rhs


def killing_duality_check(L: LieAlgebra, G0: Grading, n_pt, i: int) -> bool:
    """Nondegeneracy of the Killing pairing ``n_i x g / n_{-i+1}``."""
    B = L.killing_form()
    if det(B) == 0:
        raise Inapplicable("Killing form is degenerate")
    n = n_pt.filtration if isinstance(n_pt, GeometryPoint) else n_pt
    sub, mod = n.step(i), n.step(1 - i)
    for a in sub.vectors:
        Ba = B @ a
        if any(sum((x * y for x, y in zip(Ba, b)), ZERO) for b in mod.vectors):
            return False
    comp = complement_indices(mod)
    if len(comp) != sub.dim:
        return False
    pairing = Matrix._wrap([[(B @ a)[j] for j in comp] for a in sub.vectors], len(comp))
    return det(pairing) != 0


def bundle_transport_sides(g1: GroupElement, g2: GroupElement, coords: Sequence, i: int):
    """For witnesses ``g1, g2`` of one point and ``p = g1^{-1} g2``: the tangent
    vectors ``[g2, x]`` and ``[g1, rho+_i(p) x]``."""
    G0 = g1.grading
    pt1, pt2 = point(G0, PLUS, g1), point(G0, PLUS, g2)
    if pt1.filtration != pt2.filtration:
        raise ValueError("witnesses describe different points")
    p = g1.inverse() * g2
    moved = tangent_rep(p, i, PLUS).matrix @ tuple(coords)
    return tangent_vector(pt2, coords, i), tangent_vector(pt1, moved, i)


def as_element(L: LieAlgebra, G0: Grading, coords: Sequence) -> Element:
    n = L.dim
    return Element(L, G0.from_graded(list(coords) + [ZERO] * (n - len(coords))))
