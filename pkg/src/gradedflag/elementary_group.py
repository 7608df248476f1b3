"""The group generated by exponentials of the extreme nilpotent parts.

Elements carry the word of generators they were built from. Layer
operators (denominators, co-denominators, Bergman operators) are matrices in
the graded coordinates of the relevant plus or minus part.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .exact_linalg import Matrix, det, invert, solve_vector
from .filtration import NotTransversal, chart_coordinates, chart_embed, nilpotent_exp
from .grading import Grading, GradingError, graded_bracket
from .lie_algebra import Element, LieAlgebra, coords_of
from .scalar import Q, ZERO

PLUS, MINUS = "+", "-"


class MembershipError(ValueError):
    pass


def _check_side(G0: Grading, v, sign: str) -> tuple:
    v = coords_of(v)
    if sign == PLUS:
        ok = G0.in_plus(v, 1)
    elif sign == MINUS:
        ok = G0.in_minus(v, 1)
    else:
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    if not ok:
        raise MembershipError(f"generator is not in the {sign} nilpotent part")
    return v


def _exp_matrix(G0: Grading, v, sign=1) -> Matrix:
    L = G0.algebra
    X = L.ad(v)
    return nilpotent_exp(X if sign > 0 else -X, 2 * G0.k)


class GroupElement:
    """Product of ``e^{ad v}`` factors, left to right, with its exact matrix and inverse."""

    __slots__ = ("grading", "word", "matrix", "inverse_matrix")

    def __init__(self, grading: Grading, word: Sequence[Tuple[str, Sequence]] = (),
                 _matrices: Optional[Tuple[Matrix, Matrix]] = None):
        self.grading = grading
        self.word = tuple((s, _check_side(grading, v, s)) for s, v in word)
        if _matrices is None:
            n = grading.algebra.dim
            m = Matrix.identity(n)
            mi = Matrix.identity(n)
            for _, v in self.word:
                if any(v):
                    m = m @ _exp_matrix(grading, v)
                    mi = _exp_matrix(grading, v, -1) @ mi
            _matrices = (m, mi)
        self.matrix, self.inverse_matrix = _matrices

    @property
    def algebra(self) -> LieAlgebra:
        return self.grading.algebra

    @classmethod
    def identity(cls, grading: Grading) -> "GroupElement":
        return cls(grading, ())

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if other.grading is not self.grading:
            raise ValueError("group elements over different gradings")
        return GroupElement(self.grading, (), (self.matrix @ other.matrix,
                                               other.inverse_matrix @ self.inverse_matrix))._with_word(
            self.word + other.word)

    def _with_word(self, word):
        self.word = word
        return self

    def inverse(self) -> "GroupElement":
        word = tuple((s, tuple(-a for a in v)) for s, v in reversed(self.word))
        return GroupElement(self.grading, (), (self.inverse_matrix, self.matrix))._with_word(word)

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"GroupElement(word of length {len(self.word)})"


def exp_ad(L: LieAlgebra, G0: Grading, v, sign: str = PLUS) -> GroupElement:
    return GroupElement(G0, [(sign, v)])


def word_element(G0: Grading, word) -> GroupElement:
    return GroupElement(G0, word)


@dataclass(frozen=True)
class LayerOperator:
    i: int
    side: str
    matrix: Matrix

    def det(self):
        return det(self.matrix)

    def is_invertible(self) -> bool:
        return det(self.matrix) != 0


def _check_layer(G0: Grading, i: int):
    if not 1 <= i <= G0.k:
        raise IndexError(f"layer index {i} outside 1..{G0.k}")


def _plus_x(G0: Grading, x) -> tuple:
    x = coords_of(x)
    if not G0.in_plus(x, 1):
        raise MembershipError("chart point is not in the plus nilpotent part")
    return x


def denominator_matrix(G0: Grading, g: GroupElement, x) -> Matrix:
    """``e^{-ad x} g^{-1}`` in graded coordinates."""
    x = _plus_x(G0, x)
    return G0.conjugate(_exp_matrix(G0, x, -1) @ g.inverse_matrix)


def codenominator_matrix(G0: Grading, g: GroupElement, x) -> Matrix:
    """``g e^{ad x}`` in graded coordinates."""
    x = _plus_x(G0, x)
    return G0.conjugate(g.matrix @ _exp_matrix(G0, x))


def _compress(M: Matrix, block: range) -> Matrix:
    return M.submatrix(block, block)


def denominator(L: LieAlgebra, G0: Grading, g: GroupElement, x, i: int) -> LayerOperator:
    _check_layer(G0, i)
    return LayerOperator(i, PLUS, _compress(denominator_matrix(G0, g, x), G0.plus_block(i)))


def codenominator(L: LieAlgebra, G0: Grading, g: GroupElement, x, i: int) -> LayerOperator:
    _check_layer(G0, i)
    return LayerOperator(i, MINUS, _compress(codenominator_matrix(G0, g, x), G0.minus_block(i)))


def denominators(G0: Grading, g: GroupElement, x) -> Dict[int, Matrix]:
    M = denominator_matrix(G0, g, x)
    return {i: _compress(M, G0.plus_block(i)) for i in range(1, G0.k + 1)}


def codenominators(G0: Grading, g: GroupElement, x) -> Dict[int, Matrix]:
    M = codenominator_matrix(G0, g, x)
    return {i: _compress(M, G0.minus_block(i)) for i in range(1, G0.k + 1)}


def bergman(L: LieAlgebra, G0: Grading, x, w, i: int, sign: str = PLUS) -> LayerOperator:
    """``B+(x, w)_i = d_{e^{ad w}}(x)_i`` or ``B-(w, x)_i = c_{e^{ad w}}(x)_i``."""
    g = GroupElement(G0, [(MINUS, w)])
    if sign == PLUS:
        return denominator(L, G0, g, x, i)
    if sign == MINUS:
        return codenominator(L, G0, g, x, i)
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


def _to_plus1(G0: Grading, graded: Sequence) -> tuple:
    """Graded vector restricted to the coordinates of n+_1."""
    return tuple(graded[j] for j in G0.plus_block(1))


def _from_plus1(G0: Grading, coords: Sequence) -> tuple:
    n = G0.algebra.dim
    full = list(coords) + [ZERO] * (n - len(coords))
    return G0.from_graded(full)


def numerator(L: LieAlgebra, G0: Grading, g: GroupElement, x) -> Element:
    """``pr_{n+_1}(e^{-ad x} g^{-1} E)``."""
    if G0.euler is None:
        raise GradingError("the numerator needs an inner grading")
    x = _plus_x(G0, x)
    y = _exp_matrix(G0, x, -1) @ (g.inverse_matrix @ G0.euler.coords)
    return Element(L, _from_plus1(G0, _to_plus1(G0, G0.to_graded(y))))


def chart_failures(G0: Grading, g: GroupElement, x) -> List[Tuple[str, int]]:
    """Layers whose denominator (``"d"``) or co-denominator (``"c"``) is singular."""
    bad = [("d", i) for i, m in denominators(G0, g, x).items() if det(m) == 0]
    bad += [("c", i) for i, m in codenominators(G0, g, x).items() if det(m) == 0]
    return bad


def in_chart(G0: Grading, g: GroupElement, x) -> bool:
    return not chart_failures(G0, g, x)


def in_omega_plus(L: LieAlgebra, G0: Grading, g: GroupElement) -> bool:
    return in_chart(G0, g, (ZERO,) * G0.algebra.dim)


# graded-coordinate series for E - e^{ad v} E


def series(G0: Grading, v: Sequence, zero=ZERO) -> list:
    """``sum_{j>=1} (ad v)^{j-1} (D v) / j!`` in graded coordinates, i.e. ``E - e^{ad v} E``.

    Entries may be scalars or polynomials.
    """
    gb = graded_bracket(G0)
    out = [zero] * gb.dim
    term = gb.apply_derivation(list(v))
    fact = 1
    for j in range(1, 2 * G0.k + 2):
        fact *= j
        c = Q(1, fact)
        for idx, w in enumerate(term):
            if w:
                out[idx] = out[idx] + w * c
        term = gb.bracket(v, term, zero)
        if not any(term):
            break
    return out


def psi_graded(G0: Grading, n: int, v: Sequence, zero=ZERO) -> list:
    """Degree-``n`` part of the series for the truncation of ``v`` to degrees below ``n``."""
    gb = graded_bracket(G0)
    u = [x if 1 <= d < n else zero for x, d in zip(v, gb.degree)]
    return gb.part(series(G0, u, zero), n, zero)


def psi(G0: Grading, n: int, v) -> Element:
    """``psi_n(v_1, ..., v_{n-1})`` as an element of the layer ``g_n``."""
    if not 1 <= n <= G0.k:
        raise IndexError(f"degree {n} outside 1..{G0.k}")
    v = coords_of(v)
    return Element(G0.algebra, G0.from_graded(psi_graded(G0, n, G0.to_graded(v))))


def _recover(G0: Grading, u_graded: Sequence) -> list:
    """Solve ``sum_n (n y_n + psi_n(y)) = u`` layer by layer (graded coordinates)."""
    gb = graded_bracket(G0)
    y = [ZERO] * gb.dim
    for n in range(1, G0.k + 1):
        p = psi_graded(G0, n, y) if n >= 3 else None
        for j in G0.block(n):
            y[j] = (u_graded[j] - (p[j] if p else ZERO)) / n
    return y


def _u_vector(G0: Grading, g: GroupElement, x) -> Optional[list]:
    """Graded coordinates of ``d_g(x)_1^{-1} n_g(x)``, or None if ``d_g(x)_1`` is singular."""
    M = denominator_matrix(G0, g, x)
    blk = G0.plus_block(1)
    d1 = _compress(M, blk)
    num = _to_plus1(G0, G0.to_graded(numerator(G0.algebra, G0, g, x)))
    u = solve_vector(d1, num) if det(d1) != 0 else None
    if u is None:
        return None
    return list(u) + [ZERO] * (G0.algebra.dim - len(u))


def act_in_chart(L: LieAlgebra, G0: Grading, g: GroupElement, x) -> Optional[Element]:
    """``g · x`` in the chart, or None when the image leaves the chart."""
    if chart_failures(G0, g, x):
        return None
    u = _u_vector(G0, g, x)
    return Element(L, G0.from_graded(_recover(G0, u)))


def psi_recursion(L: LieAlgebra, G0: Grading, g: GroupElement, x) -> Optional[Element]:
    """Run the layer recursion needing only ``d_g(x)_1``; None unless it reproduces ``g e^{ad x} · n-``."""
    u = _u_vector(G0, g, x)
    if u is None:
        return None
    y = G0.from_graded(_recover(G0, u))
    target = chart_embed(L, G0, x).apply(g.matrix)
    return Element(L, y) if chart_embed(L, G0, y) == target else None


def act_geometric(L: LieAlgebra, G0: Grading, g: GroupElement, x) -> Optional[Element]:
    """``g · x`` through the filtration action and chart coordinates."""
    target = chart_embed(L, G0, x).apply(g.matrix)
    try:
        return chart_coordinates(L, G0, target)
    except NotTransversal:
        return None


@dataclass
class OmegaTriple:
    v: Element
    h: Matrix
    w: Element


def omega_decompose(L: LieAlgebra, G0: Grading, g: GroupElement) -> Optional[OmegaTriple]:
    """``(v, h, w)`` with ``g = e^{ad v} h e^{ad w}``, h grading-preserving; None outside Omega+."""
    zero = (ZERO,) * L.dim
    v = act_in_chart(L, G0, g, zero)
    if v is None:
        return None
    p = GroupElement(G0, [(PLUS, -v)]) * g
    opp = G0.opposite()
    # p = h e^{ad w}  =>  p^{-1} n+ = e^{ad(-w)} n+, a chart point of the opposite grading
    m = G0.plus_filtration().apply(p.inverse_matrix)
    w = -chart_coordinates(L, opp, m)
    h = p.matrix @ _exp_matrix(G0, w.coords, -1)
    D = G0.derivation
    if h @ D != D @ h:  # pragma: no cover - guaranteed by the factorization
        raise ArithmeticError("middle factor does not preserve the grading")
    return OmegaTriple(v, h, w)


def omega_reconstruct(G0: Grading, t: OmegaTriple) -> Matrix:
    return _exp_matrix(G0, t.v.coords) @ t.h @ _exp_matrix(G0, t.w.coords)


def cocycle_sides(G0: Grading, g1: GroupElement, g2: GroupElement, x, i: int):
    """Both sides of the denominator cocycle identity, or None if ``g2 · x`` is undefined."""
    L = G0.algebra
    y = act_in_chart(L, G0, g2, x)
    if y is None:
        return None
    lhs = denominator(L, G0, g1 * g2, x, i).matrix
    d_id = denominator(L, G0, GroupElement.identity(G0), y, i).matrix
    rhs = (denominator(L, G0, g2, x, i).matrix @ invert(d_id)
           @ denominator(L, G0, g1, y, i).matrix)
    return lhs, rhs
