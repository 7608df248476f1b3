"""Polynomial realization ``x -> pr_{n+_i}(e^{-ad x} Y)`` and its closed forms.

Coordinates on every plus part are the graded coordinates of the grading
(layer bases, highest degree first).
"""

from __future__ import annotations

from math import factorial
from typing import Optional, Sequence, Tuple

from .elementary_group import GroupElement, act_in_chart, denominators
from .exact_linalg import invert
from .grading import Grading, graded_bracket
from .lie_algebra import LieAlgebra, coords_of
from .polynomial import Poly
from .scalar import Q, scalar


class PolyMap:
    """Tuple of polynomials: one per output coordinate."""

    __slots__ = ("input_dim", "output_dim", "polys", "output_labels")

    def __init__(self, input_dim: int, polys: Sequence[Poly], output_labels: Optional[Sequence[str]] = None):
        self.input_dim = input_dim
        self.polys = tuple(polys)
        self.output_dim = len(self.polys)
        if any(p.nvars != input_dim for p in self.polys):
            raise ValueError("polynomial variable counts differ from input_dim")
        self.output_labels = tuple(output_labels) if output_labels else None

    @classmethod
    def zero(cls, input_dim: int, output_dim: int) -> "PolyMap":
        return cls(input_dim, [Poly(input_dim)] * output_dim)

    def __call__(self, x: Sequence) -> tuple:
        x = [scalar(v) for v in x]
        if len(x) != self.input_dim:
            raise ValueError(f"expected {self.input_dim} coordinates, got {len(x)}")
        return tuple(p(x) for p in self.polys)

    def __eq__(self, other):
        if not isinstance(other, PolyMap):
            return NotImplemented
        return self.input_dim == other.input_dim and self.polys == other.polys

    def __hash__(self):
        return hash(self.polys)

    def __add__(self, other: "PolyMap") -> "PolyMap":
        return PolyMap(self.input_dim, [a + b for a, b in zip(self.polys, other.polys)], self.output_labels)

    def __sub__(self, other: "PolyMap") -> "PolyMap":
        return PolyMap(self.input_dim, [a - b for a, b in zip(self.polys, other.polys)], self.output_labels)

    def scale(self, c) -> "PolyMap":
        return PolyMap(self.input_dim, [p * c for p in self.polys], self.output_labels)

    def degree(self) -> int:
        return max((p.degree() for p in self.polys), default=-1)

    def is_zero(self) -> bool:
        return not any(self.polys)

    def format(self, var_names: Optional[Sequence[str]] = None) -> str:
        if var_names is None:
            var_names = ["t"] if self.input_dim == 1 else [f"t{j + 1}" for j in range(self.input_dim)]
        labels = self.output_labels or [f"u{j + 1}" for j in range(self.output_dim)]
        parts = []
        for p, lab in zip(self.polys, labels):
            if not p:
                continue
            s = p.format(var_names)
            if len(p.terms) > 1:
                s = f"({s})"
            elif s == "1":
                s = ""
            elif s == "-1":
                s = "-"
            parts.append(f"{s} {lab}".strip() if s not in ("", "-") else f"{s}{lab}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def __repr__(self):
        return f"PolyMap({self.format()})"


def _graded_labels(G0: Grading, block) -> list:
    L = G0.algebra
    out = []
    for j in block:
        col = G0.basis.column(j)
        nz = [t for t, c in enumerate(col) if c]
        if len(nz) == 1 and col[nz[0]] == 1:
            out.append(L.labels[nz[0]])
        else:
            out.append(f"({L.format(col)})")
    return out


def domain_coords(G0: Grading, x, layer: int) -> tuple:
    """Graded coordinates of ``x`` in n+_layer (x must lie there)."""
    if not G0.in_plus(x, layer):
        raise ValueError(f"point is not in the plus part of level {layer}")
    y = G0.to_graded(coords_of(x))
    return tuple(y[j] for j in G0.plus_block(layer))


def symbolic_point(G0: Grading, layer: int) -> Tuple[int, list]:
    """Graded vector of polynomials: the generic point of n+_layer."""
    blk = G0.plus_block(layer)
    nv = len(blk)
    xs = Poly.variables(nv)
    zero = Poly(nv)
    vec = [zero] * G0.algebra.dim
    for t, j in enumerate(blk):
        vec[j] = xs[t]
    return nv, vec


def _constant_vector(G0: Grading, Y, nv: int) -> list:
    y = G0.to_graded(coords_of(Y))
    return [Poly.constant(nv, c) for c in y]


def realize(L: LieAlgebra, G0: Grading, Y, i: int, chart_layer: Optional[int] = None) -> PolyMap:
    """``x -> pr_{n+_i}(e^{-ad x} Y)`` with ``x`` ranging over n+_i (or n+_chart_layer)."""
    if not 1 <= i <= G0.k:
        raise IndexError(f"layer index {i} outside 1..{G0.k}")
    layer = i if chart_layer is None else chart_layer
    gb = graded_bracket(G0)
    nv, x = symbolic_point(G0, layer)
    zero = Poly(nv)
    term = _constant_vector(G0, Y, nv)
    total = list(term)
    # term_j = (-ad x)^j Y / j!, built from the previous one
    for j in range(1, 2 * G0.k + 1):
        term = gb.bracket(x, term, zero)
        c = Q(-1, j)
        term = [t * c if t else t for t in term]
        if not any(term):
            break
        total = [a + b for a, b in zip(total, term)]
    blk = G0.plus_block(i)
    return PolyMap(nv, [total[j] for j in blk], _graded_labels(G0, blk))


def evaluate(pm: PolyMap, x: Sequence) -> tuple:
    return pm(x)


def realize_numeric(L: LieAlgebra, G0: Grading, Y, i: int, x) -> tuple:
    """Direct ``pr_{n+_i}(e^{-ad x} Y)`` through the exponential matrix."""
    from .filtration import nilpotent_exp

    v = nilpotent_exp(-L.ad(coords_of(x)), 2 * G0.k) @ coords_of(Y)
    g = G0.to_graded(v)
    return tuple(g[j] for j in G0.plus_block(i))


# closed forms for short gradings


def _layer_part(G0: Grading, vec: list, d: int, zero) -> list:
    return graded_bracket(G0).part(vec, d, zero)


def _lin(*pairs):
    """Sum of ``c * v`` over graded vectors."""
    out = None
    for c, v in pairs:
        w = [a * c if a else a for a in v]
        out = w if out is None else [a + b for a, b in zip(out, w)]
    return out


def closed_form_3graded(L: LieAlgebra, G0: Grading, Y) -> PolyMap:
    if G0.k != 1:
        raise ValueError("the 3-graded formula needs k = 1")
    gb = graded_bracket(G0)
    nv, x = symbolic_point(G0, 1)
    zero = Poly(nv)
    Yv = _constant_vector(G0, Y, nv)

    def br(a, b):
        return gb.bracket(a, b, zero)

    val = _lin((1, Yv), (-1, br(x, Yv)), (Q(1, 2), br(x, br(x, Yv))))
    blk = G0.plus_block(1)
    return PolyMap(nv, [val[j] for j in blk], _graded_labels(G0, blk))


def closed_form_5graded(L: LieAlgebra, G0: Grading, Y) -> Tuple[PolyMap, PolyMap]:
    """The layer-by-layer tables for k = 2, as ``(i = 1, i = 2)`` maps."""
    if G0.k != 2:
        raise ValueError("the 5-graded tables need k = 2")
    gb = graded_bracket(G0)

    # i = 1: x = x1 + x2 over n+_1
    nv, x = symbolic_point(G0, 1)
    zero = Poly(nv)
    x1 = _layer_part(G0, x, 1, zero)
    x2 = _layer_part(G0, x, 2, zero)
    Yv = _constant_vector(G0, Y, nv)

    def br(a, b):
        return gb.bracket(a, b, zero)

    comp = {d: _layer_part(G0, Yv, d, zero) for d in range(-2, 3)}
    half, sixth, q24 = Q(1, 2), Q(1, 6), Q(1, 24)
    y2, y1, y0, ym1, ym2 = comp[2], comp[1], comp[0], comp[-1], comp[-2]
    cases = [
        _lin((1, y2)),
        _lin((1, y1), (-1, br(x, y1))),
        _lin((-1, br(x1, y0)), (-1, br(x2, y0)), (half, br(x1, br(x1, y0)))),
        _lin((-1, br(x2, ym1)), (half, br(x1, br(x1, ym1))), (1, br(x1, br(x2, ym1))),
             (-sixth, br(x1, br(x1, br(x1, ym1))))),
        _lin((1, br(x1, br(x2, ym2))), (-sixth, br(x1, br(x1, br(x1, ym2)))),
             (half, br(x2, br(x2, ym2))), (-half, br(x1, br(x1, br(x2, ym2)))),
             (q24, br(x1, br(x1, br(x1, br(x1, ym2)))))),
    ]
    total = _lin(*[(1, c) for c in cases])
    blk = G0.plus_block(1)
    first = PolyMap(nv, [total[j] for j in blk], _graded_labels(G0, blk))

    # i = 2: x over g_2 only
    nv2, z = symbolic_point(G0, 2)
    zero2 = Poly(nv2)
    Yv2 = _constant_vector(G0, Y, nv2)
    comp2 = {d: _layer_part(G0, Yv2, d, zero2) for d in range(-2, 3)}

    def br2(a, b):
        return gb.bracket(a, b, zero2)

    total2 = _lin((1, comp2[2]), (-1, br2(z, comp2[0])), (half, br2(z, br2(z, comp2[-2]))))
    blk2 = G0.plus_block(2)
    second = PolyMap(nv2, [total2[j] for j in blk2], _graded_labels(G0, blk2))
    return first, second


def closed_form_5graded_cases(L: LieAlgebra, G0: Grading, Y) -> dict:
    """Per-degree closed forms: ``{(i, d): PolyMap}`` for Y's component of degree d."""
    out = {}
    for d in range(-2, 3):
        Yd = G0.project_coords(coords_of(Y), d)
        a, b = closed_form_5graded(L, G0, Yd)
        out[(1, d)] = a
        out[(2, d)] = b
    return out


def transform_sides(L: LieAlgebra, G0: Grading, g: GroupElement, Y, x, i: int):
    """Both sides of ``(g^{-1} Y)~(x) = d_g(x)_i d_Id(g·x)_i^{-1} Y~(g·x)``.

    Both realizations use chart coordinates on n+_1.
    """
    y = act_in_chart(L, G0, g, x)
    if y is None:
        raise ValueError("g · x leaves the chart")
    gY = g.inverse_matrix @ coords_of(Y)
    lhs = realize(L, G0, gY, i, chart_layer=1)(domain_coords(G0, x, 1))
    d_g = denominators(G0, g, x)[i]
    d_id = denominators(G0, GroupElement.identity(G0), y)[i]
    rhs = d_g @ (invert(d_id) @ realize(L, G0, Y, i, chart_layer=1)(domain_coords(G0, y, 1)))
    return lhs, rhs


def transform_check(L: LieAlgebra, G0: Grading, g: GroupElement, Y, x, i: int) -> bool:
    lhs, rhs = transform_sides(L, G0, g, Y, x, i)
    return lhs == rhs


def bracket_annotation(k: int) -> str:
    """The truncated exponential series as a bracket expression."""
    terms = ["Y"]
    inner = "Y"
    for j in range(1, 2 * k + 1):
        inner = f"[x,{inner}]"
        coef = f"1/{factorial(j)} " if j > 1 else ""
        sign = "-" if j % 2 else "+"
        terms.append(f"{sign} {coef}{inner}")
    return " ".join(terms)
