"""Finite-dimensional Lie algebras over Q given by structure constants."""

from __future__ import annotations

from typing import Mapping, Optional, Sequence

from .exact_linalg import DimensionError, Matrix, det
from .scalar import ZERO, scalar


class InvalidAlgebra(ValueError):
    """Raised when structure constants violate antisymmetry or Jacobi."""

    def __init__(self, message, report=()):
        super().__init__(message)
        self.report = list(report)


class AlgebraMismatch(ValueError):
    pass


class Element:
    """Coordinate vector tied to an algebra."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: "LieAlgebra", coords: Sequence):
        coords = tuple(scalar(c) for c in coords)
        if len(coords) != algebra.dim:
            raise DimensionError(f"expected {algebra.dim} coordinates, got {len(coords)}")
        self.algebra = algebra
        self.coords = coords

    def _other(self, other):
        if isinstance(other, Element):
            if other.algebra is not self.algebra:
                raise AlgebraMismatch("elements live in different algebras")
            return other.coords
        return tuple(scalar(c) for c in other)

    def __add__(self, other):
        return Element(self.algebra, [a + b for a, b in zip(self.coords, self._other(other))])

    def __sub__(self, other):
        return Element(self.algebra, [a - b for a, b in zip(self.coords, self._other(other))])

    def __neg__(self):
        return Element(self.algebra, [-a for a in self.coords])

    def __mul__(self, c):
        c = scalar(c)
        return Element(self.algebra, [c * a for a in self.coords])

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.algebra is other.algebra and self.coords == other.coords
        return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def is_zero(self):
        return not any(self.coords)

    def __repr__(self):
        return f"Element({self.algebra.format(self.coords)})"


def coords_of(x) -> tuple:
    if isinstance(x, Element):
        return x.coords
    return tuple(scalar(c) for c in x)


class LieAlgebra:
    """Lie algebra with basis ``b_0 .. b_{n-1}`` and ``[b_i, b_j] = sum_l c[i][j][l] b_l``.

    ``structure`` is either a dense ``dim x dim`` nest of coordinate vectors or
    a mapping ``(i, j) -> vector``; missing pairs are zero. Antisymmetry is
    stored, not derived, and both it and Jacobi are checked at construction
    unless ``check=False``.
    """

    def __init__(self, structure, labels: Optional[Sequence[str]] = None, dim: Optional[int] = None,
                 name: str = "", check: bool = True):
        if isinstance(structure, Mapping):
            if dim is None:
                dim = len(labels) if labels is not None else 1 + max(
                    (max(i, j) for i, j in structure), default=-1)
            zero = (ZERO,) * dim
            c = [[zero] * dim for _ in range(dim)]
            for (i, j), v in structure.items():
                v = tuple(scalar(a) for a in v)
                if len(v) != dim:
                    raise DimensionError(f"bracket [{i},{j}] has {len(v)} coordinates, expected {dim}")
                c[i][j] = v
        else:
            c = [[tuple(scalar(a) for a in v) for v in row] for row in structure]
            dim = len(c)
            for row in c:
                if len(row) != dim or any(len(v) != dim for v in row):
                    raise DimensionError("structure tensor must be dim x dim x dim")
        self.dim = dim
        self.structure = tuple(tuple(row) for row in c)
        self.labels = tuple(labels) if labels is not None else tuple(f"b{i}" for i in range(dim))
        if len(self.labels) != dim:
            raise DimensionError("one label per basis vector is required")
        self.name = name
        # sparse copy: _sparse[i][j] = (j, [(l, coeff), ...]) over nonzero coeffs
        self._sparse = [
            [(j, [(l, a) for l, a in enumerate(c[i][j]) if a]) for j in range(dim)]
            for i in range(dim)
        ]
        self._ad_basis = tuple(
            Matrix.from_columns([c[i][j] for j in range(dim)], dim) for i in range(dim)
        )
        self._killing = None
        if check:
            report = self.check_antisymmetry() + self.check_jacobi()
            if report:
                raise InvalidAlgebra(f"invalid structure constants: {report[:5]}", report)

    # construction helpers
    def element(self, coords) -> Element:
        return Element(self, coords)

    def basis_element(self, i: int) -> Element:
        return Element(self, [1 if j == i else 0 for j in range(self.dim)])

    def zero(self) -> Element:
        return Element(self, [0] * self.dim)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def format(self, coords) -> str:
        from .scalar import to_str

        terms = []
        for c, lab in zip(coords_of(coords), self.labels):
            if c:
                s = to_str(c)
                terms.append(lab if s == "1" else f"-{lab}" if s == "-1" else f"{s}*{lab}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.structure == other.structure and self.labels == other.labels

    def __hash__(self):
        return hash((self.dim, self.labels))

    def __repr__(self):
        return f"LieAlgebra({self.name or 'unnamed'}, dim={self.dim})"

    # core operations
    def bracket_coords(self, x: Sequence, y: Sequence) -> tuple:
        out = [ZERO] * self.dim
        ynz = [(j, b) for j, b in enumerate(y) if b]
        for i, a in enumerate(x):
            if not a:
                continue
            row = self._sparse[i]
            for j, b in ynz:
                ab = a * b
                for l, c in row[j][1]:
                    out[l] += ab * c
        return tuple(out)

    def bracket(self, x, y) -> Element:
        self._same(x)
        self._same(y)
        return Element(self, self.bracket_coords(coords_of(x), coords_of(y)))

    def ad(self, x) -> Matrix:
        self._same(x)
        n = self.dim
        rows = [[ZERO] * n for _ in range(n)]
        for i, a in enumerate(coords_of(x)):
            if not a:
                continue
            for r, brow in enumerate(self._ad_basis[i].rows):
                row = rows[r]
                for j, v in enumerate(brow):
                    if v:
                        row[j] += a * v
        return Matrix._wrap(rows, n)

    def ad_basis(self, i: int) -> Matrix:
        return self._ad_basis[i]

    def _same(self, x):
        if isinstance(x, Element) and x.algebra is not self and x.algebra != self:
            raise AlgebraMismatch("element belongs to a different algebra")

    # validators
    def check_antisymmetry(self) -> list:
        bad = []
        for i in range(self.dim):
            for j in range(i, self.dim):
                if any(a + b for a, b in zip(self.structure[i][j], self.structure[j][i])):
                    bad.append(("antisymmetry", i, j))
        return bad

    def check_jacobi(self) -> list:
        """Basis triples (i, j, k) with i < j < k where Jacobi fails."""
        n = self.dim
        c = self.structure
        bad = []
        for i in range(n):
            for j in range(i + 1, n):
                cij = c[i][j]
                for k in range(j + 1, n):
                    s = self.bracket_coords(cij, _unit(k, n))
                    t = self.bracket_coords(c[j][k], _unit(i, n))
                    u = self.bracket_coords(c[k][i], _unit(j, n))
                    if any(a + b + d for a, b, d in zip(s, t, u)):
                        bad.append((i, j, k))
        return bad

    def killing_form(self) -> Matrix:
        if self._killing is None:
            n = self.dim
            rows = [[ZERO] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    v = (self._ad_basis[i] @ self._ad_basis[j]).trace()
                    rows[i][j] = rows[j][i] = v
            self._killing = Matrix._wrap(rows, n)
        return self._killing

    def killing(self, x, y):
        b = self.killing_form()
        return sum((a * w for a, w in zip(coords_of(x), b @ coords_of(y))), ZERO)

    def is_semisimple(self) -> bool:
        return det(self.killing_form()) != 0

    def is_derivation(self, m: Matrix) -> bool:
        n = self.dim
        if m.shape != (n, n):
            return False
        # m ad(b_i) - ad(b_i) m == ad(m b_i) for every basis vector
        for i in range(n):
            a = self._ad_basis[i]
            if m @ a - a @ m != self.ad(m.column(i)):
                return False
        return True

    def is_automorphism(self, g: Matrix) -> bool:
        n = self.dim
        if g.shape != (n, n) or det(g) == 0:
            return False
        for i in range(n):
            if g @ self._ad_basis[i] != self.ad(g.column(i)) @ g:
                return False
        return True

    def center(self):
        from .exact_linalg import kernel

        # x is central iff ad(b_i) x = 0 for every basis vector b_i
        eqs = [r for i in range(self.dim) for r in self._ad_basis[i].rows]
        return kernel(Matrix._wrap(eqs, self.dim))


def _unit(k, n):
    return tuple(1 if j == k else 0 for j in range(n))


def bracket(L: LieAlgebra, x, y) -> Element:
    return L.bracket(x, y)


def ad(L: LieAlgebra, x) -> Matrix:
    return L.ad(x)


def check_jacobi(L: LieAlgebra) -> list:
    return L.check_jacobi()


def killing_form(L: LieAlgebra) -> Matrix:
    return L.killing_form()


def is_derivation(L: LieAlgebra, m: Matrix) -> bool:
    return L.is_derivation(m)


def is_automorphism(L: LieAlgebra, g: Matrix) -> bool:
    return L.is_automorphism(g)
