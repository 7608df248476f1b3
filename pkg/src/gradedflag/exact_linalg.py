"""Exact rational matrices and canonical subspaces.

Everything here is immutable. A :class:`Subspace` stores the nonzero rows of
the reduced row-echelon form of any spanning set, i.e. its basis matrix is in
reduced column-echelon form, so two subspaces are equal exactly when their
stored vectors are equal.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from . import kernels
from .scalar import ONE, ZERO, scalar


class DimensionError(ValueError):
    pass


def _vec(v) -> tuple:
    return tuple(scalar(x) for x in v)


class Matrix:
    """Dense rational matrix, row-major, immutable."""

    __slots__ = ("rows", "nrows", "ncols", "_hash")

    def __init__(self, rows: Iterable[Sequence], ncols: Optional[int] = None):
        rows = tuple(_vec(r) for r in rows)
        if ncols is None:
            if not rows:
                raise DimensionError("cannot infer column count of an empty matrix")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise DimensionError("ragged rows")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols
        self._hash = None

    @classmethod
    def _wrap(cls, rows, ncols):
        # trusted constructor: rows already hold Q values
        m = cls.__new__(cls)
        m.rows = tuple(tuple(r) for r in rows)
        m.nrows = len(m.rows)
        m.ncols = ncols
        m._hash = None
        return m

    @classmethod
    def zeros(cls, n: int, m: Optional[int] = None) -> "Matrix":
        m = n if m is None else m
        return cls._wrap([[ZERO] * m for _ in range(n)], m)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._wrap([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n)

    @classmethod
    def diagonal(cls, values) -> "Matrix":
        values = _vec(values)
        n = len(values)
        return cls._wrap([[values[i] if i == j else ZERO for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: Optional[int] = None) -> "Matrix":
        cols = [_vec(c) for c in columns]
        if not cols:
            if nrows is None:
                raise DimensionError("need nrows for a matrix without columns")
            return cls._wrap([() for _ in range(nrows)], 0)
        return cls._wrap(list(zip(*cols)), len(cols))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def T(self) -> "Matrix":
        if self.nrows == 0:
            return Matrix._wrap([() for _ in range(self.ncols)], 0)
        return Matrix._wrap(list(zip(*self.rows)), self.nrows)

    def columns(self) -> list:
        return list(zip(*self.rows)) if self.nrows else [() for _ in range(self.ncols)]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self.rows))
        return self._hash

    def __repr__(self):
        from .scalar import to_str

        body = "; ".join(" ".join(to_str(x) for x in r) for r in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"

    def _check_same(self, other):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._wrap(
            [[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._wrap(
            [[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols
        )

    def __neg__(self) -> "Matrix":
        return Matrix._wrap([[-x for x in r] for r in self.rows], self.ncols)

    def scale(self, c) -> "Matrix":
        c = scalar(c)
        return Matrix._wrap([[c * x for x in r] for r in self.rows], self.ncols)

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            return Matrix._wrap(kernels.matmul(self.rows, other.rows, other.ncols), other.ncols)
        v = _vec(other)
        if len(v) != self.ncols:
            raise DimensionError(f"cannot apply {self.shape} to vector of length {len(v)}")
        return tuple(kernels.matvec(self.rows, v))

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def trace(self):
        if not self.is_square():
            raise DimensionError("trace of a non-square matrix")
        s = ZERO
        for i in range(self.nrows):
            s += self.rows[i][i]
        return s

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._wrap([[self.rows[i][j] for j in cols] for i in rows], len(cols))

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise DimensionError("row count mismatch")
        return Matrix._wrap([r + s for r, s in zip(self.rows, other.rows)], self.ncols + other.ncols)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.ncols:
            raise DimensionError("column count mismatch")
        return Matrix._wrap(self.rows + other.rows, self.ncols)

    def power(self, n: int) -> "Matrix":
        if not self.is_square():
            raise DimensionError("power of a non-square matrix")
        out = Matrix.identity(self.nrows)
        for _ in range(n):
            out = out @ self
        return out

    def vec(self) -> tuple:
        """Row-major flattening."""
        return tuple(x for r in self.rows for x in r)


def rref(m: Matrix) -> Matrix:
    """Reduced row-echelon form with the same row space."""
    rows, _ = kernels.rref(m.rows, m.ncols)
    return Matrix._wrap(rows, m.ncols)


def rref_pivots(m: Matrix):
    rows, pivots = kernels.rref(m.rows, m.ncols)
    return Matrix._wrap(rows, m.ncols), pivots


def rank(m: Matrix) -> int:
    return len(kernels.rref(m.rows, m.ncols)[1])


def det(m: Matrix):
    if not m.is_square():
        raise DimensionError("determinant of a non-square matrix")
    return kernels.det(m.rows)


def solve(a: Matrix, b: Matrix) -> Optional[Matrix]:
    """Solve ``a @ X == b``; free variables are set to zero.

    Returns None when the system is inconsistent.
    """
    if a.nrows != b.nrows:
        raise DimensionError(f"solve: {a.nrows} equations but {b.nrows} right-hand rows")
    n = a.ncols
    rows, pivots = kernels.rref(a.hstack(b).rows, n + b.ncols)
    if pivots and pivots[-1] >= n:
        return None
    out = [[ZERO] * b.ncols for _ in range(n)]
    for r, c in enumerate(pivots):
        out[c] = list(rows[r][n:])
    return Matrix._wrap(out, b.ncols)


def solve_vector(a: Matrix, b: Sequence) -> Optional[tuple]:
    x = solve(a, Matrix.from_columns([b], a.nrows))
    return None if x is None else x.column(0)


def invert(m: Matrix) -> Optional[Matrix]:
    if not m.is_square():
        raise DimensionError("inverse of a non-square matrix")
    n = m.nrows
    rows, pivots = kernels.rref(m.hstack(Matrix.identity(n)).rows, 2 * n)
    if len(pivots) < n or pivots[n - 1] >= n:
        return None
    return Matrix._wrap([r[n:] for r in rows], n)


def nullspace_vectors(m: Matrix) -> list:
    rows, pivots = kernels.rref(m.rows, m.ncols)
    pivset = set(pivots)
    out = []
    for f in range(m.ncols):
        if f in pivset:
            continue
        v = [ZERO] * m.ncols
        v[f] = ONE
        for r, c in enumerate(pivots):
            x = rows[r][f]
            if x:
                v[c] = -x
        out.append(tuple(v))
    return out


def kernel(m: Matrix) -> "Subspace":
    return Subspace.span(nullspace_vectors(m), m.ncols)


class Subspace:
    """Subspace of Q^n held in canonical (reduced echelon) form."""

    __slots__ = ("ambient_dim", "vectors", "pivots", "_hash")

    def __init__(self, ambient_dim: int, vectors: tuple, pivots: tuple):
        self.ambient_dim = ambient_dim
        self.vectors = vectors
        self.pivots = pivots
        self._hash = None

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        vs = [_vec(v) for v in vectors]
        for v in vs:
            if len(v) != ambient_dim:
                raise DimensionError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        if not vs:
            return cls(ambient_dim, (), ())
        rows, pivots = kernels.rref(vs, ambient_dim)
        return cls(ambient_dim, tuple(tuple(rows[i]) for i in range(len(pivots))), tuple(pivots))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, (), ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls.span(Matrix.identity(n).rows, n)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def basis(self) -> Matrix:
        """Basis as columns (reduced column-echelon form)."""
        return Matrix.from_columns(self.vectors, self.ambient_dim)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.vectors == other.vectors

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ambient_dim, self.vectors))
        return self._hash

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def _check(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError("ambient dimension mismatch")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.vectors + other.vectors, self.ambient_dim)

    def reduce(self, v: Sequence) -> tuple:
        """Remainder of ``v`` after eliminating the pivot coordinates."""
        v = list(_vec(v))
        for row, p in zip(self.vectors, self.pivots):
            c = v[p]
            if c:
                for j, x in enumerate(row):
                    if x:
                        v[j] -= c * x
        return tuple(v)

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains(v) for v in other.vectors)

    def coordinates(self, v: Sequence) -> Optional[tuple]:
        """Coefficients of ``v`` in the canonical basis, or None if v is outside."""
        v = _vec(v)
        coeffs = tuple(v[p] for p in self.pivots)
        w = [ZERO] * self.ambient_dim
        for c, row in zip(coeffs, self.vectors):
            if c:
                for j, x in enumerate(row):
                    if x:
                        w[j] += c * x
        return coeffs if tuple(w) == v else None

    def image(self, m: Matrix) -> "Subspace":
        if m.ncols != self.ambient_dim:
            raise DimensionError("matrix does not act on this ambient space")
        return Subspace.span([m @ v for v in self.vectors], m.nrows)

    def is_zero(self) -> bool:
        return not self.vectors


def intersect(u: Subspace, v: Subspace) -> Subspace:
    """Canonical basis of ``u ∩ v``."""
    u._check(v)
    n = u.ambient_dim
    if not u.vectors or not v.vectors:
        return Subspace.zero(n)
    # columns: basis of u, then basis of v; kernel vectors give u-combinations
    a = Matrix.from_columns(u.vectors + v.vectors, n)
    r = u.dim
    gens = []
    for z in nullspace_vectors(a):
        w = [ZERO] * n
        for c, vec in zip(z[:r], u.vectors):
            if c:
                for j, x in enumerate(vec):
                    if x:
                        w[j] += c * x
        gens.append(w)
    return Subspace.span(gens, n)


def is_direct_sum(parts: Sequence[Subspace], ambient_dim: int) -> bool:
    """True iff the parts' dimensions add up to ``ambient_dim`` with full rank."""
    if any(p.ambient_dim != ambient_dim for p in parts):
        return False
    if sum(p.dim for p in parts) != ambient_dim:
        return False
    vecs = [v for p in parts for v in p.vectors]
    if not vecs:
        return ambient_dim == 0
    return len(kernels.rref(vecs, ambient_dim)[1]) == ambient_dim


def sparse_nullspace(equations: Iterable[dict], ncols: int) -> list:
    """Nullspace of a sparse linear system given as ``{column: coefficient}`` rows.

    Rows are reduced incrementally against an echelon basis, which keeps
    the work proportional to the number of independent equations.
    """
    pivots: dict = {}
    for eq in equations:
        row = {c: scalar(x) for c, x in eq.items() if x}
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                inv = ONE / row[c]
                pivots[c] = {j: x * inv for j, x in row.items()}
                break
            f = row[c]
            for j, x in prow.items():
                y = row.get(j, ZERO) - f * x
                if y:
                    row[j] = y
                else:
                    row.pop(j, None)
    # back-substitute to reduced form, highest pivot first
    order = sorted(pivots, reverse=True)
    for c in order:
        prow = pivots[c]
        for d in [j for j in prow if j != c and j in pivots]:
            f = prow[d]
            for j, x in pivots[d].items():
                y = prow.get(j, ZERO) - f * x
                if y:
                    prow[j] = y
                else:
                    prow.pop(j, None)
    out = []
    for f in range(ncols):
        if f in pivots:
            continue
        v = [ZERO] * ncols
        v[f] = ONE
        for c, prow in pivots.items():
            x = prow.get(f)
            if x:
                v[c] = -x
        out.append(tuple(v))
    return out


class SquareSolver:
    """Repeated exact solves of ``a x = b`` for a fixed full-column-rank ``a``.

    Picks a set of independent rows once, inverts that square block, and
    verifies every candidate solution against the full system.
    """

    def __init__(self, a: Matrix):
        self.a = a
        _, rows = rref_pivots(a.T)
        self.rank = len(rows)
        self.full_rank = self.rank == a.ncols
        self.rows = rows
        self._inv = invert(a.submatrix(rows, range(a.ncols))) if self.full_rank else None

    def solve(self, b: Sequence) -> Optional[tuple]:
        b = _vec(b)
        if self._inv is None:
            return solve_vector(self.a, b)
        x = self._inv @ tuple(b[i] for i in self.rows)
        return x if self.a @ x == b else None
