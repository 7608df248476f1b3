"""(2k+1)-gradings: layer decompositions with their characteristic derivation."""

from __future__ import annotations

from typing import Dict, Optional

from .exact_linalg import Matrix, Subspace, invert, is_direct_sum, kernel, solve
from .lie_algebra import Element, LieAlgebra, coords_of
from .scalar import ZERO


class GradingError(ValueError):
    def __init__(self, message, report=()):
        super().__init__(message)
        self.report = list(report)


def eq1_holds(D: Matrix, k: int) -> bool:
    """Whether prod_{n=-k..k} (D - n Id) vanishes."""
    n = D.nrows
    ident = Matrix.identity(n)
    acc = ident
    for m in range(-k, k + 1):
        acc = acc @ (D - ident.scale(m))
        if acc.is_zero():
            return True
    return acc.is_zero()


class Grading:
    """Layers ``g_n`` for ``n`` in ``[-k, k]`` plus the derivation acting as ``n`` on ``g_n``.

    ``derivation`` defaults to the operator built from the layers. Passing
    one explicitly is allowed so that inconsistent data can be inspected with
    :func:`validate_grading`.
    """

    def __init__(self, algebra: LieAlgebra, k: int, layers: Dict[int, Subspace],
                 derivation: Optional[Matrix] = None, euler=None):
        if k < 0:
            raise ValueError("k must be non-negative")
        self.algebra = algebra
        self.k = k
        n = algebra.dim
        self.layers = {d: layers.get(d, Subspace.zero(n)) for d in range(-k, k + 1)}
        extra = [d for d in layers if abs(d) > k and layers[d].dim]
        if extra:
            raise GradingError(f"layers outside [-{k},{k}]: {extra}")
        self.euler = None if euler is None else Element(algebra, coords_of(euler))
        self.degrees = tuple(range(k, -k - 1, -1))
        self._basis = None
        self._basis_inv = None
        self._derivation = derivation

    # graded coordinates: columns of P are layer bases, degrees descending
    @property
    def dims(self) -> Dict[int, int]:
        return {d: s.dim for d, s in self.layers.items()}

    @property
    def effective_k(self) -> int:
        return max((abs(d) for d, s in self.layers.items() if s.dim), default=0)

    @property
    def basis(self) -> Matrix:
        if self._basis is None:
            cols = [v for d in self.degrees for v in self.layers[d].vectors]
            self._basis = Matrix.from_columns(cols, self.algebra.dim)
        return self._basis

    @property
    def basis_inv(self) -> Matrix:
        if self._basis_inv is None:
            if not self.is_direct_sum():
                raise GradingError("layers do not form a direct sum")
            self._basis_inv = invert(self.basis)
        return self._basis_inv

    def is_direct_sum(self) -> bool:
        return is_direct_sum(list(self.layers.values()), self.algebra.dim)

    def offset(self, d: int) -> int:
        """First graded-coordinate index of layer ``d``."""
        return sum(self.layers[e].dim for e in self.degrees if e > d)

    def block(self, d: int) -> range:
        o = self.offset(d)
        return range(o, o + self.layers[d].dim)

    def plus_block(self, i: int) -> range:
        """Graded indices of the sum of layers of degree >= i (a leading block)."""
        i = max(i, -self.k)
        return range(0, sum(self.layers[d].dim for d in self.degrees if d >= i))

    def minus_block(self, i: int) -> range:
        """Graded indices of the sum of layers of degree <= -i (a trailing block)."""
        i = max(i, -self.k)
        n = self.algebra.dim
        return range(n - sum(self.layers[d].dim for d in self.degrees if d <= -i), n)

    def plus_space(self, i: int) -> Subspace:
        return Subspace.span([v for d in self.degrees if d >= i for v in self.layers[d].vectors],
                             self.algebra.dim)

    def minus_space(self, i: int) -> Subspace:
        return Subspace.span([v for d in self.degrees if d <= -i for v in self.layers[d].vectors],
                             self.algebra.dim)

    @property
    def derivation(self) -> Matrix:
        if self._derivation is None:
            weights = [d for d in self.degrees for _ in range(self.layers[d].dim)]
            self._derivation = self.basis @ Matrix.diagonal(weights) @ self.basis_inv
        return self._derivation

    char_derivation = derivation

    def to_graded(self, x) -> tuple:
        return self.basis_inv @ coords_of(x)

    def from_graded(self, y) -> tuple:
        return self.basis @ tuple(y)

    def conjugate(self, m: Matrix) -> Matrix:
        """Matrix of ``m`` in graded coordinates."""
        return self.basis_inv @ m @ self.basis

    def project_coords(self, x, d: int) -> tuple:
        if abs(d) > self.k:
            return (ZERO,) * self.algebra.dim
        y = self.to_graded(x)
        b = self.block(d)
        z = [y[j] if j in b else ZERO for j in range(len(y))]
        return self.from_graded(z)

    def project(self, x, d: int) -> Element:
        return Element(self.algebra, self.project_coords(x, d))

    def components(self, x) -> Dict[int, tuple]:
        return {d: self.project_coords(x, d) for d in self.degrees}

    def degree_of(self, x) -> Optional[int]:
        """The unique degree whose layer contains ``x`` (None if x is zero or mixed)."""
        x = coords_of(x)
        found = [d for d in self.degrees if any(self.project_coords(x, d))]
        return found[0] if len(found) == 1 else None

    def in_plus(self, x, i: int) -> bool:
        y = self.to_graded(x)
        b = self.plus_block(i)
        return not any(y[j] for j in range(len(y)) if j not in b)

    def in_minus(self, x, i: int) -> bool:
        y = self.to_graded(x)
        b = self.minus_block(i)
        return not any(y[j] for j in range(len(y)) if j not in b)

    def opposite(self) -> "Grading":
        """Same layers with degrees negated."""
        euler = None if self.euler is None else -self.euler
        deriv = None if self._derivation is None else -self._derivation
        return Grading(self.algebra, self.k, {-d: s for d, s in self.layers.items()}, deriv, euler)

    def _cached(self, key, fn):
        cache = self.__dict__.setdefault("_cache", {})
        if key not in cache:
            cache[key] = fn()
        return cache[key]

    def plus_filtration(self):
        from .filtration import Filtration

        return self._cached("plus", lambda: Filtration(
            self.algebra, self.k, {n: self.plus_space(n) for n in range(self.k, -self.k, -1)}))

    def minus_filtration(self):
        from .filtration import Filtration

        return self._cached("minus", lambda: Filtration(
            self.algebra, self.k, {n: self.minus_space(n) for n in range(self.k, -self.k, -1)}))

    def same_layers(self, other: "Grading") -> bool:
        return self.k == other.k and self.layers == other.layers

    def __eq__(self, other):
        if not isinstance(other, Grading):
            return NotImplemented
        return self.algebra == other.algebra and self.same_layers(other)

    def __hash__(self):
        return hash((self.k, tuple(self.layers[d] for d in self.degrees)))

    def __repr__(self):
        dims = ",".join(str(self.layers[d].dim) for d in self.degrees)
        return f"Grading(k={self.k}, dims=({dims}))"


def grading_from_layers(L: LieAlgebra, k: int, layers: Dict[int, Subspace], euler=None) -> Grading:
    g = Grading(L, k, layers, euler=euler)
    if not g.is_direct_sum():
        raise GradingError("layers do not form a direct sum")
    return g


def grading_from_derivation(L: LieAlgebra, D: Matrix, k: int, euler=None) -> Grading:
    if not eq1_holds(D, k):
        raise GradingError("not a (2k+1)-grading derivation")
    n = L.dim
    ident = Matrix.identity(n)
    layers = {d: kernel(D - ident.scale(d)) for d in range(-k, k + 1)}
    g = Grading(L, k, layers, derivation=D, euler=euler)
    if not g.is_direct_sum():  # pragma: no cover - excluded by the polynomial identity
        raise GradingError("eigenspaces do not span the algebra")
    return g


def grading_from_euler(L: LieAlgebra, E, k: int) -> Grading:
    E = Element(L, coords_of(E))
    return grading_from_derivation(L, L.ad(E), k, euler=E)


def validate_grading(L: LieAlgebra, G: Grading) -> list:
    """List of violations; empty means ``G`` is a valid grading of ``L``."""
    report = []
    n = L.dim
    if not G.is_direct_sum():
        report.append({"check": "direct_sum", "detail": "layers do not form a direct sum"})
        return report
    for m in G.degrees:
        for d in G.degrees:
            if m < d:
                continue
            target = G.layers.get(m + d, Subspace.zero(n))
            for a in G.layers[m].vectors:
                for b in G.layers[d].vectors:
                    if not target.contains(L.bracket_coords(a, b)):
                        report.append({"check": "bracket", "detail": f"[g_{m}, g_{d}] not in g_{m + d}"})
                        break
                else:
                    continue
                break
    D = G.derivation
    if D.shape != (n, n):
        report.append({"check": "derivation", "detail": "derivation has the wrong shape"})
        return report
    for d in G.degrees:
        for v in G.layers[d].vectors:
            if D @ v != tuple(d * a for a in v):
                report.append({"check": "eigenvalue", "detail": f"D does not act as {d} on g_{d}"})
                break
    if not eq1_holds(D, G.k):
        report.append({"check": "eq1", "detail": "prod (D - n Id) is not zero"})
    if G.euler is not None and L.ad(G.euler) != D:
        report.append({"check": "euler", "detail": "ad(euler) differs from the derivation"})
    return report


def project(G: Grading, x, n: int) -> Element:
    return G.project(x, n)


def plus_filtration(G: Grading):
    return G.plus_filtration()


def minus_filtration(G: Grading):
    return G.minus_filtration()


def euler_from_derivation(L: LieAlgebra, D: Matrix) -> Optional[Element]:
    """An element ``E`` with ``ad E = D`` (free coordinates zero), or None if D is outer."""
    if not L.is_derivation(D):
        raise GradingError("not a derivation")
    n = L.dim
    # vec(ad E) = sum_i E_i vec(ad b_i)
    a = Matrix.from_columns([L.ad_basis(i).vec() for i in range(n)], n * n)
    sol = solve(a, Matrix.from_columns([D.vec()], n * n))
    return None if sol is None else Element(L, sol.column(0))


class GradedBracket:
    """Bracket and degree data in the graded basis of a grading.

    Entries may be scalars or any ring elements supporting ``+``, ``*`` and
    truth testing (polynomials), which lets the same code run numerically
    and symbolically.
    """

    def __init__(self, G: Grading):
        L = G.algebra
        n = L.dim
        P, Pinv = G.basis, G.basis_inv
        cols = P.columns()
        self.dim = n
        self.k = G.k
        self.degree = [d for d in G.degrees for _ in range(G.layers[d].dim)]
        self.table = [[None] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                v = Pinv @ L.bracket_coords(cols[a], cols[b])
                self.table[a][b] = [(l, c) for l, c in enumerate(v) if c]

    def bracket(self, x, y, zero=ZERO):
        out = [zero] * self.dim
        ynz = [(b, yb) for b, yb in enumerate(y) if yb]
        for a, xa in enumerate(x):
            if not xa:
                continue
            row = self.table[a]
            for b, yb in ynz:
                t = row[b]
                if t:
                    p = xa * yb
                    for l, c in t:
                        out[l] = out[l] + p * c
        return out

    def apply_derivation(self, x):
        return [v * d if v else v for v, d in zip(x, self.degree)]

    def part(self, x, d, zero=ZERO):
        return [v if deg == d else zero for v, deg in zip(x, self.degree)]


def graded_bracket(G: Grading) -> GradedBracket:
    return G._cached("graded_bracket", lambda: GradedBracket(G))
