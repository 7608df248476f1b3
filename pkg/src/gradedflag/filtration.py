"""(2k+1)-filtrations, transversality, and the unipotent torsor."""

from __future__ import annotations

from math import factorial
from typing import Dict, Optional, Tuple

from .exact_linalg import (Matrix, SquareSolver, Subspace, intersect, is_direct_sum,
                           sparse_nullspace)
from .grading import Grading, GradingError, euler_from_derivation
from .lie_algebra import Element, LieAlgebra, coords_of
from .scalar import ONE, Q, ZERO


class NotTransversal(ValueError):
    pass


class NotNilpotent(ValueError):
    pass


class Filtration:
    """Steps ``n_k ⊂ ... ⊂ n_{-k+1}``; ``n_{k+1} = 0`` and ``n_{-k} = g`` are implicit."""

    __slots__ = ("algebra", "k", "steps", "_hash")

    def __init__(self, algebra: LieAlgebra, k: int, steps: Dict[int, Subspace]):
        missing = [n for n in range(k, -k, -1) if n not in steps]
        if missing:
            raise ValueError(f"missing filtration steps {missing}")
        self.algebra = algebra
        self.k = k
        self.steps = {n: steps[n] for n in range(k, -k, -1)}
        self._hash = None

    def step(self, n: int) -> Subspace:
        if n > self.k:
            return Subspace.zero(self.algebra.dim)
        if n <= -self.k:
            return Subspace.full(self.algebra.dim)
        return self.steps[n]

    __getitem__ = step

    def apply(self, g: Matrix) -> "Filtration":
        return Filtration(self.algebra, self.k, {n: s.image(g) for n, s in self.steps.items()})

    def dims(self) -> tuple:
        return tuple(self.steps[n].dim for n in range(self.k, -self.k, -1))

    def __eq__(self, other):
        if not isinstance(other, Filtration):
            return NotImplemented
        return self.k == other.k and self.steps == other.steps

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.k, tuple(self.steps.values())))
        return self._hash

    def __repr__(self):
        return f"Filtration(k={self.k}, dims={self.dims()})"


def is_filtration(L: LieAlgebra, flag: Filtration) -> list:
    """Violations of nesting or of ``[n_m, n_n] ⊂ n_{m+n}``; empty when valid."""
    report = []
    k = flag.k
    for n in range(k, -k, -1):
        if not flag.step(n).contains_subspace(flag.step(n + 1)):
            report.append({"check": "nesting", "detail": f"step {n + 1} not inside step {n}"})
    for m in range(k, -k - 1, -1):
        for n in range(m, -k - 1, -1):
            target = flag.step(max(m + n, -k))
            if target.dim == L.dim:
                continue
            ok = all(target.contains(L.bracket_coords(a, b))
                     for a in flag.step(m).vectors for b in flag.step(n).vectors)
            if not ok:
                report.append({"check": "bracket", "detail": f"[n_{m}, n_{n}] not inside n_{m + n}"})
    return report


def is_transversal(e: Filtration, f: Filtration) -> bool:
    if e.k != f.k:
        raise ValueError("filtrations have different k")
    d = e.algebra.dim
    return all(is_direct_sum([e.step(n), f.step(1 - n)], d) for n in range(-e.k + 1, e.k + 1))


def grading_from_transversal(L: LieAlgebra, m: Filtration, n: Filtration, with_euler: bool = False) -> Grading:
    """Layers ``g_d = m_d ∩ n_{-d}``; both filtrations are recovered from them."""
    if m.k != n.k:
        raise ValueError("filtrations have different k")
    k = m.k
    layers = {d: intersect(m.step(d), n.step(-d)) for d in range(-k, k + 1)}
    G = Grading(L, k, layers)
    if not G.is_direct_sum():
        raise NotTransversal("intersections do not decompose the algebra")
    if G.plus_filtration() != m or G.minus_filtration() != n:
        raise NotTransversal("layers do not reproduce the filtrations")
    if with_euler:
        try:
            G.euler = euler_from_derivation(L, G.derivation)
        except GradingError:  # pragma: no cover - a grading operator is always a derivation
            G.euler = None
    return G


def u_of(L: LieAlgebra, flag: Filtration) -> Subspace:
    """Derivations ``X`` with ``X n_j ⊂ n_{j+1}`` for all ``j`` in ``[-k, k]``.

    Returned as a subspace of Q^(dim^2) holding row-major flattened matrices.
    """
    n = L.dim
    k = flag.k

    def var(r, c):
        return r * n + c

    eqs = []
    # raising: annihilators of n_{j+1} kill X v for v in n_j
    for j in range(k, -k - 1, -1):
        src = flag.step(j)
        if not src.vectors:
            continue
        ann = _annihilator(flag.step(j + 1))
        for a in ann:
            for v in src.vectors:
                eq = {}
                for r, ar in enumerate(a):
                    if not ar:
                        continue
                    for c, vc in enumerate(v):
                        if vc:
                            eq[var(r, c)] = eq.get(var(r, c), ZERO) + ar * vc
                eqs.append(eq)
    # derivation: X ad(b_i) - ad(b_i) X - ad(X b_i) = 0, entry (r, c)
    ads = [L.ad_basis(i) for i in range(n)]
    for i in range(n):
        A = ads[i]
        for r in range(n):
            for c in range(n):
                eq = {}
                for t in range(n):
                    a = A.rows[t][c]
                    if a:
                        eq[var(r, t)] = eq.get(var(r, t), ZERO) + a
                    a = A.rows[r][t]
                    if a:
                        eq[var(t, c)] = eq.get(var(t, c), ZERO) - a
                    a = ads[t].rows[r][c]
                    if a:
                        eq[var(t, i)] = eq.get(var(t, i), ZERO) - a
                if any(eq.values()):
                    eqs.append(eq)
    return Subspace.span(sparse_nullspace(eqs, n * n), n * n)


def _annihilator(s: Subspace) -> list:
    from .exact_linalg import nullspace_vectors

    if not s.vectors:
        return [tuple(ONE if j == i else ZERO for j in range(s.ambient_dim)) for i in range(s.ambient_dim)]
    return nullspace_vectors(Matrix._wrap(s.vectors, s.ambient_dim))


def unflatten(v, n: int) -> Matrix:
    v = tuple(v)
    return Matrix._wrap([v[r * n:(r + 1) * n] for r in range(n)], n)


def _powers(X: Matrix, bound: int):
    """``[X^0, ..., X^bound]``; raises unless ``X^(bound+1) = 0``."""
    pw = [Matrix.identity(X.nrows)]
    for _ in range(bound):
        nxt = pw[-1] @ X
        if nxt.is_zero():
            return pw
        pw.append(nxt)
    if not (pw[-1] @ X).is_zero():
        raise NotNilpotent(f"X^{bound + 1} is not zero")
    return pw


def _exp_from_powers(pw, sign=1) -> Matrix:
    n = pw[0].nrows
    rows = [[ZERO] * n for _ in range(n)]
    for j, P in enumerate(pw):
        c = Q(sign ** j, factorial(j))
        for r, prow in enumerate(P.rows):
            row = rows[r]
            for t, x in enumerate(prow):
                if x:
                    row[t] += c * x
    return Matrix._wrap(rows, n)


def nilpotent_exp(X: Matrix, bound: int) -> Matrix:
    """``sum_{j <= bound} X^j / j!``; requires ``X^(bound+1) = 0``."""
    return _exp_from_powers(_powers(X, bound))


def exp_pair(X: Matrix, bound: int) -> Tuple[Matrix, Matrix]:
    """``(e^X, e^-X)`` sharing the powers of X."""
    pw = _powers(X, bound)
    return _exp_from_powers(pw), _exp_from_powers(pw, -1)


def orbit_iteration(D: Matrix, X: Matrix, k: int) -> Tuple[Matrix, int]:
    """Solve ``e^Y D e^-Y = D + X`` for Y by successive correction.

    Starts at ``Y = -X`` and adds ``R_n / n`` where ``R_n`` is the current
    residual; each round removes the lowest filtration degree of the residual.
    Returns ``(Y, rounds)``.
    """
    Y = -X
    target = D + X
    rounds = 1
    for n in range(2, 2 * k + 2):
        ey, eny = exp_pair(Y, 2 * k)
        R = ey @ D @ eny - target
        if R.is_zero():
            return Y, rounds
        rounds += 1
        Y = Y + R.scale(Q(1, n))
    ey, eny = exp_pair(Y, 2 * k)
    if ey @ D @ eny != target:
        raise NotTransversal("correction did not terminate; X is not in the unipotent algebra")
    return Y, rounds


def torsor_solve(L: LieAlgebra, G0: Grading, m_target: Filtration) -> Tuple[Matrix, int]:
    """The unique ``Y`` in u(n+) with ``e^Y · n-(G0) = m_target``, and the round count."""
    plus = G0.plus_filtration()
    if not is_transversal(m_target, plus):
        raise NotTransversal("target is not transversal to the plus filtration")
    G1 = grading_from_transversal(L, plus, m_target)
    X = G1.derivation - G0.derivation
    return orbit_iteration(G0.derivation, X, G0.k)


def _ad_solver(G0: Grading) -> Tuple[SquareSolver, list]:
    def build():
        L = G0.algebra
        n = L.dim
        basis = [G0.basis.column(j) for j in G0.plus_block(1)]
        A = Matrix.from_columns([L.ad(b).vec() for b in basis], n * n)
        return SquareSolver(A), basis

    return G0._cached("ad_solver", build)


def solve_ad(G0: Grading, Y: Matrix) -> Tuple[Optional[tuple], bool]:
    """``v`` in n+_1 with ``ad v = Y`` and whether it is unique."""
    solver, basis = _ad_solver(G0)
    coeffs = solver.solve(Y.vec())
    if coeffs is None:
        return None, solver.full_rank
    n = G0.algebra.dim
    v = [ZERO] * n
    for c, b in zip(coeffs, basis):
        if c:
            for j, x in enumerate(b):
                if x:
                    v[j] += c * x
    return tuple(v), solver.full_rank


def chart_coordinates(L: LieAlgebra, G0: Grading, m: Filtration, report: Optional[dict] = None) -> Element:
    """The ``v`` in n+_1 with ``e^{ad v} · n-(G0) = m``."""
    if G0.euler is None:
        raise GradingError("chart coordinates need an inner grading")
    Y, rounds = torsor_solve(L, G0, m)
    v, unique = solve_ad(G0, Y)
    if v is None:
        raise NotTransversal("torsor element is not inner")
    if report is not None:
        report["unique"] = unique
        report["rounds"] = rounds
    return Element(L, v)


def chart_embed(L: LieAlgebra, G0: Grading, v) -> Filtration:
    """``e^{ad v} · n-(G0)``."""
    g = nilpotent_exp(L.ad(coords_of(v)), 2 * G0.k)
    return G0.minus_filtration().apply(g)
