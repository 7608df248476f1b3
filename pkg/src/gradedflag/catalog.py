"""Built-in graded Lie algebras."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .exact_linalg import Matrix, solve
from .grading import Grading, grading_from_euler, validate_grading
from .lie_algebra import LieAlgebra
from .scalar import Q, ZERO

DEFAULT_SIZE_CAP = 6


@dataclass
class CatalogEntry:
    name: str
    algebra: LieAlgebra
    grading: Grading
    notes: str = ""
    # an sl2-like pair spanning the extreme layers, used to build boundary cases
    top_pair: Optional[tuple] = None
    blocks: Optional[tuple] = None
    extras: dict = field(default_factory=dict)


def _unit_matrix(n, i, j):
    return Matrix._wrap([[Q(1) if (r, c) == (i, j) else ZERO for c in range(n)] for r in range(n)], n)


def matrix_algebra(mats: Sequence[Matrix], labels, name="") -> LieAlgebra:
    """Lie algebra spanned by the given matrices under the commutator."""
    d = len(mats)
    coord = Matrix.from_columns([m.vec() for m in mats], mats[0].nrows ** 2)
    comms = []
    for a in mats:
        for b in mats:
            comms.append((a @ b - b @ a).vec())
    sol = solve(coord, Matrix.from_columns(comms, coord.nrows))
    if sol is None:
        raise ValueError("matrices do not span a Lie algebra")
    cols = sol.columns()
    structure = [[cols[i * d + j] for j in range(d)] for i in range(d)]
    return LieAlgebra(structure, labels, name=name)


def _label(i, j, n):
    return f"E{i + 1}{j + 1}" if n < 10 else f"E{i + 1},{j + 1}"


def _block_index(sizes):
    out = []
    for a, s in enumerate(sizes):
        out.extend([a] * s)
    return out


def sl2() -> CatalogEntry:
    L = LieAlgebra(
        {(1, 0): [2, 0, 0], (0, 1): [-2, 0, 0], (1, 2): [0, 0, -2],
         (2, 1): [0, 0, 2], (0, 2): [0, 1, 0], (2, 0): [0, -1, 0]},
        labels=("e", "h", "f"), name="sl2")
    G = grading_from_euler(L, [0, Q(1, 2), 0], 1)
    return CatalogEntry("sl2", L, G, "basis (e, h, f); Euler element h/2",
                        top_pair=((1, 0, 0), (0, 0, 1)))


def gl_blocks(sizes: Sequence[int], cap: int = DEFAULT_SIZE_CAP) -> CatalogEntry:
    """gl_n graded by block position: block (a, b) has degree b - a."""
    sizes = tuple(int(s) for s in sizes)
    if not sizes or any(s <= 0 for s in sizes):
        raise ValueError("block sizes must be positive")
    n = sum(sizes)
    if n > cap:
        raise ValueError(f"total size {n} exceeds the cap {cap}")
    m = len(sizes)
    dim = n * n
    labels = [_label(i, j, n) for i in range(n) for j in range(n)]
    structure = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    v = [0] * dim
                    if j == k:
                        v[i * n + l] += 1
                    if l == i:
                        v[k * n + j] -= 1
                    if any(v):
                        structure[(i * n + j, k * n + l)] = v
    name = "gl(" + ",".join(map(str, sizes)) + ")"
    L = LieAlgebra(structure, labels, dim=dim, name=name)
    blk = _block_index(sizes)
    euler = [0] * dim
    for i in range(n):
        euler[i * n + i] = (m - 1) - blk[i]
    G = grading_from_euler(L, euler, m - 1)
    e = [0] * dim
    f = [0] * dim
    e[n - 1] = 1
    f[(n - 1) * n] = 1
    return CatalogEntry(name, L, G, "matrix units E_ij in row-major order; block-diagonal Euler element",
                        top_pair=(tuple(e), tuple(f)), blocks=sizes)


def sl_blocks(sizes: Sequence[int], cap: int = DEFAULT_SIZE_CAP) -> CatalogEntry:
    """sl_n with the block grading and a traceless Euler element."""
    sizes = tuple(int(s) for s in sizes)
    n = sum(sizes)
    if n > cap:
        raise ValueError(f"total size {n} exceeds the cap {cap}")
    m = len(sizes)
    mats, labels = [], []
    for i in range(n):
        for j in range(n):
            if i != j:
                mats.append(_unit_matrix(n, i, j))
                labels.append(_label(i, j, n))
    for i in range(n - 1):
        mats.append(_unit_matrix(n, i, i) - _unit_matrix(n, i + 1, i + 1))
        labels.append(f"H{i + 1}")
    name = "sl(" + ",".join(map(str, sizes)) + ")"
    L = matrix_algebra(mats, labels, name)
    blk = _block_index(sizes)
    w = [Q((m - 1) - blk[i]) for i in range(n)]
    mean = sum(w, ZERO) / n
    diag = Matrix.diagonal([x - mean for x in w])
    coord = Matrix.from_columns([mm.vec() for mm in mats], n * n)
    euler = solve(coord, Matrix.from_columns([diag.vec()], n * n)).column(0)
    G = grading_from_euler(L, euler, m - 1)
    e_idx = labels.index(_label(0, n - 1, n))
    f_idx = labels.index(_label(n - 1, 0, n))
    d = len(mats)
    e = tuple(1 if j == e_idx else 0 for j in range(d))
    f = tuple(1 if j == f_idx else 0 for j in range(d))
    return CatalogEntry(name, L, G, "off-diagonal matrix units then H_i = E_ii - E_(i+1)(i+1)",
                        top_pair=(e, f), blocks=sizes)


def abelian(n: int, k: int = 1) -> CatalogEntry:
    L = LieAlgebra({}, labels=[f"a{i + 1}" for i in range(n)], dim=n, name=f"abelian({n})")
    G = grading_from_euler(L, [0] * n, k)
    return CatalogEntry(f"abelian({n})", L, G, "zero bracket; everything in degree 0")


def by_name(name: str) -> CatalogEntry:
    """``sl2``, ``gl(2,2)``, ``sl(2,2)``, ``abelian(3)`` and similar."""
    name = name.strip().replace(" ", "")
    if name == "sl2":
        return sl2()
    for prefix, fn in (("gl(", gl_blocks), ("sl(", sl_blocks), ("abelian(", abelian)):
        if name.startswith(prefix) and name.endswith(")"):
            args = [int(a) for a in name[len(prefix):-1].split(",") if a]
            return fn(args) if fn is not abelian else fn(*args)
    raise KeyError(f"unknown catalog entry {name!r}")


NAMES = ("sl2", "gl(1,1)", "gl(2,2)", "gl(2,1,1)", "gl(1,1,1)", "gl(1,1,1,1,1)", "sl(2,2)", "abelian(3)")


def check_entry(entry: CatalogEntry) -> list:
    from .filtration import is_filtration

    L, G = entry.algebra, entry.grading
    report = [{"check": "jacobi", "detail": t} for t in L.check_jacobi()]
    report += validate_grading(L, G)
    report += is_filtration(L, G.plus_filtration())
    report += is_filtration(L, G.minus_filtration())
    return report
