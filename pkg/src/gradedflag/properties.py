"""Seeded property suites over catalog fixtures.

Each suite draws its instances from a ``random.Random`` seeded by the
caller, so a (suite, fixture, trials, seed) tuple always yields the same
report. Coordinates are small integers in ``-3..3``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

from .catalog import CatalogEntry
from .elementary_group import (MINUS, PLUS, GroupElement, act_geometric, act_in_chart, bergman,
                               chart_failures, cocycle_sides, denominators, in_chart, psi_graded,
                               psi_recursion, series)
from .exact_linalg import Matrix, det, invert
from .filtration import (NotTransversal, chart_coordinates, chart_embed,
                         grading_from_transversal, is_transversal, nilpotent_exp, orbit_iteration,
                         torsor_solve, u_of, unflatten)
from .flag_geometry import (bundle_transport_sides, canonical_kernel, canonical_kernel_matrix,
                            canonical_kernel_reverse, kernel_equivariance_sides, kernel_transversality,
                            point, quotient_coords, stabilizes, tangent_rep)
from .grading import Grading, graded_bracket, validate_grading
from .polynomial import Poly
from .scalar import Q, ZERO
from .vector_fields import (closed_form_3graded, closed_form_5graded_cases, domain_coords, realize,
                            realize_numeric, transform_sides)

COORD_RANGE = 3


@dataclass
class SuiteResult:
    suite: str
    fixture: str
    trials: int = 0
    passed: int = 0
    skipped: int = 0
    failures: List[str] = field(default_factory=list)
    stats: Dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures and self.passed == self.trials

    def record(self, ok: bool, what: str):
        self.trials += 1
        if ok:
            self.passed += 1
        else:
            self.failures.append(what)

    def bump(self, key: str, by: int = 1):
        self.stats[key] = self.stats.get(key, 0) + by

    def as_dict(self) -> dict:
        return {"suite": self.suite, "fixture": self.fixture, "trials": self.trials,
                "passed": self.passed, "skipped": self.skipped, "ok": self.ok,
                "failures": sorted(self.failures)[:20], "stats": dict(sorted(self.stats.items()))}


# sampling


def rand_int(rng: random.Random) -> int:
    return rng.randint(-COORD_RANGE, COORD_RANGE)


def rand_nonzero(rng: random.Random):
    return Q(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 2]))


def rand_in_block(G0: Grading, rng: random.Random, block) -> tuple:
    g = [ZERO] * G0.algebra.dim
    for j in block:
        g[j] = Q(rand_int(rng))
    return G0.from_graded(g)


def rand_plus(G0: Grading, rng) -> tuple:
    return rand_in_block(G0, rng, G0.plus_block(1))


def rand_minus(G0: Grading, rng) -> tuple:
    return rand_in_block(G0, rng, G0.minus_block(1))


def rand_element(G0: Grading, rng) -> tuple:
    return tuple(Q(rand_int(rng)) for _ in range(G0.algebra.dim))


def rand_word(G0: Grading, rng, length: int = 3) -> GroupElement:
    side = rng.choice([PLUS, MINUS])
    word = []
    for _ in range(length):
        word.append((side, rand_plus(G0, rng) if side == PLUS else rand_minus(G0, rng)))
        side = MINUS if side == PLUS else PLUS
    return GroupElement(G0, word)


def _scaled(v, t):
    return tuple(a * t for a in v)


def boundary_instance(entry: CatalogEntry, rng) -> Optional[tuple]:
    """``(g, x)`` with ``x = t e`` and ``g = e^{ad v} e^{-ad f/t}``: the image leaves the chart."""
    if entry.top_pair is None:
        return None
    G0 = entry.grading
    e, f = entry.top_pair
    t = rand_nonzero(rng)
    g = GroupElement(G0, [(PLUS, rand_plus(G0, rng)), (MINUS, _scaled(f, -1 / t))])
    return g, _scaled(e, t)


def boundary_mover(entry: CatalogEntry, rng) -> Optional[GroupElement]:
    """``e^{-ad f/t} e^{ad t e}``: moves the base point of the + side off the chart."""
    if entry.top_pair is None:
        return None
    G0 = entry.grading
    e, f = entry.top_pair
    t = rand_nonzero(rng)
    return GroupElement(G0, [(MINUS, _scaled(f, -1 / t)), (PLUS, _scaled(e, t))])


def rand_pair(entry: CatalogEntry, rng, boundary: bool = False):
    """Filtrations ``(g · n+, g' · n-)``; with ``boundary`` the pair is built non-transversal."""
    G0 = entry.grading
    g = rand_word(G0, rng)
    if boundary and entry.top_pair is not None:
        h = g * boundary_mover(entry, rng)
    else:
        h = rand_word(G0, rng)
    return point(G0, MINUS, g), point(G0, PLUS, h)


def rand_parabolic(G0: Grading, rng, sign: str = MINUS, attempts: int = 20) -> GroupElement:
    """A product stabilizing the base filtration of ``-`` (P-) or ``+`` (P+) type."""
    grading = G0 if sign == MINUS else G0.opposite()
    zero = (ZERO,) * G0.algebra.dim
    for _ in range(attempts):
        g = rand_word(grading, rng)
        v = act_in_chart(G0.algebra, grading, g, zero)
        if v is None:
            continue
        p = GroupElement(grading, [(PLUS, (-v).coords)]) * g
        if sign == MINUS:
            return p
        swap = {PLUS: MINUS, MINUS: PLUS}
        return GroupElement(G0, [(swap[s], w) for s, w in p.word])
    raise RuntimeError("could not sample a chart element")


# suites


def suite_transversal(entry: CatalogEntry, rng, trials: int) -> SuiteResult:
    """Transversality predicate vs recovery of a common grading."""
    res = SuiteResult("transversal", entry.name)
    L = entry.algebra
    for t in range(trials):
        m_pt, n_pt = rand_pair(entry, rng, boundary=(t % 4 == 3))
        m, n = m_pt.filtration, n_pt.filtration
        pred = is_transversal(m, n)
        try:
            G1 = grading_from_transversal(L, m, n)
            recovered = (G1.plus_filtration() == m and G1.minus_filtration() == n
                         and not validate_grading(L, G1))
        except NotTransversal:
            recovered = False
        res.bump("transversal" if pred else "not transversal")
        res.record(pred == recovered, f"trial {t}: predicate {pred}, recovery {recovered}")
    return res


def suite_torsor(entry: CatalogEntry, rng, trials: int) -> SuiteResult:
    """``torsor_solve(e^{ad v} · n-) = ad v`` and injectivity of ``v -> e^{ad v} · n-``."""
    res = SuiteResult("torsor", entry.name)
    L, G0 = entry.algebra, entry.grading
    seen = {}
    for t in range(trials):
        v = rand_plus(G0, rng)
        m = chart_embed(L, G0, v)
        Y, rounds = torsor_solve(L, G0, m)
        ok = Y == L.ad(v) and rounds <= 2 * G0.k + 1
        if G0.euler is not None:
            ok = ok and chart_coordinates(L, G0, m).coords == v
        prev = seen.setdefault(m, v)
        ok = ok and prev == v
        res.record(ok, f"trial {t}: v = {L.format(v)}")
    res.stats["distinct"] = len(seen)
    return res


def suite_orbit(entry: CatalogEntry, rng, trials: int) -> SuiteResult:
    """The correction iteration solves ``e^Y D e^-Y = D + X`` for random ``X`` in u(n+)."""
    res = SuiteResult("orbit", entry.name)
    L, G0 = entry.algebra, entry.grading
    k, n = G0.k, L.dim
    basis = u_of(L, G0.plus_filtration()).vectors
    D = G0.derivation
    for t in range(trials):
        flat = [ZERO] * (n * n)
        for b in basis:
            c = rand_int(rng)
            if c:
                flat = [a + c * x for a, x in zip(flat, b)]
        X = unflatten(flat, n)
        Y, rounds = orbit_iteration(D, X, k)
        ey = nilpotent_exp(Y, 2 * k)
        ok = rounds <= 2 * k + 1 and ey @ D @ invert(ey) == D + X
        res.bump(f"rounds={rounds}")
        res.record(ok, f"trial {t}: rounds {rounds}")
    return res


def suite_chart(entry: CatalogEntry, rng, trials: int) -> SuiteResult:
    """Determinant test, transversality and the psi recursion agree."""
    res = SuiteResult("chart", entry.name)
    L, G0 = entry.algebra, entry.grading
    plus = G0.plus_filtration()
    for t in range(trials):
        inst = boundary_instance(entry, rng) if t % 5 == 4 else None
        g, x = inst if inst else (rand_word(G0, rng), rand_plus(G0, rng))
        by_det = not chart_failures(G0, g, x)
        by_flag = is_transversal(chart_embed(L, G0, x).apply(g.matrix), plus)
        by_psi = psi_recursion(L, G0, g, x) is not None
        res.bump("inside" if by_det else "outside")
        res.record(by_det == by_flag == by_psi, f"trial {t}: det {by_det}, flag {by_flag}, psi {by_psi}")
    return res


def suite_cocycle(entry: CatalogEntry, rng, trials: int) -> SuiteResult:
    """``d_{g1 g2}(x) = d_{g2}(x) d_Id(g2·x)^{-1} d_{g1}(g2·x)`` on every layer."""
    res = SuiteResult("cocycle", entry.name)
    G0 = entry.grading
    done = 0
    while done < trials:
        g1, g2, x = rand_word(G0, rng), rand_word(G0, rng), rand_plus(G0, rng)
        if not in_chart(G0, g2, x):
            res.skipped += 1
            continue
        ok = True
        for i in range(1, G0.k + 1):
            lhs, rhs = cocycle_sides(G0, g1, g2, x, i)
            ok = ok and lhs == rhs
        res.record(ok, f"instance {done}")
        done += 1
    return res


def suite_action(entry: CatalogEntry, rng, trials: int) -> SuiteResult:
    """Birational chart action vs the geometric action read through chart coordinates."""
    res = SuiteResult("action", entry.name)
    L, G0 = entry.algebra, entry.grading
    done = 0
    while done < trials:
        g, x = rand_word(G0, rng), rand_plus(G0, rng)
        y = act_in_chart(L, G0, g, x)
        if y is None:
            res.skipped += 1
            if act_geometric(L, G0, g, x) is not None:
                res.record(False, f"instance {done}: geometric point exists outside the chart")
            continue
        geo = act_geometric(L, G0, g, x)
        res.record(geo is not None and geo.coords == y.coords, f"instance {done}")
        done += 1
    for what, ok in psi_identities(G0, rng):
        res.record(ok, what)
    return res


def psi_identities(G0: Grading, rng) -> list:
    """``psi_3 = 1/2 [v1, v2]`` and ``psi_4 = [v1, v3] + 1/6 [v1, [v1, v2]]``.

    Checked symbolically with the coordinates of ``v`` as variables and once
    numerically through the algebra's own bracket.
    """
    out = []
    if G0.k < 3:
        return out
    gb = graded_bracket(G0)
    blk = G0.plus_block(1)
    nv = len(blk)
    zero = Poly(nv)
    v = [zero] * gb.dim
    for t, j in enumerate(blk):
        v[j] = Poly.var(nv, t)
    parts = {d: gb.part(v, d, zero) for d in range(1, 5)}

    def br(a, b):
        return gb.bracket(a, b, zero)

    half, sixth = Q(1, 2), Q(1, 6)
    p3 = [a * half if a else a for a in br(parts[1], parts[2])]
    out.append(("psi_3 symbolic", psi_graded(G0, 3, v, zero) == gb.part(p3, 3, zero)))
    if G0.k >= 4:
        inner = br(parts[1], br(parts[1], parts[2]))
        p4 = [a + b * sixth for a, b in zip(br(parts[1], parts[3]), inner)]
        out.append(("psi_4 symbolic", psi_graded(G0, 4, v, zero) == gb.part(p4, 4, zero)))
    # numeric, in standard coordinates
    L = G0.algebra
    x = rand_plus(G0, rng)
    comp = {d: G0.project_coords(x, d) for d in range(1, G0.k + 1)}
    E_minus = [ZERO] * L.dim
    full = nilpotent_exp(L.ad(x), 2 * G0.k)
    if G0.euler is not None:
        E = G0.euler.coords
        E_minus = tuple(a - b for a, b in zip(E, full @ E))
        ser = G0.from_graded(series(G0, G0.to_graded(x)))
        out.append(("series equals E - e^{ad v} E", tuple(ser) == tuple(E_minus)))
    b12 = L.bracket_coords(comp[1], comp[2])
    want3 = tuple(a / 2 for a in b12)
    got3 = G0.from_graded(psi_graded(G0, 3, G0.to_graded(x)))
    out.append(("psi_3 numeric", tuple(got3) == G0.project_coords(want3, 3)))
    return out


def suite_homography(entry: CatalogEntry, rng, trials: int) -> SuiteResult:
    """Two-block gl: chart action vs the printed fractional-linear formula."""
    res = SuiteResult("homography", entry.name)
    if not entry.blocks or len(entry.blocks) != 2 or not entry.name.startswith("gl("):
        res.stats["inapplicable"] = 1
        return res
    L, G0 = entry.algebra, entry.grading
    p, q = entry.blocks
    n = p + q
    done = 0
    attempts = 0
    while done < trials:
        attempts += 1
        inst = boundary_instance(entry, rng) if attempts % 5 == 0 else None
        g, x = inst if inst else (rand_word(G0, rng), rand_plus(G0, rng))
        G = Matrix.identity(n)
        for _, v in g.word:
            G = G @ nilpotent_exp(unflatten(v, n), n)
        A = G.submatrix(range(p), range(p))
        B = G.submatrix(range(p), range(p, n))
        C = G.submatrix(range(p, n), range(p))
        Dm = G.submatrix(range(p, n), range(p, n))
        X = unflatten(x, n).submatrix(range(p), range(p, n))
        # the printed formula orders the blocks (C^{n-p}, C^p); relabel (A, B, C, D) -> (D, C, B, A)
        A_, B_, C_, D_ = Dm, C, B, A
        denom = A_ + B_ @ X
        y = act_in_chart(L, G0, g, x)
        singular = det(denom) == 0
        if singular or y is None:
            res.bump("outside")
            res.record(singular and y is None, f"attempt {attempts}: det zero {singular}, chart {y is not None}")
            continue
        want = (C_ + D_ @ X) @ invert(denom)
        got = unflatten(y.coords, n).submatrix(range(p), range(p, n))
        res.record(got == want, f"attempt {attempts}")
        done += 1
    return res


def suite_realize(entry: CatalogEntry, rng, trials: int) -> SuiteResult:
    """Symbolic realization vs numeric evaluation, linearity, degree bound, closed forms."""
    res = SuiteResult("realize", entry.name)
    L, G0 = entry.algebra, entry.grading
    k = G0.k
    if k == 0:
        res.stats["inapplicable"] = 1
        return res
    for t in range(trials):
        i = rng.randint(1, k)
        Y, Z = rand_element(G0, rng), rand_element(G0, rng)
        a, b = rand_int(rng), rand_int(rng)
        pm = realize(L, G0, Y, i)
        xg = [Q(rand_int(rng)) for _ in range(pm.input_dim)]
        x = G0.from_graded(xg + [ZERO] * (L.dim - len(xg)))
        ok = pm(xg) == realize_numeric(L, G0, Y, i, x)
        ok = ok and pm.degree() <= 2 * k
        comb = tuple(a * y + b * z for y, z in zip(Y, Z))
        ok = ok and realize(L, G0, comb, i) == pm.scale(a) + realize(L, G0, Z, i).scale(b)
        res.record(ok, f"trial {t}: layer {i}")
    for what, ok in closed_form_checks(entry, rng):
        res.record(ok, what)
    return res


def closed_form_checks(entry: CatalogEntry, rng) -> list:
    """Closed forms on every basis vector of every layer, plus one random element."""
    L, G0 = entry.algebra, entry.grading
    out = []
    top = G0.layers[G0.k].vectors
    for v in top:
        pm = realize(L, G0, v, 1)
        out.append(("top layer constant", pm.degree() <= 0))
    samples = [(f"layer {d} basis {j}", v) for d in G0.degrees for j, v in enumerate(G0.layers[d].vectors)]
    samples.append(("random element", rand_element(G0, rng)))
    if G0.k == 1:
        for what, Y in samples:
            out.append((f"3-graded {what}", realize(L, G0, Y, 1) == closed_form_3graded(L, G0, Y)))
    elif G0.k == 2:
        for what, Y in samples:
            cases = closed_form_5graded_cases(L, G0, Y)
            for (i, d), pm in sorted(cases.items()):
                Yd = G0.project_coords(Y, d)
                out.append((f"5-graded i={i} d={d} {what}", realize(L, G0, Yd, i) == pm))
    return out


def suite_transform(entry: CatalogEntry, rng, trials: int) -> SuiteResult:
    """Transformation law of the realization under the group, and its linear special case."""
    res = SuiteResult("transform", entry.name)
    L, G0 = entry.algebra, entry.grading
    done = 0
    while done < trials:
        g, x = rand_word(G0, rng), rand_plus(G0, rng)
        if not in_chart(G0, g, x):
            res.skipped += 1
            continue
        Y = rand_element(G0, rng)
        ok = True
        for i in range(1, G0.k + 1):
            lhs, rhs = transform_sides(L, G0, g, Y, x, i)
            ok = ok and lhs == rhs
            # Y = v in n+_i: (g^{-1} v)~(x) = d_g(x)_i v
            v = rand_in_block(G0, rng, G0.plus_block(i))
            gv = g.inverse_matrix @ v
            left = realize(L, G0, gv, i, chart_layer=1)(domain_coords(G0, x, 1))
            vi = domain_coords(G0, v, i)
            ok = ok and left == denominators(G0, g, x)[i] @ vi
        res.record(ok, f"instance {done}")
        done += 1
    return res


def _witness_to_canonical(m_pt, n_pt, i: int, Kw: Matrix) -> Matrix:
    """Transport a witness-frame kernel matrix to canonical frames.

    Witness frames are the graded coordinates of n+_i pushed forward by the
    witnesses: into ``m_i`` by ``h`` and into ``g / n_{-i+1}`` by ``g``.
    """
    G0 = n_pt.grading
    cols = [G0.basis.column(j) for j in G0.plus_block(i)]
    src, mod = m_pt.filtration.step(i), n_pt.filtration.step(1 - i)
    S = Matrix.from_columns([src.coordinates(m_pt.witness.matrix @ c) for c in cols], src.dim)
    T = Matrix.from_columns([quotient_coords(mod, n_pt.witness.matrix @ c) for c in cols], len(cols))
    return T @ Kw @ invert(S)


def suite_kernel(entry: CatalogEntry, rng, trials: int) -> SuiteResult:
    """Equivariance, kernel invertibility vs transversality, and the Bergman form on chart pairs."""
    res = SuiteResult("kernel", entry.name)
    L, G0 = entry.algebra, entry.grading
    for t in range(trials):
        m_pt, n_pt = rand_pair(entry, rng, boundary=(t % 4 == 3))
        g = rand_word(G0, rng)
        ok = True
        for i in range(1, G0.k + 1):
            lhs, rhs = kernel_equivariance_sides(g, m_pt.filtration, n_pt.filtration, i)
            ok = ok and lhs == rhs
            Kw = canonical_kernel(m_pt, n_pt, i).matrix
            ok = ok and _witness_to_canonical(m_pt, n_pt, i, Kw) == canonical_kernel_matrix(
                m_pt.filtration, n_pt.filtration, i)
        pred = is_transversal(m_pt.filtration, n_pt.filtration)
        ok = ok and kernel_transversality(m_pt, n_pt) == pred
        res.bump("transversal" if pred else "not transversal")
        res.record(ok, f"trial {t}")
    for t in range(max(1, trials // 4)):
        x, y = rand_plus(G0, rng), rand_minus(G0, rng)
        m_pt = point(G0, MINUS, GroupElement(G0, [(MINUS, y)]))
        n_pt = point(G0, PLUS, GroupElement(G0, [(PLUS, x)]))
        neg_y = tuple(-a for a in y)
        ok = all(canonical_kernel(m_pt, n_pt, i).matrix == bergman(L, G0, x, neg_y, i).matrix
                 for i in range(1, G0.k + 1))
        ok = ok and all(canonical_kernel_reverse(m_pt, n_pt, i)
                        == bergman(L, G0, x, neg_y, i, MINUS).matrix for i in range(1, G0.k + 1))
        res.record(ok, f"chart pair {t}")
    return res


def suite_rho(entry: CatalogEntry, rng, trials: int) -> SuiteResult:
    """rho+-_i multiplicative on both parabolics; stabilizer law; bundle transport."""
    res = SuiteResult("rho", entry.name)
    G0 = entry.grading
    bases = {MINUS: G0.minus_filtration(), PLUS: G0.plus_filtration()}
    for t in range(trials):
        par = MINUS if t % 2 == 0 else PLUS
        p1, p2 = rand_parabolic(G0, rng, par), rand_parabolic(G0, rng, par)
        ok = stabilizes(p1, bases[par]) and stabilizes(p2, bases[par])
        for i in range(1, G0.k + 1):
            for sign in (PLUS, MINUS):
                prod = tangent_rep(p1 * p2, i, sign).matrix
                ok = ok and prod == tangent_rep(p1, i, sign).matrix @ tangent_rep(p2, i, sign).matrix
        if par == MINUS:
            g1 = rand_word(G0, rng)
            i = rng.randint(1, max(1, G0.k))
            if G0.k:
                coords = [Q(rand_int(rng)) for _ in G0.plus_block(i)]
                a, b = bundle_transport_sides(g1, g1 * p1, coords, i)
                ok = ok and a == b
        res.bump(f"P{par}")
        res.record(ok, f"trial {t}: P{par}")
    return res


SUITES: Dict[str, Callable] = {
    "transversal": suite_transversal,
    "torsor": suite_torsor,
    "orbit": suite_orbit,
    "chart": suite_chart,
    "cocycle": suite_cocycle,
    "action": suite_action,
    "homography": suite_homography,
    "realize": suite_realize,
    "transform": suite_transform,
    "kernel": suite_kernel,
    "rho": suite_rho,
}


def run_suite(name: str, entry: CatalogEntry, trials: int, seed: int) -> SuiteResult:
    try:
        fn = SUITES[name]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))}") from None
    return fn(entry, random.Random(seed), trials)
