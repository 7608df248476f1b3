"""Pure-Python exact kernels.

Reference implementation of the hot loops. The compiled module ``_kernels``
exposes the same four functions with identical results; ``kernels`` picks one
at import time.

Rows are sequences of rational scalars (``gmpy2.mpq`` or ``Fraction``).
All functions return fresh lists and never mutate their arguments.
"""

from math import lcm

from .scalar import Q, ZERO, ONE

NAME = "python"


def matmul(a, b, ncols):
    """Product of an (n x m) and an (m x ncols) matrix, skipping zeros."""
    nz = [[(j, v) for j, v in enumerate(row) if v] for row in b]
    out = []
    for row in a:
        acc = [ZERO] * ncols
        for k, aik in enumerate(row):
            if aik:
                for j, v in nz[k]:
                    acc[j] += aik * v
        out.append(acc)
    return out


def matvec(a, v):
    nz = [(j, x) for j, x in enumerate(v) if x]
    out = []
    for row in a:
        s = ZERO
        for j, x in nz:
            r = row[j]
            if r:
                s += r * x
        out.append(s)
    return out


def rref(a, ncols):
    """Gauss-Jordan elimination, pivoting on the first nonzero entry.

    Returns ``(rows, pivots)`` where ``rows`` is the reduced row-echelon form
    (same shape as ``a``) and ``pivots`` the pivot column of each nonzero row.
    """
    m = [list(row) for row in a]
    nrows = len(m)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and not m[p][c]:
            p += 1
        if p == nrows:
            continue
        if p != r:
            m[p], m[r] = m[r], m[p]
        prow = m[r]
        inv = ONE / prow[c]
        if inv != ONE:
            prow = [x * inv if x else x for x in prow]
            m[r] = prow
        tail = [(j, prow[j]) for j in range(c + 1, ncols) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            row = m[i]
            f = row[c]
            if f:
                row[c] = ZERO
                for j, x in tail:
                    row[j] -= f * x
        pivots.append(c)
        r += 1
    return m, pivots


def det(a):
    """Determinant by fraction-free Bareiss elimination.

    Each row is first scaled to integers by the lcm of its denominators; the
    integer determinant is then divided by the product of the scales.
    """
    n = len(a)
    if n == 0:
        return ONE
    scale = 1
    m = []
    for row in a:
        s = lcm(*(int(Q(x).denominator) for x in row))
        scale *= s
        m.append([int(Q(x) * s) for x in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for p in range(k + 1, n):
                if m[p][k]:
                    m[k], m[p] = m[p], m[k]
                    sign = -sign
                    break
            else:
                return ZERO
        pk = m[k][k]
        rowk = m[k]
        for i in range(k + 1, n):
            rowi = m[i]
            f = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * pk - f * rowk[j]) // prev
            rowi[k] = 0
        prev = pk
    return Q(sign * m[n - 1][n - 1], scale)
