# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled exact kernels over GMP rationals.

Same contract as ``_pykernels``: inputs are row sequences of ``gmpy2.mpq``,
outputs are fresh lists of ``gmpy2.mpq``. Arithmetic runs on raw ``mpq_t``
and ``mpz_t`` values without touching Python objects in the inner loops.
"""

from libc.stdlib cimport malloc, free
from gmpy2 cimport (mpq, mpz, import_gmpy2, GMPy_MPQ_New, MPQ_Check,
                    mpq_ptr, mpq_srcptr, mpq_t, mpz_t, mpz_ptr, mpz_srcptr)

cdef extern from "gmp.h":
    void mpq_init(mpq_ptr)
    void mpq_clear(mpq_ptr)
    void mpq_set(mpq_ptr, mpq_srcptr)
    void mpq_set_ui(mpq_ptr, unsigned long, unsigned long)
    void mpq_add(mpq_ptr, mpq_srcptr, mpq_srcptr)
    void mpq_sub(mpq_ptr, mpq_srcptr, mpq_srcptr)
    void mpq_mul(mpq_ptr, mpq_srcptr, mpq_srcptr)
    void mpq_div(mpq_ptr, mpq_srcptr, mpq_srcptr)
    void mpq_inv(mpq_ptr, mpq_srcptr)
    int mpq_sgn(mpq_srcptr)
    mpz_ptr mpq_numref(mpq_ptr)
    mpz_ptr mpq_denref(mpq_ptr)
    void mpq_set_num(mpq_ptr, mpz_srcptr)
    void mpq_set_den(mpq_ptr, mpz_srcptr)
    void mpq_canonicalize(mpq_ptr)

    void mpz_init(mpz_ptr)
    void mpz_clear(mpz_ptr)
    void mpz_set(mpz_ptr, mpz_srcptr)
    void mpz_set_ui(mpz_ptr, unsigned long)
    void mpz_mul(mpz_ptr, mpz_srcptr, mpz_srcptr)
    void mpz_sub(mpz_ptr, mpz_srcptr, mpz_srcptr)
    void mpz_neg(mpz_ptr, mpz_srcptr)
    void mpz_divexact(mpz_ptr, mpz_srcptr, mpz_srcptr)
    void mpz_lcm(mpz_ptr, mpz_srcptr, mpz_srcptr)
    int mpz_sgn(mpz_srcptr)
    void mpz_swap(mpz_ptr, mpz_ptr)

import_gmpy2()

NAME = "compiled"

cdef mpq _ZERO = GMPy_MPQ_New(NULL)
mpq_set_ui(_ZERO.q, 0, 1)


cdef inline mpq _box(mpq_srcptr x):
    if mpq_sgn(x) == 0:
        return _ZERO
    cdef mpq res = GMPy_MPQ_New(NULL)
    mpq_set(res.q, x)
    return res


cdef inline mpq _as_mpq(object x):
    if not MPQ_Check(x):
        raise TypeError("compiled kernels require gmpy2.mpq entries")
    return <mpq>x


cdef class _QBuf:
    """Owned, initialised array of mpq_t."""
    cdef mpq_t* data
    cdef Py_ssize_t n

    def __cinit__(self, Py_ssize_t n):
        cdef Py_ssize_t i
        self.n = n
        self.data = <mpq_t*>malloc(max(n, 1) * sizeof(mpq_t))
        if self.data == NULL:
            raise MemoryError()
        for i in range(n):
            mpq_init(self.data[i])

    def __dealloc__(self):
        cdef Py_ssize_t i
        if self.data != NULL:
            for i in range(self.n):
                mpq_clear(self.data[i])
            free(self.data)


def matmul(a, b, Py_ssize_t ncols):
    """Product of an (n x m) and an (m x ncols) matrix, skipping zeros."""
    cdef Py_ssize_t m = len(b)
    cdef Py_ssize_t i, j, k, t
    cdef list brows = []
    cdef list nzcols = []
    cdef list out = []
    cdef list row_out
    cdef mpq x, y
    cdef _QBuf acc = _QBuf(ncols)
    cdef mpq_t tmp
    cdef list bk_vals
    cdef list bk_cols
    for k in range(m):
        bk_vals = []
        bk_cols = []
        row = b[k]
        for j in range(ncols):
            y = _as_mpq(row[j])
            if mpq_sgn(y.q) != 0:
                bk_vals.append(y)
                bk_cols.append(j)
        brows.append(bk_vals)
        nzcols.append(bk_cols)
    mpq_init(tmp)
    try:
        for arow in a:
            for j in range(ncols):
                mpq_set_ui(acc.data[j], 0, 1)
            for k in range(m):
                x = _as_mpq(arow[k])
                if mpq_sgn(x.q) == 0:
                    continue
                bk_vals = <list>brows[k]
                bk_cols = <list>nzcols[k]
                for t in range(len(bk_vals)):
                    y = <mpq>bk_vals[t]
                    j = <Py_ssize_t>bk_cols[t]
                    mpq_mul(tmp, x.q, y.q)
                    mpq_add(acc.data[j], acc.data[j], tmp)
            row_out = [_box(acc.data[j]) for j in range(ncols)]
            out.append(row_out)
    finally:
        mpq_clear(tmp)
    return out


def matvec(a, v):
    cdef Py_ssize_t n = len(v)
    cdef Py_ssize_t j, t
    cdef mpq x, r
    cdef mpq_t s, tmp
    cdef list out = []
    cdef list vals = []
    cdef list cols = []
    for j in range(n):
        x = _as_mpq(v[j])
        if mpq_sgn(x.q) != 0:
            vals.append(x)
            cols.append(j)
    mpq_init(s)
    mpq_init(tmp)
    try:
        for row in a:
            mpq_set_ui(s, 0, 1)
            for t in range(len(vals)):
                r = _as_mpq(row[<Py_ssize_t>cols[t]])
                if mpq_sgn(r.q) != 0:
                    x = <mpq>vals[t]
                    mpq_mul(tmp, r.q, x.q)
                    mpq_add(s, s, tmp)
            out.append(_box(s))
    finally:
        mpq_clear(s)
        mpq_clear(tmp)
    return out


def rref(a, Py_ssize_t ncols):
    """Gauss-Jordan elimination, pivoting on the first nonzero entry."""
    cdef Py_ssize_t nrows = len(a)
    cdef Py_ssize_t i, j, c, p, r
    cdef _QBuf buf = _QBuf(nrows * ncols)
    cdef mpq_t* m = buf.data
    cdef mpq_t inv, f, tmp
    cdef list pivots = []
    cdef mpq x
    for i in range(nrows):
        row = a[i]
        for j in range(ncols):
            x = _as_mpq(row[j])
            mpq_set(m[i * ncols + j], x.q)
    mpq_init(inv)
    mpq_init(f)
    mpq_init(tmp)
    try:
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            p = r
            while p < nrows and mpq_sgn(m[p * ncols + c]) == 0:
                p += 1
            if p == nrows:
                continue
            if p != r:
                for j in range(ncols):
                    mpq_set(tmp, m[p * ncols + j])
                    mpq_set(m[p * ncols + j], m[r * ncols + j])
                    mpq_set(m[r * ncols + j], tmp)
            mpq_inv(inv, m[r * ncols + c])
            for j in range(c, ncols):
                if mpq_sgn(m[r * ncols + j]) != 0:
                    mpq_mul(m[r * ncols + j], m[r * ncols + j], inv)
            for i in range(nrows):
                if i == r or mpq_sgn(m[i * ncols + c]) == 0:
                    continue
                mpq_set(f, m[i * ncols + c])
                mpq_set_ui(m[i * ncols + c], 0, 1)
                for j in range(c + 1, ncols):
                    if mpq_sgn(m[r * ncols + j]) != 0:
                        mpq_mul(tmp, f, m[r * ncols + j])
                        mpq_sub(m[i * ncols + j], m[i * ncols + j], tmp)
            pivots.append(c)
            r += 1
        out = [[_box(m[i * ncols + j]) for j in range(ncols)] for i in range(nrows)]
    finally:
        mpq_clear(inv)
        mpq_clear(f)
        mpq_clear(tmp)
    return out, pivots


def det(a):
    """Determinant by fraction-free Bareiss elimination on integer-scaled rows."""
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t i, j, k, p
    cdef mpz_t* m
    cdef mpz_t scale, rowscale, prev, t1, t2
    cdef mpq x
    cdef int sign = 1
    cdef mpq res
    if n == 0:
        res = GMPy_MPQ_New(NULL)
        mpq_set_ui(res.q, 1, 1)
        return res
    m = <mpz_t*>malloc(n * n * sizeof(mpz_t))
    if m == NULL:
        raise MemoryError()
    for i in range(n * n):
        mpz_init(m[i])
    mpz_init(scale)
    mpz_init(rowscale)
    mpz_init(prev)
    mpz_init(t1)
    mpz_init(t2)
    try:
        mpz_set_ui(scale, 1)
        for i in range(n):
            row = a[i]
            mpz_set_ui(rowscale, 1)
            for j in range(n):
                x = _as_mpq(row[j])
                mpz_lcm(rowscale, rowscale, mpq_denref(x.q))
            for j in range(n):
                x = <mpq>row[j]
                mpz_divexact(t1, rowscale, mpq_denref(x.q))
                mpz_mul(m[i * n + j], mpq_numref(x.q), t1)
            mpz_mul(scale, scale, rowscale)
        mpz_set_ui(prev, 1)
        for k in range(n - 1):
            if mpz_sgn(m[k * n + k]) == 0:
                p = k + 1
                while p < n and mpz_sgn(m[p * n + k]) == 0:
                    p += 1
                if p == n:
                    res = GMPy_MPQ_New(NULL)
                    mpq_set_ui(res.q, 0, 1)
                    return res
                for j in range(n):
                    mpz_swap(m[k * n + j], m[p * n + j])
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    mpz_mul(t1, m[i * n + j], m[k * n + k])
                    mpz_mul(t2, m[i * n + k], m[k * n + j])
                    mpz_sub(t1, t1, t2)
                    mpz_divexact(m[i * n + j], t1, prev)
                mpz_set_ui(m[i * n + k], 0)
            mpz_set(prev, m[k * n + k])
        res = GMPy_MPQ_New(NULL)
        if sign < 0:
            mpz_neg(m[(n - 1) * n + n - 1], m[(n - 1) * n + n - 1])
        mpq_set_num(res.q, m[(n - 1) * n + n - 1])
        mpq_set_den(res.q, scale)
        mpq_canonicalize(res.q)
        return res
    finally:
        for i in range(n * n):
            mpz_clear(m[i])
        free(m)
        mpz_clear(scale)
        mpz_clear(rowscale)
        mpz_clear(prev)
        mpz_clear(t1)
        mpz_clear(t2)
