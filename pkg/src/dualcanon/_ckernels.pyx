# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_pykernels``; identical algorithms and results."""
from fractions import Fraction
from math import gcd, lcm


cdef tuple _integer_rows(rows):
    cdef list out = []
    cdef list scales = []
    cdef object m, x
    for row in rows:
        m = 1
        for x in row:
            m = lcm(m, x.denominator)
        scales.append(m)
        out.append([x.numerator * (m // x.denominator) for x in row])
    return out, scales


def det(rows):
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t i, j, k
    cdef list m, scales, mk, mi
    cdef object pivot, prev, e, denom
    cdef int sign = 1
    if n == 0:
        return Fraction(1)
    m, scales = _integer_rows(rows)
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        mk = m[k]
        pivot = mk[k]
        for i in range(k + 1, n):
            mi = m[i]
            e = mi[k]
            for j in range(k + 1, n):
                mi[j] = (mi[j] * pivot - e * mk[j]) // prev
            mi[k] = 0
        prev = pivot
    denom = 1
    for s in scales:
        denom *= s
    return Fraction(sign * m[n - 1][n - 1], denom)


def rref(rows, Py_ssize_t ncols):
    cdef list m, mr, mi, out
    cdef list pivots = []
    cdef Py_ssize_t nrows, r, c, p, i, j
    cdef object pivot, e, v, g, lead
    m, _ = _integer_rows(rows)
    nrows = len(m)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and m[p][c] == 0:
            p += 1
        if p == nrows:
            continue
        if p != r:
            m[p], m[r] = m[r], m[p]
        mr = m[r]
        pivot = mr[c]
        for i in range(nrows):
            if i == r:
                continue
            mi = m[i]
            e = mi[c]
            if e == 0:
                continue
            g = 0
            for j in range(ncols):
                v = mi[j] * pivot - e * mr[j]
                mi[j] = v
                g = gcd(g, v)
            if g > 1:
                for j in range(ncols):
                    mi[j] //= g
        pivots.append(c)
        r += 1
    out = []
    for i in range(nrows):
        if i < r:
            lead = m[i][pivots[i]]
            out.append([Fraction(x, lead) for x in m[i]])
        else:
            out.append([Fraction(0)] * ncols)
    return out, pivots


def matmul(a, b):
    cdef Py_ssize_t inner = len(b)
    cdef Py_ssize_t ncols = len(b[0]) if inner else 0
    cdef Py_ssize_t j, k
    cdef list out = []
    cdef list row
    cdef object arow
    cdef object s, x, y
    zero = Fraction(0)
    for arow in a:
        row = []
        for j in range(ncols):
            s = zero
            for k in range(inner):
                x = arow[k]
                if x:
                    y = b[k][j]
                    if y:
                        s += x * y
            row.append(s)
        out.append(row)
    return out
