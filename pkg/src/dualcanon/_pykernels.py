"""Pure-Python exact elimination kernels.

Same algorithms as ``_ckernels.pyx``; used when the compiled module is
unavailable or ``DUALCANON_PURE_PYTHON=1`` is set.

Rows are lists of ``Fraction``. Every routine scales each row to integers
first and runs fraction-free elimination on Python ints, converting back
to ``Fraction`` only at the end.
"""
from fractions import Fraction
from math import gcd, lcm


def _integer_rows(rows):
    """Scale every row by the lcm of its denominators.

    Returns the integer rows and the list of scale factors.
    """
    out = []
    scales = []
    for row in rows:
        m = 1
        for x in row:
            m = lcm(m, x.denominator)
        scales.append(m)
        out.append([x.numerator * (m // x.denominator) for x in row])
    return out, scales


def det(rows):
    """Determinant of a square Fraction matrix (Bareiss elimination)."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    m, scales = _integer_rows(rows)
    sign = 1
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


def rref(rows, ncols):
    """Reduced row echelon form.

    Returns ``(reduced_rows, pivot_columns)``; reduced rows are Fraction
    lists with a leading 1 at each pivot, zero rows moved to the bottom.
    """
    m, _ = _integer_rows(rows)
    nrows = len(m)
    pivots = []
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
    """Product of two matrices given as row lists."""
    inner = len(b)
    ncols = len(b[0]) if inner else 0
    zero = Fraction(0)
    out = []
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
