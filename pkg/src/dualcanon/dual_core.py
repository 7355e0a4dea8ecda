"""Exact arithmetic over the rationals and over the dual numbers Q[z]/(z^2).

``Fraction`` plays the role of the base field. ``KMatrix`` is an immutable
matrix over ``Fraction`` (rectangular shapes are allowed because block
extraction needs them); ``DualMatrix`` is a pair ``part0 + part1*z`` of
square ``KMatrix`` values.

Index sets in the public interface are 1-based, entry access through
``M[i, j]`` is 0-based.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import kernels
from .errors import DimensionMismatch, IndexOutOfRange, NotInvertible

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to ``Fraction``."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, DualScalar):
        raise TypeError("expected a rational, got a dual scalar")
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


@dataclass(frozen=True, order=True)
class DualScalar:
    """The element ``a0 + a1*z`` with ``z*z = 0``.

    Ordering is lexicographic on ``(a0, a1)``.
    """

    a0: Fraction = _ZERO
    a1: Fraction = _ZERO

    def __post_init__(self):
        object.__setattr__(self, "a0", as_rational(self.a0))
        object.__setattr__(self, "a1", as_rational(self.a1))

    @classmethod
    def coerce(cls, x) -> "DualScalar":
        if isinstance(x, DualScalar):
            return x
        return cls(as_rational(x), _ZERO)

    def is_invertible(self) -> bool:
        return self.a0 != 0

    def __add__(self, other):
        o = DualScalar.coerce(other)
        return DualScalar(self.a0 + o.a0, self.a1 + o.a1)

    __radd__ = __add__

    def __neg__(self):
        return DualScalar(-self.a0, -self.a1)

    def __sub__(self, other):
        o = DualScalar.coerce(other)
        return DualScalar(self.a0 - o.a0, self.a1 - o.a1)

    def __rsub__(self, other):
        return DualScalar.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (DualMatrix, KMatrix)):
            return NotImplemented
        return dual_mul(self, DualScalar.coerce(other))

    __rmul__ = __mul__

    def inverse(self) -> "DualScalar":
        return dual_inv(self)

    def __truediv__(self, other):
        return self * dual_inv(DualScalar.coerce(other))

    def __rtruediv__(self, other):
        return DualScalar.coerce(other) * dual_inv(self)

    def __bool__(self):
        return bool(self.a0) or bool(self.a1)

    def __str__(self):
        if self.a1 == 0:
            return str(self.a0)
        if self.a0 == 0:
            return f"{self.a1}z"
        sign = "+" if self.a1 > 0 else "-"
        return f"{self.a0}{sign}{abs(self.a1)}z"


ZETA = DualScalar(0, 1)


def dual_mul(x: DualScalar, y: DualScalar) -> DualScalar:
    return DualScalar(x.a0 * y.a0, x.a0 * y.a1 + x.a1 * y.a0)


def dual_inv(x: DualScalar) -> DualScalar:
    """``(a0 + a1 z)^-1 = 1/a0 - a1/a0^2 z``; raises NotInvertible if a0 == 0."""
    if x.a0 == 0:
        raise NotInvertible(f"{x} has zero classical part")
    inv0 = 1 / x.a0
    return DualScalar(inv0, -x.a1 * inv0 * inv0)


def index_set(items: Iterable[int], n: int) -> tuple[int, ...]:
    """Validate a 1-based index set against ``[n]`` and return it sorted."""
    out = sorted(set(int(i) for i in items))
    for i in out:
        if not 1 <= i <= n:
            raise IndexOutOfRange(f"index {i} outside 1..{n}")
    return tuple(out)


class KMatrix:
    """Immutable matrix with ``Fraction`` entries."""

    __slots__ = ("_rows", "_nrows", "_ncols", "_hash")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        rows = tuple(tuple(as_rational(x) for x in r) for r in rows)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise DimensionMismatch("ragged rows")
        else:
            width = ncols or 0
        self._rows = rows
        self._nrows = len(rows)
        self._ncols = width
        self._hash = None

    @classmethod
    def _wrap(cls, rows, ncols=None) -> "KMatrix":
        m = object.__new__(cls)
        m._rows = tuple(tuple(r) for r in rows)
        m._nrows = len(m._rows)
        m._ncols = len(m._rows[0]) if m._rows else (ncols or 0)
        m._hash = None
        return m

    # constructors -------------------------------------------------------
    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> "KMatrix":
        ncols = nrows if ncols is None else ncols
        return cls._wrap([[_ZERO] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> "KMatrix":
        return cls._wrap([[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)], n)

    @classmethod
    def diag(cls, values: Sequence) -> "KMatrix":
        vals = [as_rational(v) for v in values]
        n = len(vals)
        return cls._wrap([[vals[i] if i == j else _ZERO for j in range(n)] for i in range(n)], n)

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "KMatrix":
        """Matrix unit e_ij of order n (1-based i, j)."""
        rows = [[_ZERO] * n for _ in range(n)]
        rows[i - 1][j - 1] = _ONE
        return cls._wrap(rows, n)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int | None = None) -> "KMatrix":
        if not cols:
            return cls.zeros(nrows or 0, 0)
        return cls([[c[i] for c in cols] for i in range(len(cols[0]))])

    # shape and access ---------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self._nrows, self._ncols)

    @property
    def nrows(self) -> int:
        return self._nrows

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def n(self) -> int:
        if self._nrows != self._ncols:
            raise DimensionMismatch(f"matrix of shape {self.shape} is not square")
        return self._nrows

    def is_square(self) -> bool:
        return self._nrows == self._ncols

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._rows[i]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._rows)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self._rows[i][j]

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self._rows]

    def replace(self, updates: dict) -> "KMatrix":
        """Copy with entries ``{(i, j): value}`` (0-based) overwritten."""
        rows = self.to_lists()
        for (i, j), v in updates.items():
            rows[i][j] = as_rational(v)
        return KMatrix._wrap(rows, self._ncols)

    @property
    def T(self) -> "KMatrix":
        return KMatrix._wrap(list(zip(*self._rows)) if self._nrows else [()] * self._ncols, self._nrows)

    # predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(any(r) for r in self._rows)

    def is_diagonal(self) -> bool:
        return all(x == 0 for i, r in enumerate(self._rows) for j, x in enumerate(r) if i != j)

    def is_lower_triangular(self) -> bool:
        return all(x == 0 for i, r in enumerate(self._rows) for j, x in enumerate(r) if j > i)

    def is_upper_triangular(self) -> bool:
        return all(x == 0 for i, r in enumerate(self._rows) for j, x in enumerate(r) if j < i)

    def nonzero_positions(self) -> list[tuple[int, int]]:
        """1-based positions of non-zero entries in row-major order."""
        return [(i + 1, j + 1) for i, r in enumerate(self._rows) for j, x in enumerate(r) if x]

    # arithmetic ---------------------------------------------------------
    def _check_same_shape(self, other):
        if not isinstance(other, KMatrix):
            raise TypeError(f"expected KMatrix, got {type(other).__name__}")
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} vs {other.shape}")

    def __add__(self, other):
        if isinstance(other, DualMatrix):
            return NotImplemented
        self._check_same_shape(other)
        return KMatrix._wrap(
            [[x + y for x, y in zip(r, s)] for r, s in zip(self._rows, other._rows)], self._ncols
        )

    def __sub__(self, other):
        if isinstance(other, DualMatrix):
            return NotImplemented
        self._check_same_shape(other)
        return KMatrix._wrap(
            [[x - y for x, y in zip(r, s)] for r, s in zip(self._rows, other._rows)], self._ncols
        )

    def __neg__(self):
        return KMatrix._wrap([[-x for x in r] for r in self._rows], self._ncols)

    def __mul__(self, c):
        if isinstance(c, (KMatrix, DualMatrix, DualScalar)):
            return NotImplemented
        c = as_rational(c)
        return KMatrix._wrap([[c * x for x in r] for r in self._rows], self._ncols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, DualMatrix):
            return NotImplemented
        if not isinstance(other, KMatrix):
            raise TypeError(f"cannot multiply KMatrix by {type(other).__name__}")
        if self._ncols != other._nrows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        if self._nrows == 0 or other._ncols == 0:
            return KMatrix.zeros(self._nrows, other._ncols)
        if self._ncols == 0:
            return KMatrix.zeros(self._nrows, other._ncols)
        return KMatrix._wrap(kernels.matmul(self._rows, other._rows), other._ncols)

    def __pow__(self, k: int) -> "KMatrix":
        n = self.n
        result = KMatrix.identity(n)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def trace(self) -> Fraction:
        return sum((self._rows[i][i] for i in range(self.n)), _ZERO)

    # elimination --------------------------------------------------------
    def det(self) -> Fraction:
        if not self.is_square():
            raise DimensionMismatch(f"det of non-square {self.shape}")
        return kernels.det(self._rows)

    def rref(self) -> tuple["KMatrix", list[int]]:
        """Reduced row echelon form and 0-based pivot columns."""
        if self._nrows == 0:
            return self, []
        rows, pivots = kernels.rref(self._rows, self._ncols)
        return KMatrix._wrap(rows, self._ncols), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> list[tuple[Fraction, ...]]:
        """Basis of the right kernel, one vector per free column (RREF order)."""
        ncols = self._ncols
        if self._nrows == 0:
            return [tuple(_ONE if i == j else _ZERO for i in range(ncols)) for j in range(ncols)]
        red, pivots = self.rref()
        pivot_set = set(pivots)
        basis = []
        for free in range(ncols):
            if free in pivot_set:
                continue
            v = [_ZERO] * ncols
            v[free] = _ONE
            for r, pc in enumerate(pivots):
                v[pc] = -red[r, free]
            basis.append(tuple(v))
        return basis

    def solve(self, rhs: "KMatrix") -> "KMatrix | None":
        """Particular solution X of ``self @ X = rhs`` (free unknowns 0), or None."""
        if rhs.nrows != self._nrows:
            raise DimensionMismatch(f"{self.shape} vs rhs {rhs.shape}")
        aug = KMatrix._wrap([r + s for r, s in zip(self._rows, rhs._rows)], self._ncols + rhs.ncols)
        red, pivots = aug.rref()
        if any(p >= self._ncols for p in pivots):
            return None
        out = [[_ZERO] * rhs.ncols for _ in range(self._ncols)]
        for r, pc in enumerate(pivots):
            for k in range(rhs.ncols):
                out[pc][k] = red[r, self._ncols + k]
        return KMatrix._wrap(out, rhs.ncols)

    def inverse(self) -> "KMatrix":
        n = self.n
        if n == 0:
            return self
        aug = [list(r) + [_ONE if i == j else _ZERO for j in range(n)] for i, r in enumerate(self._rows)]
        red, pivots = kernels.rref(aug, 2 * n)
        if pivots[:n] != list(range(n)):
            raise NotInvertible("singular matrix")
        return KMatrix._wrap([r[n:] for r in red], n)

    def is_invertible(self) -> bool:
        return self.is_square() and self.det() != 0

    # index-set views (1-based) -----------------------------------------
    def submatrix(self, R: Iterable[int] = (), S: Iterable[int] = ()) -> "KMatrix":
        """Delete rows in R and columns in S, keeping the remaining order."""
        R = set(index_set(R, self._nrows))
        S = set(index_set(S, self._ncols))
        keep_r = [i for i in range(self._nrows) if i + 1 not in R]
        keep_c = [j for j in range(self._ncols) if j + 1 not in S]
        return KMatrix._wrap([[self._rows[i][j] for j in keep_c] for i in keep_r], len(keep_c))

    def keep(self, R: Iterable[int], S: Iterable[int]) -> "KMatrix":
        """The submatrix on rows R and columns S (both kept, natural order)."""
        R = index_set(R, self._nrows)
        S = index_set(S, self._ncols)
        return KMatrix._wrap([[self._rows[i - 1][j - 1] for j in S] for i in R], len(S))

    # dunder -------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, KMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self._rows))
        return self._hash

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._rows)
        return f"KMatrix([{body}])"


def block_diag(*blocks: KMatrix) -> KMatrix:
    n = sum(b.nrows for b in blocks)
    m = sum(b.ncols for b in blocks)
    rows = [[_ZERO] * m for _ in range(n)]
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b.rows):
            rows[r0 + i][c0 : c0 + b.ncols] = row
        r0 += b.nrows
        c0 += b.ncols
    return KMatrix._wrap(rows, m)


def place(target_n: int, block: KMatrix, at: int) -> KMatrix:
    """Embed ``block`` into a zero ``target_n``-square matrix at offset ``at`` (0-based)."""
    rows = [[_ZERO] * target_n for _ in range(target_n)]
    for i, row in enumerate(block.rows):
        rows[at + i][at : at + block.ncols] = row
    return KMatrix._wrap(rows, target_n)


class DualMatrix:
    """Square matrix ``part0 + part1*z`` over the dual numbers."""

    __slots__ = ("part0", "part1")

    def __init__(self, part0, part1=None):
        p0 = part0 if isinstance(part0, KMatrix) else KMatrix(part0)
        if part1 is None:
            p1 = KMatrix.zeros(p0.nrows, p0.ncols)
        else:
            p1 = part1 if isinstance(part1, KMatrix) else KMatrix(part1)
        if not p0.is_square() or p0.shape != p1.shape:
            raise DimensionMismatch(f"parts of shape {p0.shape} and {p1.shape}")
        self.part0 = p0
        self.part1 = p1

    @property
    def n(self) -> int:
        return self.part0.nrows

    @classmethod
    def identity(cls, n: int) -> "DualMatrix":
        return cls(KMatrix.identity(n))

    @classmethod
    def zeros(cls, n: int) -> "DualMatrix":
        return cls(KMatrix.zeros(n))

    @classmethod
    def diag(cls, values: Sequence) -> "DualMatrix":
        vals = [DualScalar.coerce(v) for v in values]
        return cls(KMatrix.diag([v.a0 for v in vals]), KMatrix.diag([v.a1 for v in vals]))

    @classmethod
    def from_entries(cls, entries: Sequence[Sequence]) -> "DualMatrix":
        ds = [[DualScalar.coerce(x) for x in r] for r in entries]
        return cls(KMatrix([[x.a0 for x in r] for r in ds]), KMatrix([[x.a1 for x in r] for r in ds]))

    def entry(self, i: int, j: int) -> DualScalar:
        """Entry at 0-based position (i, j)."""
        return DualScalar(self.part0[i, j], self.part1[i, j])

    def entries(self) -> list[list[DualScalar]]:
        n = self.n
        return [[self.entry(i, j) for j in range(n)] for i in range(n)]

    def classical(self) -> KMatrix:
        return self.part0

    def _check(self, other):
        if not isinstance(other, DualMatrix):
            raise TypeError(f"expected DualMatrix, got {type(other).__name__}")
        if self.n != other.n:
            raise DimensionMismatch(f"orders {self.n} and {other.n}")

    def __add__(self, other):
        if isinstance(other, KMatrix):
            other = DualMatrix(other)
        self._check(other)
        return DualMatrix(self.part0 + other.part0, self.part1 + other.part1)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, KMatrix):
            other = DualMatrix(other)
        self._check(other)
        return DualMatrix(self.part0 - other.part0, self.part1 - other.part1)

    def __rsub__(self, other):
        return DualMatrix(other) - self

    def __neg__(self):
        return DualMatrix(-self.part0, -self.part1)

    def __mul__(self, c):
        if isinstance(c, (KMatrix, DualMatrix)):
            return NotImplemented
        c = DualScalar.coerce(c)
        return DualMatrix(self.part0 * c.a0, self.part1 * c.a0 + self.part0 * c.a1)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, KMatrix):
            other = DualMatrix(other)
        self._check(other)
        return DualMatrix(
            self.part0 @ other.part0,
            self.part0 @ other.part1 + self.part1 @ other.part0,
        )

    def __rmatmul__(self, other):
        if isinstance(other, KMatrix):
            return DualMatrix(other) @ self
        return NotImplemented

    def __pow__(self, k: int) -> "DualMatrix":
        result = DualMatrix.identity(self.n)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def is_invertible(self) -> bool:
        return self.part0.det() != 0

    def inverse(self) -> "DualMatrix":
        """``A0^-1 - A0^-1 A1 A0^-1 z``; NotInvertible when det(A0) = 0."""
        inv0 = self.part0.inverse()
        return DualMatrix(inv0, -(inv0 @ self.part1 @ inv0))

    def conjugate_by(self, d: "DualMatrix") -> "DualMatrix":
        """``d @ self @ d^-1``."""
        return d @ self @ d.inverse()

    def det(self) -> DualScalar:
        """det(A0) + z * sum_j det(A0 with column j replaced by column j of A1)."""
        n = self.n
        a0 = self.part0.to_lists()
        d1 = _ZERO
        for j in range(n):
            if not any(self.part1[i, j] for i in range(n)):
                continue
            m = [list(r) for r in a0]
            for i in range(n):
                m[i][j] = self.part1[i, j]
            d1 += kernels.det(m)
        return DualScalar(self.part0.det(), d1)

    def trace(self) -> DualScalar:
        return DualScalar(self.part0.trace(), self.part1.trace())

    def char_poly(self):
        from .polyalg import char_poly

        return char_poly(self)

    def submatrix(self, R: Iterable[int] = (), S: Iterable[int] = ()) -> "DualMatrix":
        return DualMatrix(self.part0.submatrix(R, S), self.part1.submatrix(R, S))

    def is_diagonal(self) -> bool:
        return self.part0.is_diagonal() and self.part1.is_diagonal()

    def diagonal(self) -> list[DualScalar]:
        return [self.entry(i, i) for i in range(self.n)]

    def __eq__(self, other):
        if not isinstance(other, DualMatrix):
            return NotImplemented
        return self.part0 == other.part0 and self.part1 == other.part1

    def __hash__(self):
        return hash((self.part0, self.part1))

    def __repr__(self):
        return f"DualMatrix({self.part0!r}, {self.part1!r})"


def dual_block_diag(*blocks: DualMatrix) -> DualMatrix:
    return DualMatrix(block_diag(*(b.part0 for b in blocks)), block_diag(*(b.part1 for b in blocks)))


def mat_mul(a: DualMatrix, b: DualMatrix) -> DualMatrix:
    return a @ b


def mat_add(a: DualMatrix, b: DualMatrix) -> DualMatrix:
    return a + b


def mat_scale(a: DualMatrix, c) -> DualMatrix:
    return a * c


def mat_inv(a: DualMatrix) -> DualMatrix:
    return a.inverse()


def trace(a: DualMatrix) -> DualScalar:
    return a.trace()


def submatrix(a, R: Iterable[int] = (), S: Iterable[int] = ()):
    """Delete rows R and columns S (1-based) from a KMatrix or DualMatrix."""
    return a.submatrix(R, S)
