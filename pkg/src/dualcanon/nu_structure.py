"""Structure attached to a nilpotent Jordan type nu.

Block (i, j) of an n x n matrix, for the block partition given by nu, is the
nu_i x nu_j rectangle starting at row sigma_{i-1} + 1 and column
sigma_{j-1} + 1. ``P`` collects the rows of J_nu holding a 1 and ``Q`` the
columns, so deleting P keeps the last index of every block and deleting Q
keeps the first.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .dual_core import KMatrix, as_rational
from .errors import DimensionMismatch, NotMuMutual

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class Partition:
    """Non-increasing sequence of positive parts."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts:
            raise ValueError("empty partition")
        if any(p < 1 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be non-increasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def coerce(cls, nu) -> "Partition":
        if isinstance(nu, Partition):
            return nu
        return cls(tuple(nu))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def m(self) -> int:
        """Number of parts."""
        return len(self.parts)

    def offsets(self) -> list[int]:
        """0-based start index of each block."""
        out, acc = [], 0
        for p in self.parts:
            out.append(acc)
            acc += p
        return out

    def distinct_parts(self) -> list[int]:
        """The distinct parts alpha_1 > alpha_2 > ..."""
        out: list[int] = []
        for p in self.parts:
            if not out or out[-1] != p:
                out.append(p)
        return out

    def hat(self) -> tuple[int, ...]:
        """Multiplicities of the distinct parts, in order."""
        return tuple(self.parts.count(a) for a in self.distinct_parts())

    def group_of(self) -> list[int]:
        """Index of the equal-part group that each block belongs to."""
        groups, g = [], -1
        prev = None
        for p in self.parts:
            if p != prev:
                g += 1
                prev = p
            groups.append(g)
        return groups

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


def nu_hat(nu) -> tuple[int, ...]:
    return Partition.coerce(nu).hat()


@dataclass(frozen=True)
class PQSets:
    P: tuple[int, ...]
    Q: tuple[int, ...]
    r: int
    m: int


def jordan_matrix(nu, alpha=0) -> KMatrix:
    """Block diagonal J_nu + alpha*E with blocks in the order of nu."""
    nu = Partition.coerce(nu)
    a = as_rational(alpha)
    n = nu.n
    rows = [[_ZERO] * n for _ in range(n)]
    for off, k in zip(nu.offsets(), nu.parts):
        for t in range(k):
            rows[off + t][off + t] = a
            if t + 1 < k:
                rows[off + t][off + t + 1] = _ONE
    return KMatrix._wrap(rows, n)


def pq_sets(nu) -> PQSets:
    nu = Partition.coerce(nu)
    P, Q = [], []
    for off, k in zip(nu.offsets(), nu.parts):
        P.extend(range(off + 1, off + k))
        Q.extend(range(off + 2, off + k + 1))
    return PQSets(tuple(P), tuple(Q), len(P), nu.n - len(P))


def wnu_basis(nu) -> frozenset[tuple[int, int]]:
    """Matrix units e_ij spanning W_nu: pairs with i in P or j in Q."""
    nu = Partition.coerce(nu)
    pq = pq_sets(nu)
    P, Q = set(pq.P), set(pq.Q)
    n = nu.n
    return frozenset(
        (i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i in P or j in Q
    )


def block(B: KMatrix, nu, i: int, j: int) -> KMatrix:
    """Block (i, j) of B, 0-based block indices."""
    nu = Partition.coerce(nu)
    offs = nu.offsets()
    r0, c0 = offs[i], offs[j]
    k, l = nu.parts[i], nu.parts[j]
    return KMatrix._wrap([B.row(r0 + a)[c0 : c0 + l] for a in range(k)], l)


def is_regular(G: KMatrix) -> bool:
    """Regularity of a rectangular k x l block (upper Toeplitz pushed to the top right)."""
    k, l = G.shape
    for a in range(k):
        for b in range(l):
            x = G[a, b]
            if a > b and x:
                return False
            if k > l and a >= l and x:
                return False
            if k < l and b < l - k and x:
                return False
            if a and b and x != G[a - 1, b - 1]:
                return False
    return True


def is_in_Bnu(B: KMatrix, nu, require_invertible: bool = False) -> bool:
    """Every nu-block of B is regular; with ``require_invertible`` also det(B) != 0."""
    nu = Partition.coerce(nu)
    if B.shape != (nu.n, nu.n):
        raise DimensionMismatch(f"matrix of shape {B.shape} for partition of {nu.n}")
    m = nu.m
    if not all(is_regular(block(B, nu, i, j)) for i in range(m) for j in range(m)):
        return False
    return not require_invertible or B.det() != 0


def commutes_with_jordan(B: KMatrix, nu) -> bool:
    J = jordan_matrix(nu)
    return B @ J == J @ B


def restrict(B: KMatrix, nu) -> tuple[KMatrix, KMatrix]:
    """``(B_P, B_Q)``: delete the rows and columns in P, resp. in Q."""
    pq = pq_sets(nu)
    return B.submatrix(pq.P, pq.P), B.submatrix(pq.Q, pq.Q)


def restrict_pq(A: KMatrix, nu) -> KMatrix:
    """``A_{P,Q}``: delete rows in P and columns in Q."""
    pq = pq_sets(nu)
    return A.submatrix(pq.P, pq.Q)


def _check_mutual(C: KMatrix, Ct: KMatrix, nu: Partition):
    m = nu.m
    if C.shape != (m, m) or Ct.shape != (m, m):
        raise DimensionMismatch(f"expected {m}x{m} pair, got {C.shape} and {Ct.shape}")
    g = nu.group_of()
    for i in range(m):
        for j in range(m):
            if g[i] < g[j] and C[i, j]:
                raise NotMuMutual(f"C is not lower block triangular at ({i + 1},{j + 1})")
            if g[i] > g[j] and Ct[i, j]:
                raise NotMuMutual(f"C~ is not upper block triangular at ({i + 1},{j + 1})")
            if g[i] == g[j] and C[i, j] != Ct[i, j]:
                raise NotMuMutual(f"diagonal blocks differ at ({i + 1},{j + 1})")
    if C.det() == 0 or Ct.det() == 0:
        raise NotMuMutual("the pair is singular")


def lift(C: KMatrix, Ctilde: KMatrix, nu) -> KMatrix:
    """The sparsest B in B_nu with ``restrict(B, nu) == (C, Ctilde)``.

    Square blocks get ``C[i,j]*E``; a tall block above the diagonal carries
    ``Ctilde[i,j]`` on its top square, a wide block below carries ``C[i,j]``
    on its right square.
    """
    nu = Partition.coerce(nu)
    _check_mutual(C, Ctilde, nu)
    n = nu.n
    offs = nu.offsets()
    rows = [[_ZERO] * n for _ in range(n)]
    for i, (ri, k) in enumerate(zip(offs, nu.parts)):
        for j, (cj, l) in enumerate(zip(offs, nu.parts)):
            if k == l:
                v, col0 = C[i, j], 0
            elif k > l:
                v, col0 = Ctilde[i, j], 0
            else:
                v, col0 = C[i, j], l - k
            if not v:
                continue
            for t in range(min(k, l)):
                rows[ri + t][cj + col0 + t] = v
    return KMatrix._wrap(rows, n)


def group_blocks(M: KMatrix, nu) -> list[KMatrix]:
    """Diagonal blocks of an m x m matrix for the block sizes nu_hat."""
    nu = Partition.coerce(nu)
    out, start = [], 0
    for s in nu.hat():
        idx = range(start + 1, start + s + 1)
        out.append(M.keep(idx, idx))
        start += s
    return out


def det_identities_check(B: KMatrix, nu) -> bool:
    """``|B| == prod |B''_ii|^alpha_i`` over the nu_hat diagonal blocks of B_Q."""
    nu = Partition.coerce(nu)
    _, BQ = restrict(B, nu)
    rhs = _ONE
    for alpha, blk in zip(nu.distinct_parts(), group_blocks(BQ, nu)):
        rhs *= blk.det() ** alpha
    return B.det() == rhs


def random_regular_block(k: int, l: int, rng: random.Random, lo: int = -3, hi: int = 3) -> list[list[Fraction]]:
    p = min(k, l)
    params = [Fraction(rng.randint(lo, hi)) for _ in range(p)]
    rows = [[_ZERO] * l for _ in range(k)]
    shift = l - k if k < l else 0
    for a in range(min(k, l)):
        for d in range(p - a):
            rows[a][shift + a + d] = params[d]
    return rows


def random_Bnu(nu, rng: random.Random, invertible: bool = True, lo: int = -3, hi: int = 3) -> KMatrix:
    """Random member of the commutant of J_nu with small integer parameters."""
    nu = Partition.coerce(nu)
    n = nu.n
    offs = nu.offsets()
    while True:
        rows = [[_ZERO] * n for _ in range(n)]
        for ri, k in zip(offs, nu.parts):
            for cj, l in zip(offs, nu.parts):
                blk = random_regular_block(k, l, rng, lo, hi)
                for a in range(k):
                    rows[ri + a][cj : cj + l] = blk[a]
        B = KMatrix._wrap(rows, n)
        if not invertible or B.det() != 0:
            return B


def random_mu_mutual(nu, rng: random.Random, lo: int = -3, hi: int = 3) -> tuple[KMatrix, KMatrix]:
    """Random invertible pair (C, Ctilde) with the block shape nu_hat."""
    nu = Partition.coerce(nu)
    m = nu.m
    g = nu.group_of()
    while True:
        C = [[_ZERO] * m for _ in range(m)]
        Ct = [[_ZERO] * m for _ in range(m)]
        for i in range(m):
            for j in range(m):
                v = Fraction(rng.randint(lo, hi))
                if g[i] == g[j]:
                    C[i][j] = Ct[i][j] = v
                elif g[i] > g[j]:
                    C[i][j] = v
                else:
                    Ct[i][j] = v
        Ck, Ctk = KMatrix._wrap(C, m), KMatrix._wrap(Ct, m)
        if Ck.det() != 0:
            return Ck, Ctk


def satisfies_condition(A: KMatrix, I: Iterable[int]) -> bool:
    """Condition (I): a_ij == 0 whenever i is outside I and j is inside."""
    I = set(I)
    n = A.nrows
    return all(
        not A[i - 1, j - 1] for i in range(1, n + 1) if i not in I for j in I
    )


def random_in_Wnu(nu, rng: random.Random, lo: int = -5, hi: int = 5) -> KMatrix:
    """Random matrix supported on the W_nu matrix units."""
    nu = Partition.coerce(nu)
    n = nu.n
    rows = [[_ZERO] * n for _ in range(n)]
    for i, j in wnu_basis(nu):
        rows[i - 1][j - 1] = Fraction(rng.randint(lo, hi))
    return KMatrix._wrap(rows, n)

