"""Canonical forms under mu-similarity for mu = (1, ..., 1).

Here ``A`` and ``B`` are mu-similar when ``C @ A == B @ Ct`` for a lower
triangular ``C`` and an upper triangular ``Ct`` sharing the same non-zero
diagonal; the pair is unitary when that diagonal is all ones.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .dual_core import KMatrix, index_set
from .errors import DimensionMismatch, NotInUm, UnsupportedCardinality, ZeroMatrix

_ZERO = Fraction(0)
_ONE = Fraction(1)


class MarkedPosition(NamedTuple):
    r: int
    s: int


@dataclass(frozen=True)
class Chain:
    positions: tuple[tuple[int, int], ...]
    closed: bool

    @property
    def leading(self) -> tuple[int, int]:
        return self.positions[0]


@dataclass(frozen=True)
class MuWitness:
    """Records ``C @ A == B @ Ctilde`` for the pair (C, Ctilde)."""

    C: KMatrix
    Ctilde: KMatrix
    A: KMatrix
    B: KMatrix
    unitary: bool = False

    def verify(self) -> bool:
        C, Ct = self.C, self.Ctilde
        if not (C.is_lower_triangular() and Ct.is_upper_triangular()):
            return False
        m = C.nrows
        diag = [C[i, i] for i in range(m)]
        if diag != [Ct[i, i] for i in range(m)] or any(d == 0 for d in diag):
            return False
        if self.unitary and any(d != 1 for d in diag):
            return False
        return C @ self.A == self.B @ Ct


# --------------------------------------------------------------------------
# marked positions and the minor map
# --------------------------------------------------------------------------

def marked_positions(A: KMatrix) -> set[MarkedPosition]:
    """Positions (r, s) where a_rs is the only non-zero of A([r], [s])."""
    m, k = A.shape
    out = set()
    # first[i] = first non-zero column of row i
    first = []
    for i in range(m):
        row = A.row(i)
        first.append(next((j for j in range(k) if row[j]), None))
    blocked = k  # columns >= blocked already hit by an earlier row
    for i in range(m):
        f = first[i]
        if f is not None and f < blocked:
            out.add(MarkedPosition(i + 1, f + 1))
            blocked = f
    return out


def minimal_marked(A: KMatrix) -> MarkedPosition:
    """First non-zero row r and its first non-zero column s."""
    for i in range(A.nrows):
        row = A.row(i)
        for j, x in enumerate(row):
            if x:
                return MarkedPosition(i + 1, j + 1)
    raise ZeroMatrix("zero matrix has no marked position")


def f_RS(A: KMatrix, R=(), S=()) -> KMatrix:
    """Minor map for |R| = |S| <= 1.

    Entry (k, l) off R x S is the minor on rows R + {k} and columns S + {l};
    the R x S block is the identity and the rest of those rows/columns is 0.
    """
    m = A.n
    R = index_set(R, m)
    S = index_set(S, m)
    if len(R) != len(S):
        raise UnsupportedCardinality("R and S must have the same size")
    if len(R) > 1:
        raise UnsupportedCardinality("only |R| = |S| <= 1 is supported")
    if not R:
        return A
    (r,), (s,) = R, S
    rows = [[_ZERO] * m for _ in range(m)]
    for k in range(1, m + 1):
        for l in range(1, m + 1):
            if k == r and l == s:
                rows[k - 1][l - 1] = _ONE
            elif k == r or l == s:
                continue
            else:
                rk = sorted((r, k))
                sl = sorted((s, l))
                a, b = A[rk[0] - 1, sl[0] - 1], A[rk[0] - 1, sl[1] - 1]
                c, d = A[rk[1] - 1, sl[0] - 1], A[rk[1] - 1, sl[1] - 1]
                rows[k - 1][l - 1] = a * d - b * c
    return KMatrix._wrap(rows, m)


def h_signs(size: int, s: int) -> KMatrix:
    """diag(-1 repeated s-1 times, then 1s) of the given order."""
    return KMatrix.diag([-1 if t < s - 1 else 1 for t in range(size)])


def reduced_matrix(A: KMatrix) -> tuple[KMatrix, MarkedPosition]:
    """``f_RS(A)`` on the complement of the minimal marked (r, s), times H_s / a_rs."""
    pos = minimal_marked(A)
    r, s = pos
    Y = f_RS(A, (r,), (s,)).submatrix((r,), (s,))
    red = (Y @ h_signs(A.n - 1, s)) * (1 / A[r - 1, s - 1])
    return red, pos


# --------------------------------------------------------------------------
# U_m and the unitary reduction
# --------------------------------------------------------------------------

def is_in_Um(A: KMatrix) -> bool:
    """At most one non-zero per row and per column."""
    if any(sum(1 for x in r if x) > 1 for r in A.rows):
        return False
    return all(sum(1 for i in range(A.nrows) if A[i, j]) <= 1 for j in range(A.ncols))


def unitary_canonical(A: KMatrix) -> tuple[KMatrix, MuWitness]:
    """The unique U in U_m unitary mu-similar to A, with an exact witness.

    At each stage the minimal marked entry of the active submatrix clears
    its row to the right and its column below; the remaining active block is
    the reduced matrix of the previous one, which is checked on the way.
    """
    m = A.n
    W = A.to_lists()
    Crows = KMatrix.identity(m).to_lists()  # accumulated row operations
    Dcols = KMatrix.identity(m).to_lists()  # accumulated column operations
    act_r = list(range(m))
    act_c = list(range(m))
    while act_r:
        sub = KMatrix._wrap([[W[i][j] for j in act_c] for i in act_r], len(act_c))
        if sub.is_zero():
            break
        pr, ps = minimal_marked(sub)
        r, s = act_r[pr - 1], act_c[ps - 1]
        piv = W[r][s]
        for j in act_c[ps:]:
            f = W[r][j] / piv
            if f:
                for i in range(m):
                    W[i][j] -= f * W[i][s]
                    Dcols[i][j] -= f * Dcols[i][s]
        for i in act_r[pr:]:
            g = W[i][s] / piv
            if g:
                for j in range(m):
                    W[i][j] -= g * W[r][j]
                    Crows[i][j] -= g * Crows[r][j]
        act_r.remove(r)
        act_c.remove(s)
        if act_r:
            nxt = KMatrix._wrap([[W[i][j] for j in act_c] for i in act_r], len(act_c))
            red, _ = reduced_matrix(sub)
            if red != nxt:
                raise AssertionError("reduced matrix disagrees with elimination")
    U = KMatrix._wrap(W, m)
    C = KMatrix._wrap(Crows, m)
    D = KMatrix._wrap(Dcols, m)
    wit = MuWitness(C, D.inverse(), A, U, unitary=True)
    return U, wit


# --------------------------------------------------------------------------
# chains and R_m
# --------------------------------------------------------------------------

def _components(U: KMatrix):
    """Cycles and maximal paths of the row -> column map of U (0-based)."""
    m = U.n
    succ = {}
    for i, j in U.nonzero_positions():
        succ[i - 1] = j - 1
    pred = {j: i for i, j in succ.items()}
    seen = set()
    paths, cycles = [], []
    for start in range(m):
        if start in succ and start not in pred:
            nodes = [start]
            while nodes[-1] in succ:
                nodes.append(succ[nodes[-1]])
            seen.update(nodes)
            paths.append(nodes)
    for start in range(m):
        if start in succ and start not in seen:
            nodes = [start]
            while succ[nodes[-1]] != start:
                nodes.append(succ[nodes[-1]])
            seen.update(nodes)
            cycles.append(nodes)  # start is the smallest node of its cycle
    return paths, cycles


def chains(U: KMatrix) -> list[Chain]:
    """Maximal chains of a U_m matrix, ordered by leading row (1-based positions)."""
    if not is_in_Um(U):
        raise NotInUm("matrix has a row or column with two non-zeros")
    paths, cycles = _components(U)
    out = []
    for nodes in paths:
        cur: list[tuple[int, int]] = []
        lead = None
        for a, b in zip(nodes, nodes[1:]):
            if lead is None or a < lead:
                if cur:
                    out.append(Chain(tuple(cur), False))
                cur, lead = [], a
            cur.append((a + 1, b + 1))
        out.append(Chain(tuple(cur), False))
    for nodes in cycles:
        pos = tuple((a + 1, b + 1) for a, b in zip(nodes, nodes[1:] + nodes[:1]))
        out.append(Chain(pos, True))
    out.sort(key=lambda c: c.leading)
    return out


def scale_to_Rm(U: KMatrix) -> tuple[KMatrix, KMatrix]:
    """Diagonal G with ``G U G^-1`` in R_m; returns ``(G U G^-1, G)``.

    Open chains sharing an index lie on one path, so the scaling is done per
    path (every entry becomes 1) and per cycle (the entry at the smallest
    row absorbs the product).
    """
    if not is_in_Um(U):
        raise NotInUm("matrix has a row or column with two non-zeros")
    m = U.n
    gamma = [_ONE] * m
    paths, cycles = _components(U)
    for nodes in paths:
        for a, b in zip(reversed(nodes[:-1]), reversed(nodes[1:])):
            gamma[a] = gamma[b] / U[a, b]
    for nodes in cycles:
        ring = nodes + nodes[:1]
        for t in range(len(nodes) - 1, 0, -1):
            a, b = ring[t], ring[t + 1]
            gamma[a] = gamma[b] / U[a, b]
    G = KMatrix.diag(gamma)
    Ginv = KMatrix.diag([1 / g for g in gamma])
    return G @ U @ Ginv, G


def is_in_Rm(A: KMatrix) -> bool:
    if not is_in_Um(A):
        return False
    for ch in chains(A):
        entries = ch.positions[1:] if ch.closed else ch.positions
        if any(A[i - 1, j - 1] != 1 for i, j in entries):
            return False
    return True


def mu_canonical(A: KMatrix) -> tuple[KMatrix, MuWitness]:
    """The matrix of R_m that is mu-similar to A, with a composite witness."""
    U, w = unitary_canonical(A)
    Rm, G = scale_to_Rm(U)
    # C A = U Ct and Rm = G U G^-1 give (G C) A = Rm (G Ct)
    return Rm, MuWitness(G @ w.C, G @ w.Ctilde, A, Rm)


# --------------------------------------------------------------------------
# linear oracle
# --------------------------------------------------------------------------

def _mu_unknowns(m: int):
    """Coordinates: lower part of C (diagonal shared with Ct), then strict upper Ct."""
    lower = [(i, j) for i in range(m) for j in range(i + 1)]
    upper = [(i, j) for i in range(m) for j in range(i + 1, m)]
    return lower, upper


def _mu_system(A: KMatrix, B: KMatrix) -> tuple[KMatrix, list, list]:
    m = A.n
    lower, upper = _mu_unknowns(m)
    nvar = len(lower) + len(upper)
    idx_c = {p: t for t, p in enumerate(lower)}
    idx_ct = {p: len(lower) + t for t, p in enumerate(upper)}
    for i in range(m):
        idx_ct[(i, i)] = idx_c[(i, i)]
    rows = []
    # (C A - B Ct)_{ab} = sum_k C_ak A_kb - sum_k B_ak Ct_kb
    for a in range(m):
        for b in range(m):
            eq = [_ZERO] * nvar
            for k in range(a + 1):
                x = A[k, b]
                if x:
                    eq[idx_c[(a, k)]] += x
            for k in range(b + 1):
                x = B[a, k]
                if x:
                    eq[idx_ct[(k, b)]] -= x
            rows.append(eq)
    return KMatrix._wrap(rows, nvar), lower, upper


def _pair_from_vector(v, m, lower, upper) -> tuple[KMatrix, KMatrix]:
    C = [[_ZERO] * m for _ in range(m)]
    Ct = [[_ZERO] * m for _ in range(m)]
    for t, (i, j) in enumerate(lower):
        C[i][j] = v[t]
        if i == j:
            Ct[i][i] = v[t]
    for t, (i, j) in enumerate(upper):
        Ct[i][j] = v[len(lower) + t]
    return KMatrix._wrap(C, m), KMatrix._wrap(Ct, m)


def mu_similar_witness(A: KMatrix, B: KMatrix) -> MuWitness | None:
    """A witness pair with ``C @ A == B @ Ct`` if A and B are mu-similar, else None.

    The equation is linear in the joint unknowns; A ~ B iff no diagonal
    coordinate vanishes identically on the solution space. A point off all
    those hyperplanes is found among ``sum t^k v_k`` for small integers t.
    """
    if A.shape != B.shape or not A.is_square():
        raise DimensionMismatch(f"{A.shape} vs {B.shape}")
    m = A.n
    if m == 0:
        return MuWitness(A, A, A, B)
    M, lower, upper = _mu_system(A, B)
    basis = M.nullspace()
    diag_idx = [lower.index((i, i)) for i in range(m)]
    for t in diag_idx:
        if all(v[t] == 0 for v in basis):
            return None
    dim = len(basis)
    # a non-zero polynomial of degree <= m*(dim-1) in t has at most that many roots
    for t in itertools.count():
        if t > m * max(dim - 1, 0) + 1:
            raise AssertionError("no generic point found")
        coeffs = [Fraction(t) ** k for k in range(dim)]
        v = [sum((c * b[i] for c, b in zip(coeffs, basis)), _ZERO) for i in range(len(basis[0]))]
        if all(v[i] != 0 for i in diag_idx):
            C, Ct = _pair_from_vector(v, m, lower, upper)
            return MuWitness(C, Ct, A, B)


def mu_similar_oracle(A: KMatrix, B: KMatrix) -> bool:
    return mu_similar_witness(A, B) is not None


def mu_conjugate(A: KMatrix, C: KMatrix, Ctilde: KMatrix) -> KMatrix:
    """``C @ A @ Ctilde^-1``."""
    return C @ A @ Ctilde.inverse()


def random_mu_pair(m: int, rng: random.Random, lo: int = -3, hi: int = 3, unitary: bool = False) -> tuple[KMatrix, KMatrix]:
    """Random lower C and upper Ct with equal non-zero diagonals."""
    diag = [Fraction(1) if unitary else Fraction(rng.choice([x for x in range(lo, hi + 1) if x])) for _ in range(m)]
    C = [[_ZERO] * m for _ in range(m)]
    Ct = [[_ZERO] * m for _ in range(m)]
    for i in range(m):
        C[i][i] = Ct[i][i] = diag[i]
        for j in range(i):
            C[i][j] = Fraction(rng.randint(lo, hi))
            Ct[j][i] = Fraction(rng.randint(lo, hi))
    return KMatrix._wrap(C, m), KMatrix._wrap(Ct, m)


def random_Um(m: int, rng: random.Random, density: float = 0.7, lo: int = -9, hi: int = 9) -> KMatrix:
    """Random partial permutation pattern with non-zero rational values."""
    cols = list(range(m))
    rng.shuffle(cols)
    rows = [[_ZERO] * m for _ in range(m)]
    for i in range(m):
        if rng.random() < density:
            v = 0
            while v == 0:
                v = Fraction(rng.randint(lo, hi), rng.randint(1, 4))
            rows[i][cols[i]] = v
    return KMatrix._wrap(rows, m)
