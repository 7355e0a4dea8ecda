"""Seeded random generators used by the property suites, the fuzzer and the CLI."""
from __future__ import annotations

import random
from fractions import Fraction

from .dual_core import DualMatrix, KMatrix, block_diag
from .nu_structure import jordan_matrix

_ZERO = Fraction(0)
_ONE = Fraction(1)


def random_rational(rng: random.Random, lo: int = -5, hi: int = 5, max_den: int = 1) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def random_kmatrix(rng: random.Random, n: int, lo: int = -5, hi: int = 5, max_den: int = 1, ncols: int | None = None) -> KMatrix:
    ncols = n if ncols is None else ncols
    return KMatrix._wrap(
        [[random_rational(rng, lo, hi, max_den) for _ in range(ncols)] for _ in range(n)], ncols
    )


def random_unimodular(rng: random.Random, n: int, spread: int = 2) -> KMatrix:
    """``L @ U`` with unit triangular integer factors (determinant 1), rows permuted."""
    L = [[Fraction(rng.randint(-spread, spread)) if j < i else (_ONE if i == j else _ZERO) for j in range(n)] for i in range(n)]
    U = [[Fraction(rng.randint(-spread, spread)) if j > i else (_ONE if i == j else _ZERO) for j in range(n)] for i in range(n)]
    M = KMatrix._wrap(L, n) @ KMatrix._wrap(U, n)
    perm = list(range(n))
    rng.shuffle(perm)
    return KMatrix._wrap([M.row(p) for p in perm], n)


def random_dual_invertible(rng: random.Random, n: int, spread: int = 2) -> DualMatrix:
    return DualMatrix(random_unimodular(rng, n, spread), random_kmatrix(rng, n, -3, 3))


def random_dual_matrix(rng: random.Random, n: int, lo: int = -5, hi: int = 5) -> DualMatrix:
    return DualMatrix(random_kmatrix(rng, n, lo, hi), random_kmatrix(rng, n, lo, hi))


def random_partition(rng: random.Random, k: int) -> tuple[int, ...]:
    parts = []
    while k:
        p = rng.randint(1, k)
        parts.append(p)
        k -= p
    return tuple(sorted(parts, reverse=True))


def random_jordan_matrix(rng: random.Random, n: int, lo: int = -3, hi: int = 3, max_eigs: int | None = None) -> KMatrix:
    """Random Jordan matrix: a random composition of n into eigenvalue groups."""
    sizes = []
    left = n
    while left:
        s = rng.randint(1, left)
        sizes.append(s)
        left -= s
    if max_eigs is not None:
        while len(sizes) > max_eigs:
            sizes[-2] += sizes.pop()
    eigs = rng.sample(range(lo, hi + 1), len(sizes))
    return block_diag(*(jordan_matrix(random_partition(rng, s), e) for s, e in zip(sizes, eigs)))


def random_rational_spectrum_kmatrix(rng: random.Random, n: int, lo: int = -3, hi: int = 3) -> KMatrix:
    J = random_jordan_matrix(rng, n, lo, hi)
    S = random_unimodular(rng, n)
    return S @ J @ S.inverse()


def random_rational_spectrum_dual(rng: random.Random, n: int, lo: int = -3, hi: int = 3, z_lo: int = -4, z_hi: int = 4) -> DualMatrix:
    """Random conjugate of a block diagonal Jordan structure with a random z-part.

    Where the classical part is scalar on an eigenspace the matching diagonal
    block of the z-part is given a rational spectrum too, so the result is
    always inside the range handled by the canonical pipeline.
    """
    sizes = []
    left = n
    while left:
        s = rng.randint(1, left)
        sizes.append(s)
        left -= s
    eigs = rng.sample(range(lo, hi + 1), len(sizes))
    parts = [random_partition(rng, s) for s in sizes]
    A0 = block_diag(*(jordan_matrix(p, e) for p, e in zip(parts, eigs)))
    A1 = random_kmatrix(rng, n, z_lo, z_hi).to_lists()
    off = 0
    for p, s in zip(parts, sizes):
        if s > 1 and p[0] == 1:
            blk = random_rational_spectrum_kmatrix(rng, s, lo, hi)
            for i in range(s):
                A1[off + i][off : off + s] = blk.row(i)
        off += s
    D = random_dual_invertible(rng, n)
    return D @ DualMatrix(A0, KMatrix(A1)) @ D.inverse()


def random_single_block(rng: random.Random, n: int) -> DualMatrix:
    alpha = rng.randint(-3, 3)
    return DualMatrix(jordan_matrix((n,), alpha), random_kmatrix(rng, n, -5, 5))


def random_diagonal_dual(rng: random.Random, n: int, lo: int = -4, hi: int = 4) -> DualMatrix:
    return DualMatrix(
        KMatrix.diag([rng.randint(lo, hi) for _ in range(n)]),
        KMatrix.diag([rng.randint(lo, hi) for _ in range(n)]),
    )
