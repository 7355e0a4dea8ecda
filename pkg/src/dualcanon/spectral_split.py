"""Block splitting of dual matrices along disjoint classical spectra."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .dual_core import DualMatrix, DualScalar, KMatrix, block_diag
from .errors import DimensionMismatch, IrrationalSpectrum, NotDiagonal, SpectraNotDisjoint
from .polyalg import char_poly_q, rational_roots, resultant_q

_ZERO = Fraction(0)


@dataclass(frozen=True)
class SimilarityWitness:
    """``D`` with ``B == D @ A @ D^-1``."""

    D: DualMatrix

    def apply(self, A: DualMatrix) -> DualMatrix:
        return self.D @ A @ self.D.inverse()

    def verify(self, A: DualMatrix, B: DualMatrix) -> bool:
        if not self.D.is_invertible():
            return False
        # D A == B D avoids the inverse
        return self.D @ A == B @ self.D

    def then(self, other: "SimilarityWitness") -> "SimilarityWitness":
        """Apply ``self`` first, then ``other``."""
        return SimilarityWitness(other.D @ self.D)

    @classmethod
    def identity(cls, n: int) -> "SimilarityWitness":
        return cls(DualMatrix.identity(n))


@dataclass(frozen=True)
class SpectralBlock:
    eigenvalue: Fraction
    size: int
    block: DualMatrix


class StabilizerFactors(NamedTuple):
    C1: KMatrix
    B0: KMatrix


def rational_spectrum(A0: KMatrix) -> list[tuple[Fraction, int]]:
    """Eigenvalues of A0 with algebraic multiplicities, ascending.

    Raises IrrationalSpectrum when the characteristic polynomial does not
    split over Q.
    """
    rs = rational_roots(char_poly_q(A0))
    if not rs.complete:
        raise IrrationalSpectrum("characteristic polynomial has non-rational roots")
    return rs.roots


def sylvester_solve(L: KMatrix, R: KMatrix, rhs: KMatrix) -> KMatrix:
    """The unique X with ``L @ X - X @ R == rhs``."""
    p, q = L.n, R.n
    if rhs.shape != (p, q):
        raise DimensionMismatch(f"rhs has shape {rhs.shape}, expected {(p, q)}")
    if resultant_q(char_poly_q(L), char_poly_q(R)) == 0:
        raise SpectraNotDisjoint("coefficient matrices share an eigenvalue")
    # unknown x_{ab} sits at a*q + b
    N = p * q
    rows = []
    for a in range(p):
        for b in range(q):
            eq = [_ZERO] * N
            for c in range(p):
                if L[a, c]:
                    eq[c * q + b] += L[a, c]
            for c in range(q):
                if R[c, b]:
                    eq[a * q + c] -= R[c, b]
            rows.append(eq)
    sol = KMatrix._wrap(rows, N).solve(KMatrix._wrap([[x] for r in rhs.rows for x in r], 1))
    assert sol is not None  # the system is non-singular
    return KMatrix._wrap([[sol[a * q + b, 0] for b in range(q)] for a in range(p)], q)


def generalized_eigenspace(A0: KMatrix, alpha: Fraction, mult: int) -> list[tuple[Fraction, ...]]:
    n = A0.n
    N = (A0 - KMatrix.identity(n) * alpha) ** mult
    basis = N.nullspace()
    if len(basis) != mult:
        raise AssertionError("generalized eigenspace has the wrong dimension")
    return basis


def _split_offsets(sizes):
    offs, acc = [], 0
    for s in sizes:
        offs.append(acc)
        acc += s
    return offs


def spectral_split(A: DualMatrix) -> tuple[list[SpectralBlock], SimilarityWitness]:
    """One block per distinct classical eigenvalue, ascending, with witness.

    The witness is ``(E + C1 z) @ T``: T moves A0 to block diagonal form along
    generalized eigenspaces, and each off-diagonal block of C1 solves a
    Sylvester equation that removes the matching block of the z-part.
    """
    n = A.n
    spec = rational_spectrum(A.part0)
    cols = []
    for alpha, mult in spec:
        cols.extend(generalized_eigenspace(A.part0, alpha, mult))
    S = KMatrix.from_columns(cols)
    T = S.inverse()
    Tinv = S
    L0 = T @ A.part0 @ Tinv
    M = T @ A.part1 @ Tinv
    sizes = [m for _, m in spec]
    offs = _split_offsets(sizes)
    lam = [L0.keep(range(o + 1, o + s + 1), range(o + 1, o + s + 1)) for o, s in zip(offs, sizes)]
    C1 = [[_ZERO] * n for _ in range(n)]
    for i, (oi, si) in enumerate(zip(offs, sizes)):
        for j, (oj, sj) in enumerate(zip(offs, sizes)):
            if i == j:
                continue
            Mij = M.keep(range(oi + 1, oi + si + 1), range(oj + 1, oj + sj + 1))
            if Mij.is_zero():
                continue
            X = sylvester_solve(lam[i], lam[j], Mij)
            for a in range(si):
                C1[oi + a][oj : oj + sj] = X.row(a)
    C1k = KMatrix._wrap(C1, n)
    D = DualMatrix(KMatrix.identity(n), C1k) @ DualMatrix(T)
    B = D @ A @ D.inverse()
    blocks = []
    for (alpha, mult), o in zip(spec, offs):
        idx = range(o + 1, o + mult + 1)
        blocks.append(SpectralBlock(alpha, mult, DualMatrix(B.part0.keep(idx, idx), B.part1.keep(idx, idx))))
    return blocks, SimilarityWitness(D)


def assemble(blocks: list[SpectralBlock]) -> DualMatrix:
    return DualMatrix(
        block_diag(*(b.block.part0 for b in blocks)), block_diag(*(b.block.part1 for b in blocks))
    )


def diagonal_canonical(A: DualMatrix) -> DualMatrix:
    """Diagonal entries sorted by (a0, a1)."""
    if not A.is_diagonal():
        raise NotDiagonal("matrix is not diagonal")
    return DualMatrix.diag(sorted(A.diagonal()))


def diagonal_sort_witness(A: DualMatrix) -> tuple[DualMatrix, SimilarityWitness]:
    """``diagonal_canonical`` together with the permutation matrix realizing it."""
    if not A.is_diagonal():
        raise NotDiagonal("matrix is not diagonal")
    n = A.n
    d = A.diagonal()
    order = sorted(range(n), key=lambda i: d[i])
    P = KMatrix._wrap([[Fraction(1) if j == order[i] else _ZERO for j in range(n)] for i in range(n)], n)
    return DualMatrix.diag([d[i] for i in order]), SimilarityWitness(DualMatrix(P))


def factor_stabilizer(D: DualMatrix) -> StabilizerFactors:
    """``D == (E + C1 z) @ B0`` with ``B0 = D0`` and ``C1 = D1 D0^-1``."""
    B0 = D.part0
    C1 = D.part1 @ B0.inverse()
    return StabilizerFactors(C1, B0)


def diag_entries(A: DualMatrix) -> list[DualScalar]:
    return A.diagonal()
