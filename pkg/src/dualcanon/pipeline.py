"""Canonical forms for orders 2 and 3, similarity decisions and fuzzing."""
from __future__ import annotations

import enum
import logging
import os
import random
from dataclasses import dataclass
from fractions import Fraction

from .dual_core import DualMatrix, KMatrix, block_diag
from .errors import DimensionMismatch, IrrationalSpectrum, UnsupportedOrder
from .jordan_layer import (
    is_normalized_jordan,
    jordan_block,
    nilpotent_jordan,
    scalar_case_canonical,
    single_block_canonical,
)
from .mu_canon import is_in_Rm, mu_canonical
from .nu_structure import Partition, jordan_matrix, lift, restrict_pq
from .spectral_split import SimilarityWitness, assemble, rational_spectrum, spectral_split
from .sampling import random_dual_invertible

log = logging.getLogger(__name__)

_ZERO = Fraction(0)
MIXED_NU = Partition((2, 1))


class Family(str, enum.Enum):
    N2_DIAG = "N2_DIAG"
    N2_JORDAN = "N2_JORDAN"
    N2_SCALAR = "N2_SCALAR"
    N3_DIAG = "N3_DIAG"
    N3_SPLIT_2PLUS1 = "N3_SPLIT_2PLUS1"
    N3_MIXED_21 = "N3_MIXED_21"
    N3_JORDAN = "N3_JORDAN"
    N3_SCALAR = "N3_SCALAR"


@dataclass(frozen=True)
class CanonicalForm:
    family: Family
    matrix: DualMatrix
    witness: SimilarityWitness

    def verify(self, A: DualMatrix) -> bool:
        return self.witness.verify(A, self.matrix)


def default_seed() -> int:
    """Seed from DUALCANON_SEED, falling back to 0."""
    raw = os.environ.get("DUALCANON_SEED")
    return int(raw) if raw not in (None, "") else 0


# --------------------------------------------------------------------------
# family patterns
# --------------------------------------------------------------------------

def _is_scalar(M: KMatrix) -> bool:
    return M == KMatrix.identity(M.n) * M[0, 0]


def _zero_cols(M: KMatrix, cols) -> bool:
    return all(M[i, j] == 0 for i in range(M.nrows) for j in cols)


def _match_diag(M: DualMatrix) -> bool:
    if not M.is_diagonal():
        return False
    d = M.part0
    a0 = [d[i, i] for i in range(M.n)]
    return all(x < y for x, y in zip(a0, a0[1:]))


def _match_jordan(M: DualMatrix) -> bool:
    n = M.n
    return M.part0 == jordan_block(n, M.part0[0, 0]) and _zero_cols(M.part1, range(1, n))


def _match_scalar(M: DualMatrix) -> bool:
    return _is_scalar(M.part0) and is_normalized_jordan(M.part1)


def _match_mixed(M: DualMatrix) -> bool:
    if M.n != 3 or M.part0 != jordan_matrix(MIXED_NU, M.part0[0, 0]):
        return False
    B = M.part1
    if any(B[i, j] for i, j in ((0, 1), (0, 2), (1, 1), (2, 1))):
        return False
    return is_in_Rm(restrict_pq(B, MIXED_NU))


def _small_family(M: DualMatrix) -> bool:
    return _match_jordan(M) or _match_scalar(M)


def _match_split(M: DualMatrix) -> bool:
    if M.n != 3:
        return False
    for big_first in (True, False):
        big = range(1, 3) if big_first else range(2, 4)
        one = 3 if big_first else 1
        rest = [i for i in (1, 2, 3) if i != one]
        P0, P1 = M.part0, M.part1
        off = [(i, one) for i in rest] + [(one, i) for i in rest]
        if any(P0[i - 1, j - 1] or P1[i - 1, j - 1] for i, j in off):
            continue
        sub = DualMatrix(P0.keep(big, big), P1.keep(big, big))
        if not _small_family(sub):
            continue
        lam, a4 = sub.part0[0, 0], P0[one - 1, one - 1]
        if a4 == lam:
            continue
        if (a4 > lam) == big_first:
            return True
    return False


def classify(M: DualMatrix) -> list[Family]:
    """Every family whose pattern M matches (a canonical form matches exactly one)."""
    out = []
    if M.n == 2:
        if _match_diag(M):
            out.append(Family.N2_DIAG)
        if _match_jordan(M):
            out.append(Family.N2_JORDAN)
        if _match_scalar(M):
            out.append(Family.N2_SCALAR)
    elif M.n == 3:
        if _match_diag(M):
            out.append(Family.N3_DIAG)
        if _match_split(M):
            out.append(Family.N3_SPLIT_2PLUS1)
        if _match_mixed(M):
            out.append(Family.N3_MIXED_21)
        if _match_jordan(M):
            out.append(Family.N3_JORDAN)
        if _match_scalar(M):
            out.append(Family.N3_SCALAR)
    return out


# --------------------------------------------------------------------------
# canonicalization
# --------------------------------------------------------------------------

def mixed_21_canonical(A: DualMatrix) -> tuple[DualMatrix, SimilarityWitness]:
    """Canonical form of ``J_(2,1) + alpha E + A1 z``.

    A B in the commutant of J_nu brings ``(A1)_{P,Q}`` to its R_2 form, then
    an ``E + C1 z`` step clears (1,2), (1,3), (2,2) and (3,2), which leaves
    ``a11 + a22`` at (1,1).
    """
    alpha = A.part0[0, 0]
    if A.n != 3 or A.part0 != jordan_matrix(MIXED_NU, alpha):
        raise ValueError("classical part is not J_(2,1) + alpha E")
    Z = restrict_pq(A.part1, MIXED_NU)
    R, mw = mu_canonical(Z)
    B = lift(mw.C, mw.Ctilde, MIXED_NU)
    At = B @ A.part1 @ B.inverse()
    if restrict_pq(At, MIXED_NU) != R:
        raise AssertionError("commutant step missed the R_2 form")
    c = [[_ZERO] * 3 for _ in range(3)]
    c[1][0] = -At[1, 1]
    c[2][0] = -At[2, 1]
    c[0][0] = -At[0, 1]
    c[1][2] = At[0, 2]
    C1 = KMatrix._wrap(c, 3)
    D = DualMatrix(KMatrix.identity(3), C1) @ DualMatrix(B)
    out = D @ A @ D.inverse()
    if out.part1[0, 0] != At[0, 0] + At[1, 1]:
        raise AssertionError("unexpected (1,1) entry")
    return out, SimilarityWitness(D)


def _single_eigenvalue(A: DualMatrix, alpha: Fraction) -> tuple[str, DualMatrix, SimilarityWitness]:
    n = A.n
    T, nu = nilpotent_jordan(A.part0 - KMatrix.identity(n) * alpha)
    Td = DualMatrix(T)
    A2 = Td @ A @ DualMatrix(T.inverse())
    if len(nu) == 1:
        M, w = single_block_canonical(A2)
        kind = "JORDAN"
    elif nu.parts[0] == 1:
        M, w = scalar_case_canonical(A2)
        kind = "SCALAR"
    elif nu == MIXED_NU:
        M, w = mixed_21_canonical(A2)
        kind = "MIXED_21"
    else:
        raise UnsupportedOrder(f"no canonical form for Jordan type {nu}")
    return kind, M, SimilarityWitness(w.D @ Td)


def canonical_small(A: DualMatrix) -> CanonicalForm:
    """Canonical form of a dual matrix of order 2 or 3 with rational classical spectrum."""
    n = A.n
    if n not in (2, 3):
        raise UnsupportedOrder(f"canonical forms are only available for orders 2 and 3, got {n}")
    spec = rational_spectrum(A.part0)
    if len(spec) == n:
        blocks, w = spectral_split(A)
        return CanonicalForm(Family[f"N{n}_DIAG"], assemble(blocks), w)
    if len(spec) > 1:
        blocks, w = spectral_split(A)
        parts0, parts1, ds0, ds1 = [], [], [], []
        for b in blocks:
            if b.size == 1:
                M, D = b.block, DualMatrix.identity(1)
            else:
                _, M, wb = _single_eigenvalue(b.block, b.eigenvalue)
                D = wb.D
            parts0.append(M.part0)
            parts1.append(M.part1)
            ds0.append(D.part0)
            ds1.append(D.part1)
        Dblk = DualMatrix(block_diag(*ds0), block_diag(*ds1))
        M = DualMatrix(block_diag(*parts0), block_diag(*parts1))
        return CanonicalForm(Family.N3_SPLIT_2PLUS1, M, SimilarityWitness(Dblk @ w.D))
    kind, M, w = _single_eigenvalue(A, spec[0][0])
    return CanonicalForm(Family[f"N{n}_{kind}"], M, w)


# --------------------------------------------------------------------------
# similarity
# --------------------------------------------------------------------------

class Verdict(str, enum.Enum):
    SIMILAR = "SIMILAR"
    NOT_SIMILAR = "NOT_SIMILAR"
    PROBABLY_NOT_SIMILAR = "PROBABLY_NOT_SIMILAR"
    UNSUPPORTED = "UNSUPPORTED"


@dataclass(frozen=True)
class SimilarityResult:
    verdict: Verdict
    witness: SimilarityWitness | None = None
    method: str = ""
    trials: int = 0

    def __bool__(self):
        return self.verdict is Verdict.SIMILAR


def _linear_system(A: DualMatrix, B: DualMatrix) -> KMatrix:
    """Equations of ``C A == B C`` for C = C0 + C1 z; unknowns C0 then C1, row-major."""
    n = A.n
    N = n * n
    A0, A1, B0, B1 = A.part0, A.part1, B.part0, B.part1
    rows = []

    def left(eq, off, M, a, b):
        # += (X @ M)_{ab} with X the unknown block at offset off
        for k in range(n):
            if M[k, b]:
                eq[off + a * n + k] += M[k, b]

    def right(eq, off, M, a, b):
        # -= (M @ X)_{ab}
        for k in range(n):
            if M[a, k]:
                eq[off + k * n + b] -= M[a, k]

    for a in range(n):
        for b in range(n):
            eq = [_ZERO] * (2 * N)
            left(eq, 0, A0, a, b)
            right(eq, 0, B0, a, b)
            rows.append(eq)
    for a in range(n):
        for b in range(n):
            eq = [_ZERO] * (2 * N)
            left(eq, 0, A1, a, b)
            left(eq, N, A0, a, b)
            right(eq, N, B0, a, b)
            right(eq, 0, B1, a, b)
            rows.append(eq)
    return KMatrix._wrap(rows, 2 * N)


def _similar_linear(A: DualMatrix, B: DualMatrix, trials: int, seed: int) -> SimilarityResult:
    n = A.n
    N = n * n
    basis = _linear_system(A, B).nullspace()
    if not basis or all(not any(v[:N]) for v in basis):
        return SimilarityResult(Verdict.NOT_SIMILAR, method="linear")
    rng = random.Random(seed)
    for t in range(1, trials + 1):
        coeffs = [rng.randint(-10**6, 10**6) for _ in basis]
        v = [sum(c * b[i] for c, b in zip(coeffs, basis)) for i in range(2 * N)]
        C0 = KMatrix._wrap([v[i * n : (i + 1) * n] for i in range(n)], n)
        if C0.det() != 0:
            C1 = KMatrix._wrap([v[N + i * n : N + (i + 1) * n] for i in range(n)], n)
            w = SimilarityWitness(DualMatrix(C0, C1))
            if not w.verify(A, B):
                raise AssertionError("linear witness failed verification")
            return SimilarityResult(Verdict.SIMILAR, w, "linear", t)
    return SimilarityResult(Verdict.PROBABLY_NOT_SIMILAR, method="linear", trials=trials)


def similar(A: DualMatrix, B: DualMatrix, trials: int = 64, seed: int | None = None, method: str = "auto") -> SimilarityResult:
    """Decide whether ``B == D A D^-1`` for some invertible dual D.

    ``method`` is "auto" (canonical forms for orders 2 and 3 with rational
    spectra, the randomized linear route otherwise), "canonical" or "linear".
    """
    if A.n != B.n:
        raise DimensionMismatch(f"orders {A.n} and {B.n}")
    if method not in ("auto", "canonical", "linear"):
        raise ValueError(f"unknown method {method!r}")
    seed = default_seed() if seed is None else seed
    n = A.n
    if A == B:
        return SimilarityResult(Verdict.SIMILAR, SimilarityWitness.identity(n), "identity")
    if A.char_poly() != B.char_poly():
        return SimilarityResult(Verdict.NOT_SIMILAR, method="charpoly")
    if method != "linear":
        if n in (2, 3):
            try:
                ca, cb = canonical_small(A), canonical_small(B)
            except IrrationalSpectrum:
                if method == "canonical":
                    return SimilarityResult(Verdict.UNSUPPORTED, method="canonical")
            else:
                if ca.family == cb.family and ca.matrix == cb.matrix:
                    D = cb.witness.D.inverse() @ ca.witness.D
                    return SimilarityResult(Verdict.SIMILAR, SimilarityWitness(D), "canonical")
                return SimilarityResult(Verdict.NOT_SIMILAR, method="canonical")
        elif method == "canonical":
            return SimilarityResult(Verdict.UNSUPPORTED, method="canonical")
    log.info("linear similarity search: %d trials, seed %d", trials, seed)
    return _similar_linear(A, B, trials, seed)


# --------------------------------------------------------------------------
# fuzzing
# --------------------------------------------------------------------------

def fuzz_witness(n: int, seed: int) -> DualMatrix:
    """Seeded invertible dual matrix with unimodular classical part."""
    return random_dual_invertible(random.Random(seed), n)


def fuzz_conjugate(A: DualMatrix, seed: int) -> DualMatrix:
    """``D A D^-1`` for the seeded ``D = fuzz_witness(n, seed)``."""
    log.debug("fuzz seed %d", seed)
    D = fuzz_witness(A.n, seed)
    return D @ A @ D.inverse()
