"""Jordan-type canonical forms: single block, scalar classical part, and
classical Jordan reduction."""
from __future__ import annotations

from fractions import Fraction

from .dual_core import DualMatrix, KMatrix, block_diag
from .errors import NotNilpotent, WrongShape
from .nu_structure import Partition, jordan_matrix
from .spectral_split import SimilarityWitness, generalized_eigenspace, rational_spectrum

_ZERO = Fraction(0)
_ONE = Fraction(1)


def q_traces(A1: KMatrix) -> list[Fraction]:
    """``q_k`` = sum of the (k-1)-th subdiagonal of A1, for k = 1..n."""
    n = A1.n
    return [sum((A1[j + k, j] for j in range(n - k)), _ZERO) for k in range(n)]


def _rank(vectors) -> int:
    if not vectors:
        return 0
    return KMatrix(vectors).rank()


def nilpotent_jordan(A0: KMatrix) -> tuple[KMatrix, Partition]:
    """T with ``T @ A0 @ T^-1 == J_nu``, block sizes non-increasing."""
    n = A0.n
    powers = [KMatrix.identity(n)]
    while not powers[-1].is_zero():
        if len(powers) > n:
            raise NotNilpotent("matrix is not nilpotent")
        powers.append(powers[-1] @ A0)
    top = len(powers) - 1  # A0^top == 0
    kernels = [powers[k].nullspace() for k in range(top + 1)]  # kernels[k] = ker A0^k
    dims = [len(b) for b in kernels]

    def apply(v, k=1):
        for _ in range(k):
            v = tuple(sum((A0[i, j] * v[j] for j in range(n)), _ZERO) for i in range(n))
        return v

    tops: list[tuple[tuple[Fraction, ...], int]] = []
    for k in range(top, 0, -1):
        count = (dims[k] - dims[k - 1]) - (dims[k + 1] - dims[k] if k < top else 0)
        if count == 0:
            continue
        span = list(kernels[k - 1])
        for v, size in tops:
            span.append(apply(v, size - k))
        base = _rank(span)
        picked = 0
        for cand in kernels[k]:
            if picked == count:
                break
            if _rank(span + [cand]) > base:
                span.append(cand)
                base += 1
                tops.append((cand, k))
                picked += 1
        if picked != count:
            raise AssertionError("chain selection failed")
    cols = []
    parts = []
    for v, size in tops:
        chain = [v]
        for _ in range(size - 1):
            chain.append(apply(chain[-1]))
        cols.extend(reversed(chain))
        parts.append(size)
    S = KMatrix.from_columns(cols)
    return S.inverse(), Partition(tuple(parts))


def jordan_form(A0: KMatrix) -> tuple[KMatrix, list[tuple[Fraction, Partition]], KMatrix]:
    """Classical Jordan form with eigenvalues ascending and sizes descending.

    Returns ``(T, types, J)`` with ``T @ A0 @ T^-1 == J``.
    """
    n = A0.n
    spec = rational_spectrum(A0)
    cols = []
    types = []
    blocks = []
    for alpha, mult in spec:
        G = KMatrix.from_columns(generalized_eigenspace(A0, alpha, mult))
        M = G.solve(A0 @ G)  # A0 G = G M
        Tn, nu = nilpotent_jordan(M - KMatrix.identity(mult) * alpha)
        Sa = G @ Tn.inverse()
        cols.extend(Sa.col(j) for j in range(mult))
        types.append((alpha, nu))
        blocks.append(jordan_matrix(nu, alpha))
    S = KMatrix.from_columns(cols)
    J = block_diag(*blocks)
    T = S.inverse()
    assert T @ A0 @ S == J
    return T, types, J


def jordan_block(n: int, alpha) -> KMatrix:
    return jordan_matrix((n,), alpha)


def _clearing_c1(A1: KMatrix) -> KMatrix:
    """Solve ``b_ij = a_ij + c_{i,j-1} - c_{i+1,j} = 0`` for j >= 2, diagonal by diagonal.

    The entries of C1 on diagonal delta + 1 (row - col) are fixed by the
    equations of A1's diagonal delta; for delta < 0 the last unknown is 0.
    """
    n = A1.n
    c = [[_ZERO] * (n + 2) for _ in range(n + 2)]  # 1-based with a zero border

    def a(i, j):
        return A1[i - 1, j - 1]

    for delta in range(n - 1, -n, -1):
        if delta >= 0:
            # unknowns x_j = c_{j+delta, j-1} for j = 2..n-delta, x_{n-delta+1} = 0
            for j in range(n - delta, 1, -1):
                c[j + delta][j - 1] = c[j + delta + 1][j] - a(j + delta, j)
        else:
            # unknowns x_j for j = 1-delta..n+1; x_{n+1} = c_{n+delta+1, n} = 0
            c[n + delta + 1][n] = _ZERO
            for j in range(n, -delta, -1):
                c[j + delta][j - 1] = c[j + delta + 1][j] - a(j + delta, j)
    return KMatrix._wrap([c[i][1 : n + 1] for i in range(1, n + 1)], n)


def single_block_canonical(A: DualMatrix) -> tuple[DualMatrix, SimilarityWitness]:
    """Canonical form of ``J_{n,alpha} + A1 z``: only column 1 of the z-part survives.

    The surviving column is ``q_traces(A1)``; the solver's answer is checked
    against it.
    """
    n = A.n
    alpha = A.part0[0, 0]
    if A.part0 != jordan_block(n, alpha):
        raise WrongShape("classical part is not a single Jordan block")
    C1 = _clearing_c1(A.part1)
    J = jordan_block(n, 0)
    B1 = A.part1 + C1 @ J - J @ C1
    q = q_traces(A.part1)
    expect = [[q[i] if j == 0 else _ZERO for j in range(n)] for i in range(n)]
    if B1 != KMatrix._wrap(expect, n):
        raise AssertionError("column solve disagrees with the trace invariants")
    D = DualMatrix(KMatrix.identity(n), C1)
    return DualMatrix(A.part0, B1), SimilarityWitness(D)


def scalar_case_canonical(A: DualMatrix) -> tuple[DualMatrix, SimilarityWitness]:
    """``alpha E + A1 z`` to ``alpha E + J z`` with J the normalized Jordan form of A1."""
    n = A.n
    alpha = A.part0[0, 0]
    if A.part0 != KMatrix.identity(n) * alpha:
        raise WrongShape("classical part is not scalar")
    T, _, J = jordan_form(A.part1)
    return DualMatrix(A.part0, J), SimilarityWitness(DualMatrix(T))


def is_normalized_jordan(M: KMatrix) -> bool:
    """True iff M is a Jordan matrix with blocks ordered by (eigenvalue asc, size desc)."""
    n = M.n
    if not M.is_upper_triangular():
        return False
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1:
                if M[i, j] not in (0, 1):
                    return False
                if M[i, j] == 1 and M[i, i] != M[j, j]:
                    return False
            elif M[i, j]:
                return False
    keys = []
    i = 0
    while i < n:
        k = i
        while k + 1 < n and M[k, k + 1] == 1:
            k += 1
        keys.append((M[i, i], -(k - i + 1)))
        i = k + 1
    return keys == sorted(keys)
