"""Acceptance suite: ten criteria, each checked exactly and under its time limit.

A summary line per criterion is printed in the pytest terminal summary.
"""
from __future__ import annotations

import random
from fractions import Fraction

from dualcanon.dual_core import ZETA, DualMatrix, DualScalar, KMatrix
from dualcanon.jordan_layer import q_traces, single_block_canonical
from dualcanon.mu_canon import (
    f_RS,
    is_in_Um,
    mu_canonical,
    mu_conjugate,
    mu_similar_oracle,
    random_mu_pair,
    random_Um,
    unitary_canonical,
)
from dualcanon.nu_structure import (
    det_identities_check,
    is_in_Bnu,
    jordan_matrix,
    random_Bnu,
    random_in_Wnu,
    restrict,
    restrict_pq,
)
from dualcanon.pipeline import Family, Verdict, _similar_linear, canonical_small, classify, fuzz_conjugate, similar
from dualcanon.polyalg import QPoly, char_poly, lift_factorization
from dualcanon.sampling import (
    random_dual_invertible,
    random_dual_matrix,
    random_kmatrix,
    random_rational_spectrum_dual,
    random_rational_spectrum_kmatrix,
)
from dualcanon.spectral_split import assemble, diagonal_canonical, spectral_split

from .acceptance_report import criterion
from .test_jordan_layer import random_class_conjugate
from .test_mu_canon import sparse_matrix

F = Fraction


def r2_families(M: KMatrix) -> list[str]:
    out = []
    if M[0, 1] == 0 and M[1, 0] == 0:
        out.append("diag")
    if M[0, 0] == 0 and M[1, 1] == 0 and M[1, 0] == 1:
        out.append("cyclic")
    if M == KMatrix([[0, 1], [0, 0]]):
        out.append("nilpotent")
    return out


def random_2x2(rng: random.Random) -> KMatrix:
    def entry():
        if rng.random() < 0.35:
            return F(0)
        return F(rng.randint(-9, 9), rng.randint(1, 4))

    return KMatrix([[entry(), entry()], [entry(), entry()]])


def random_mu_input(rng: random.Random, m: int) -> KMatrix:
    kind = rng.random()
    if kind < 0.35:
        return sparse_matrix(m, rng)
    if kind < 0.6:
        return random_Um(m, rng)
    if kind < 0.8:
        return sparse_matrix(m, rng, density=0.8)
    return random_kmatrix(rng, m, -4, 4, max_den=3)


def test_criterion_01_r2_enumeration():
    rng = random.Random(101)
    with criterion(1, "R2 enumeration, 1000 random 2x2", 5):
        seen = set()
        for _ in range(1000):
            A = random_2x2(rng)
            R, w = mu_canonical(A)
            fams = r2_families(R)
            assert len(fams) == 1, (A, R, fams)
            assert w.verify()
            seen.add(fams[0])
        assert seen == {"diag", "cyclic", "nilpotent"}


def test_criterion_02_mu_canonical_invariance():
    rng = random.Random(102)
    with criterion(2, "mu-canonical invariance, 500 pairs m<=5", 30):
        for _ in range(500):
            m = rng.randint(1, 5)
            A = random_mu_input(rng, m)
            C, Ct = random_mu_pair(m, rng)
            B = mu_conjugate(A, C, Ct)
            assert mu_canonical(B)[0] == mu_canonical(A)[0]


def test_criterion_03_um_fixed_points():
    rng = random.Random(103)
    with criterion(3, "U_m fixed points, 300 cases m<=6", 10):
        for _ in range(300):
            U = random_Um(rng.randint(1, 6), rng, density=rng.choice([0.3, 0.7, 1.0]))
            assert is_in_Um(U)
            assert unitary_canonical(U)[0] == U


def test_criterion_04_determinant_identities():
    rng = random.Random(104)
    with criterion(4, "determinant identities, 300 B-bar members", 10):
        # the 4x4 nu=(2,2) layout with regular 2x2 blocks
        for _ in range(20):
            b = [F(rng.randint(-5, 5)) for _ in range(8)]
            B = KMatrix(
                [
                    [b[0], b[1], b[2], b[3]],
                    [0, b[0], 0, b[2]],
                    [b[4], b[5], b[6], b[7]],
                    [0, b[4], 0, b[6]],
                ]
            )
            assert is_in_Bnu(B, (2, 2))
            BP, BQ = restrict(B, (2, 2))
            assert BP == BQ == KMatrix([[b[0], b[2]], [b[4], b[6]]])
            assert B.det() == BP.det() ** 2
        partitions = [(2, 2), (3, 1), (2, 2, 1), (4, 2), (3, 2, 1)]
        for k in range(300):
            nu = partitions[k % len(partitions)]
            B = random_Bnu(nu, rng, invertible=False)
            assert det_identities_check(B, nu)


def test_criterion_05_restriction_algebra():
    rng = random.Random(105)
    partitions = [(2, 1), (2, 2), (3, 1), (2, 2, 1), (3, 2, 1), (4, 2), (3, 3, 1)]
    with criterion(5, "restriction algebra, five identities x 300", 20):
        for _ in range(300):
            nu = rng.choice(partitions)
            B1, B2 = random_Bnu(nu, rng, invertible=False), random_Bnu(nu, rng, invertible=False)
            P1, Q1 = restrict(B1, nu)
            P2, Q2 = restrict(B2, nu)
            assert restrict(B1 @ B2, nu) == (P1 @ P2, Q1 @ Q2)
        for _ in range(300):
            nu = rng.choice(partitions)
            B = random_Bnu(nu, rng)
            A = random_kmatrix(rng, sum(nu))
            BP, BQ = restrict(B, nu)
            assert restrict_pq(B @ A @ B.inverse(), nu) == BP @ restrict_pq(A, nu) @ BQ.inverse()
        for _ in range(300):
            nu = rng.choice(partitions)
            B = random_Bnu(nu, rng)
            assert restrict(B.inverse(), nu)[1] == restrict(B, nu)[1].inverse()
        for _ in range(300):
            nu = rng.choice(partitions)
            W = random_in_Wnu(nu, rng)
            B = random_Bnu(nu, rng, invertible=False)
            assert restrict_pq(B @ W, nu).is_zero() and restrict_pq(W @ B, nu).is_zero()
        for _ in range(300):
            m = rng.randint(2, 5)
            r, s = rng.randint(1, m), rng.randint(1, m)
            A = random_kmatrix(rng, m, -4, 4)
            C = [[rng.randint(-3, 3) if j <= i else 0 for j in range(m)] for i in range(m)]
            D = [[rng.randint(-3, 3) if i <= j else 0 for j in range(m)] for i in range(m)]
            for j in range(m):
                if j != r - 1:
                    C[r - 1][j] = 0
            for i in range(m):
                if i != s - 1:
                    D[i][s - 1] = 0
            C, D = KMatrix(C), KMatrix(D)
            assert f_RS(C @ A @ D, [r], [s]) == f_RS(C, [r], [r]) @ f_RS(A, [r], [s]) @ f_RS(D, [s], [s])


def test_criterion_06_single_block_pipeline():
    rng = random.Random(106)
    with criterion(6, "single Jordan block pipeline, 200 inputs n<=6", 20):
        for _ in range(200):
            n = rng.randint(1, 6)
            A = DualMatrix(jordan_matrix((n,), rng.randint(-3, 3)), random_kmatrix(rng, n))
            B, w = single_block_canonical(A)
            assert list(B.part1.col(0)) == q_traces(A.part1)
            assert all(B.part1[i, j] == 0 for i in range(n) for j in range(1, n))
            assert w.D @ A @ w.D.inverse() == B
            first = single_block_canonical(random_class_conjugate(rng, A))[0]
            second = single_block_canonical(random_class_conjugate(rng, A))[0]
            assert first == second == B


def test_criterion_07_spectral_split():
    rng = random.Random(107)
    with criterion(7, "spectral split, 200 inputs n<=5", 20):
        for _ in range(200):
            n = rng.randint(1, 5)
            A = DualMatrix(random_rational_spectrum_kmatrix(rng, n), random_kmatrix(rng, n, -4, 4))
            blocks, w = spectral_split(A)
            assert w.D @ A @ w.D.inverse() == assemble(blocks)
            f = char_poly(A)
            if len(blocks) > 1:
                f0p = QPoly.from_roots([blocks[0].eigenvalue] * blocks[0].size)
                f0pp = f.part0 // f0p
                fp, fpp = lift_factorization(f, f0p, f0pp)
                assert fp * fpp == f


def test_criterion_08_small_order_canonicalization():
    rng = random.Random(108)
    with criterion(8, "orders 2 and 3, 500 inputs x 8 fuzz seeds", 60):
        A = DualMatrix(jordan_matrix((2, 1)), KMatrix.diag([1, 2, 3]))
        cf = canonical_small(A)
        assert cf.matrix == DualMatrix(jordan_matrix((2, 1)), KMatrix([[3, 0, 0], [0, 0, 0], [0, 0, 3]]))
        assert cf.verify(A)
        seen = set()
        for _ in range(500):
            A = random_rational_spectrum_dual(rng, rng.choice([2, 3]))
            cf = canonical_small(A)
            assert cf.verify(A)
            assert classify(cf.matrix) == [cf.family]
            seen.add(cf.family)
            for s in range(8):
                cb = canonical_small(fuzz_conjugate(A, s))
                assert cb.family is cf.family and cb.matrix == cf.matrix
        assert seen == set(Family)


def test_criterion_09_oracle_agreement():
    rng = random.Random(109)
    with criterion(9, "oracle agreement and general similarity", 30):
        agree = {True: 0, False: 0}
        for k in range(200):
            m = rng.randint(1, 4)
            A = sparse_matrix(m, rng, density=0.5, lo=-1, hi=1)
            if k % 2 == 0:
                C, Ct = random_mu_pair(m, rng)
                B = mu_conjugate(A, C, Ct)
            else:
                B = sparse_matrix(m, rng, density=0.5, lo=-1, hi=1)
            same = mu_canonical(A)[0] == mu_canonical(B)[0]
            assert mu_similar_oracle(A, B) == same
            agree[same] += 1
        assert agree[True] >= 100 and agree[False] > 0
        for _ in range(200):
            n = rng.randint(1, 4)
            A = random_dual_matrix(rng, n, -3, 3)
            D = random_dual_invertible(rng, n)
            B = D @ A @ D.inverse()
            r = similar(A, B, method="linear", seed=rng.randrange(2**32))
            assert r.verdict is Verdict.SIMILAR and r.witness.verify(A, B)
        left = DualMatrix.diag([ZETA, -ZETA])
        right = DualMatrix.diag([ZETA, ZETA])
        refuted = (Verdict.NOT_SIMILAR, Verdict.PROBABLY_NOT_SIMILAR)
        for method in ("auto", "linear"):
            assert similar(left, right, method=method).verdict in refuted
        assert _similar_linear(left, right, 64, 0).verdict in refuted
        # a pair with equal char polys, so the linear system alone must refute it
        far = DualMatrix.diag([2 * ZETA, -2 * ZETA])
        assert char_poly(left) == char_poly(far)
        assert _similar_linear(left, far, 64, 0).verdict in refuted


def test_criterion_10_diagonal_uniqueness():
    rng = random.Random(110)
    with criterion(10, "diagonal permutation uniqueness", 10):
        for _ in range(100):
            n = rng.randint(1, 6)
            entries = [DualScalar(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(n)]
            perm = entries[:]
            rng.shuffle(perm)
            assert diagonal_canonical(DualMatrix.diag(perm)) == diagonal_canonical(DualMatrix.diag(entries))
        done = 0
        while done < 100:
            n = rng.randint(1, 5)
            xs = [DualScalar(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(n)]
            ys = [DualScalar(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(n)]
            key = lambda v: sorted((x.a0, x.a1) for x in v)  # noqa: E731
            if key(xs) == key(ys):
                continue
            r = similar(DualMatrix.diag(xs), DualMatrix.diag(ys), seed=done)
            assert r.verdict is not Verdict.SIMILAR
            done += 1
