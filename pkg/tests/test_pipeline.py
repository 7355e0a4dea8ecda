from __future__ import annotations

import random
from fractions import Fraction

import pytest

from dualcanon.dual_core import ZETA, DualMatrix, DualScalar, KMatrix
from dualcanon.errors import DimensionMismatch, IrrationalSpectrum, UnsupportedOrder
from dualcanon.mu_canon import is_in_Rm, mu_canonical
from dualcanon.nu_structure import jordan_matrix, restrict_pq
from dualcanon.pipeline import (
    Family,
    Verdict,
    _similar_linear,
    canonical_small,
    classify,
    default_seed,
    fuzz_conjugate,
    mixed_21_canonical,
    similar,
)
from dualcanon.sampling import random_dual_invertible, random_dual_matrix, random_rational_spectrum_dual

from .families import random_family_member

F = Fraction


class TestFixedExamples:
    def test_mixed(self):
        A = DualMatrix(jordan_matrix((2, 1)), KMatrix.diag([1, 2, 3]))
        cf = canonical_small(A)
        assert cf.family is Family.N3_MIXED_21
        assert cf.matrix == DualMatrix(jordan_matrix((2, 1)), KMatrix([[3, 0, 0], [0, 0, 0], [0, 0, 3]]))
        assert cf.verify(A)

    def test_jordan_two(self):
        A = DualMatrix(jordan_matrix((2,)), KMatrix([[1, 2], [3, 4]]))
        cf = canonical_small(A)
        assert cf.family is Family.N2_JORDAN
        assert cf.matrix.part1 == KMatrix([[5, 0], [3, 0]])
        assert cf.verify(A)

    def test_diag_fixed_point(self):
        A = DualMatrix.diag([DualScalar(1, 1), 2])
        cf = canonical_small(A)
        assert cf.family is Family.N2_DIAG and cf.matrix == A

    def test_split_order(self):
        A = DualMatrix.diag([3, 1]) + DualMatrix(KMatrix.zeros(2), KMatrix([[1, 1], [1, 1]]))
        cf = canonical_small(A)
        assert cf.matrix == DualMatrix.diag([DualScalar(1, 1), DualScalar(3, 1)])

    def test_unsupported(self):
        with pytest.raises(UnsupportedOrder):
            canonical_small(DualMatrix.identity(4))
        with pytest.raises(UnsupportedOrder):
            canonical_small(DualMatrix.identity(1))
        with pytest.raises(IrrationalSpectrum):
            canonical_small(DualMatrix(KMatrix([[0, 2], [1, 0]])))


def _mixed_input(rng: random.Random) -> DualMatrix:
    return DualMatrix(jordan_matrix((2, 1), rng.randint(-2, 2)), random_dual_matrix(rng, 3).part1)


class TestMixedCase:
    def test_trace_consistency(self, rng):
        for _ in range(100):
            A = _mixed_input(rng)
            M, w = mixed_21_canonical(A)
            assert w.verify(A, M)
            assert M.part1[0, 0] + M.part1[2, 2] == A.part1.trace()
            assert classify(M) == [Family.N3_MIXED_21]

    def test_r2_block(self, rng):
        for _ in range(50):
            A = _mixed_input(rng)
            M, _ = mixed_21_canonical(A)
            Z = restrict_pq(M.part1, (2, 1))
            assert is_in_Rm(Z)
            assert Z == mu_canonical(restrict_pq(A.part1, (2, 1)))[0]


@pytest.mark.parametrize("family", list(Family))
def test_family_fixed_points(family, rng):
    for _ in range(40):
        M = random_family_member(rng, family)
        assert classify(M) == [family]
        cf = canonical_small(M)
        assert cf.family is family
        assert cf.matrix == M
        assert cf.verify(M)


def test_random_completeness_and_soundness(rng):
    for _ in range(150):
        A = random_rational_spectrum_dual(rng, rng.choice([2, 3]))
        cf = canonical_small(A)
        assert cf.verify(A)
        assert classify(cf.matrix) == [cf.family]
        for s in range(2):
            cb = canonical_small(fuzz_conjugate(A, s))
            assert (cb.family, cb.matrix) == (cf.family, cf.matrix)


def test_fuzz_of_canonical_recanonicalizes(rng):
    for family in Family:
        M = random_family_member(rng, family)
        for s in range(3):
            assert canonical_small(fuzz_conjugate(M, s)).matrix == M


def test_fuzz_is_seed_stable(rng):
    A = random_dual_matrix(rng, 3)
    assert fuzz_conjugate(A, 7) == fuzz_conjugate(A, 7)
    assert fuzz_conjugate(A, 7) != fuzz_conjugate(A, 8)


class TestSimilar:
    def test_identity(self, rng):
        A = random_dual_matrix(rng, 4)
        r = similar(A, A)
        assert r.verdict is Verdict.SIMILAR and r.witness.D == DualMatrix.identity(4)

    def test_dimension(self):
        with pytest.raises(DimensionMismatch):
            similar(DualMatrix.identity(2), DualMatrix.identity(3))

    def test_zeta_diagonals(self):
        A = DualMatrix.diag([ZETA, -ZETA])
        for B in (DualMatrix.diag([ZETA, ZETA]), DualMatrix.diag([2 * ZETA, -2 * ZETA])):
            for method in ("auto", "canonical", "linear"):
                r = similar(A, B, method=method)
                assert r.verdict in (Verdict.NOT_SIMILAR, Verdict.PROBABLY_NOT_SIMILAR)

    def test_equal_char_poly_pair_linear(self):
        # same char poly t^2, so only the linear system can tell them apart
        A = DualMatrix.diag([ZETA, -ZETA])
        B = DualMatrix.diag([2 * ZETA, -2 * ZETA])
        assert A.char_poly() == B.char_poly()
        assert _similar_linear(A, B, 16, 0).verdict is Verdict.NOT_SIMILAR
        assert _similar_linear(A, DualMatrix.diag([-ZETA, ZETA]), 16, 0).verdict is Verdict.SIMILAR

    def test_conjugates(self, rng):
        for _ in range(60):
            n = rng.randint(1, 4)
            A = random_dual_matrix(rng, n, -3, 3)
            D = random_dual_invertible(rng, n)
            B = D @ A @ D.inverse()
            r = similar(A, B, method="linear", seed=rng.randrange(10**6))
            assert r.verdict is Verdict.SIMILAR
            assert r.witness.verify(A, B)

    def test_canonical_route(self, rng):
        for _ in range(60):
            A = random_rational_spectrum_dual(rng, rng.choice([2, 3]))
            B = fuzz_conjugate(A, rng.randrange(1000))
            r = similar(A, B)
            assert r.verdict is Verdict.SIMILAR and r.method in ("canonical", "identity")
            assert r.witness.verify(A, B)

    def test_unsupported(self):
        A = DualMatrix(KMatrix([[0, 2], [1, 0]]))
        B = DualMatrix(KMatrix([[0, 1], [2, 0]]))
        assert similar(A, B, method="canonical").verdict is Verdict.UNSUPPORTED
        r = similar(A, B)
        assert r.verdict is Verdict.SIMILAR and r.witness.verify(A, B)
        assert similar(DualMatrix.identity(4), DualMatrix.identity(4) * 1, method="canonical").verdict is Verdict.SIMILAR
        C = DualMatrix(jordan_matrix((4,)))
        assert similar(C, fuzz_conjugate(C, 1), method="canonical").verdict is Verdict.UNSUPPORTED

    def test_distinct_canonical_members_not_similar(self, rng):
        for family in Family:
            for _ in range(6):
                M, N = random_family_member(rng, family), random_family_member(rng, family)
                if M == N:
                    continue
                r = similar(M, N, method="linear", trials=16)
                assert r.verdict is not Verdict.SIMILAR

    def test_bad_method(self):
        with pytest.raises(ValueError):
            similar(DualMatrix.identity(2), DualMatrix.diag([1, 2]), method="magic")


def test_default_seed(monkeypatch):
    monkeypatch.delenv("DUALCANON_SEED", raising=False)
    assert default_seed() == 0
    monkeypatch.setenv("DUALCANON_SEED", "42")
    assert default_seed() == 42
