"""Exact similarity canonical forms for matrices over the dual numbers Q[z]/(z^2)."""
from .dual_core import ZETA, DualMatrix, DualScalar, KMatrix, Rational, dual_inv, dual_mul
from .errors import (
    DimensionMismatch,
    DualCanonError,
    IndexOutOfRange,
    IrrationalSpectrum,
    NotCoprime,
    NotDiagonal,
    NotInUm,
    NotInvertible,
    NotMuMutual,
    NotNilpotent,
    ParseError,
    SpectraNotDisjoint,
    UnsupportedCardinality,
    UnsupportedOrder,
    WrongShape,
    ZeroMatrix,
)
from .kernels import BACKEND
from .mu_canon import mu_canonical, mu_similar_oracle, unitary_canonical
from .nu_structure import Partition
from .pipeline import CanonicalForm, Family, Verdict, canonical_small, fuzz_conjugate, similar
from .polyalg import DPoly, QPoly, char_poly
from .spectral_split import SimilarityWitness, spectral_split

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CanonicalForm",
    "DPoly",
    "DimensionMismatch",
    "DualCanonError",
    "DualMatrix",
    "DualScalar",
    "Family",
    "IndexOutOfRange",
    "IrrationalSpectrum",
    "KMatrix",
    "NotCoprime",
    "NotDiagonal",
    "NotInUm",
    "NotInvertible",
    "NotMuMutual",
    "NotNilpotent",
    "ParseError",
    "Partition",
    "QPoly",
    "Rational",
    "SimilarityWitness",
    "SpectraNotDisjoint",
    "UnsupportedCardinality",
    "UnsupportedOrder",
    "Verdict",
    "WrongShape",
    "ZETA",
    "ZeroMatrix",
    "canonical_small",
    "char_poly",
    "dual_inv",
    "dual_mul",
    "fuzz_conjugate",
    "mu_canonical",
    "mu_similar_oracle",
    "similar",
    "spectral_split",
    "unitary_canonical",
]
