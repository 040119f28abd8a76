from .kummer import ClassSpace, KummerExtension, base_space, kummer_norm_class
from .linalg import nullspace, rank, rref
from .model import IteratedLaurentField, MonomialElem, UnitClassModD, WedgeClass, unit_class, wedge
from .ramification import LaurentPolynomial, RamificationCertificate, eisenstein_level, ramification_certify
from .witness import NormDecomposition, NormFactor, expand_and_verify, norm_witness

__all__ = [
    "ClassSpace", "KummerExtension", "base_space", "kummer_norm_class",
    "nullspace", "rank", "rref",
    "IteratedLaurentField", "MonomialElem", "UnitClassModD", "WedgeClass", "unit_class", "wedge",
    "LaurentPolynomial", "RamificationCertificate", "eisenstein_level", "ramification_certify",
    "NormDecomposition", "NormFactor", "expand_and_verify", "norm_witness",
]
