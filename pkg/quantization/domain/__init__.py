from quantization.domain.disc import CnPolynomial, DiscElement, DiscIndex
from quantization.domain.enveloping import UEAElement
from quantization.domain.lie import LieMorphism, LieStructure
from quantization.domain.multiindex import MultiIndex
from quantization.domain.scalars import RationalFunction
from quantization.domain.symmetric import SymElement
from quantization.domain.weyl import BilinearForm

__all__ = [
    "BilinearForm",
    "CnPolynomial",
    "DiscElement",
    "DiscIndex",
    "LieMorphism",
    "LieStructure",
    "MultiIndex",
    "RationalFunction",
    "SymElement",
    "UEAElement",
]
