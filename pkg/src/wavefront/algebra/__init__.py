"""Exact polynomial arithmetic, resultants and the modular resultant pipeline."""

from .mpoly import MPoly, NotDivisible, ArityMismatch
from .upoly import UPoly, up_from_mpoly, up_derivative, up_gcd
from .rational import PrimeField, normalize
from .serialize import to_text, to_json, parse_poly, from_json
from .weights import WeightSystem, Homogeneous, NotHomogeneous, weighted_degree
from .resultant import sylvester, resultant, psc1, psc, subresultant_chain, bareiss_det

__all__ = [
    "MPoly", "NotDivisible", "ArityMismatch", "UPoly", "up_from_mpoly", "up_derivative", "up_gcd",
    "PrimeField", "normalize", "to_text", "to_json", "parse_poly", "from_json",
    "WeightSystem", "Homogeneous", "NotHomogeneous", "weighted_degree",
    "sylvester", "resultant", "psc1", "psc", "subresultant_chain", "bareiss_det",
]
