"""Exact Waring ranks, minimal decompositions and Waring/forbidden loci."""

from .frontend import from_json, parse_point, parse_poly, print_poly, to_json
from .polycore import MPoly, ProjPoint, apolar_act, catalecticant

__version__ = "0.1.0"

__all__ = [
    "MPoly",
    "ProjPoint",
    "apolar_act",
    "catalecticant",
    "from_json",
    "parse_point",
    "parse_poly",
    "print_poly",
    "to_json",
]
