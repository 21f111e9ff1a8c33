"""Exact polynomial substrate: scalars, sparse polynomials, apolarity, binary forms."""

from .apolar import CatalecticantMatrix, annihilates, apolar_act, catalecticant
from .binary import (
    discriminant_binary,
    resultant_binary,
    roots_binary,
    roots_binary_numeric,
    squarefree_binary,
)
from .mpoly import MPoly, default_names, dual_names, monomials_of_degree
from .points import ProjPoint
from .scalars import I, QQi

__all__ = [
    "CatalecticantMatrix",
    "I",
    "MPoly",
    "ProjPoint",
    "QQi",
    "annihilates",
    "apolar_act",
    "catalecticant",
    "default_names",
    "discriminant_binary",
    "dual_names",
    "monomials_of_degree",
    "resultant_binary",
    "roots_binary",
    "roots_binary_numeric",
    "squarefree_binary",
]
