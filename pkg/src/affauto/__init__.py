"""Exact tools for polynomial automorphisms of affine space and of A^n/mu_d."""

from affauto.endo import AutoWord, PolyMap, compose, invert
from affauto.errors import AffautoError, BoundError, DomainError, ParseError
from affauto.exactpoly import Polynomial, poly_dth_root, poly_parse

__version__ = "0.1.0"

__all__ = [
    "AffautoError",
    "AutoWord",
    "BoundError",
    "DomainError",
    "ParseError",
    "PolyMap",
    "Polynomial",
    "compose",
    "invert",
    "poly_dth_root",
    "poly_parse",
]
