"""Schubert polynomials via prism tableaux, pipe dreams and their overlays."""

from .kernels import BACKEND
from .permutation import Permutation, parse_permutation
from .pipedream import PlusDiagram, min_plus
from .polynomial import IntPolynomial, schubert
from .prism import PrismTableau, prism, prism_polynomial

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "IntPolynomial",
    "Permutation",
    "PlusDiagram",
    "PrismTableau",
    "min_plus",
    "parse_permutation",
    "prism",
    "prism_polynomial",
    "schubert",
]
