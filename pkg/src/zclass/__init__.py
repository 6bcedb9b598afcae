"""Exact rational tools for Z-matrix subclasses: classification, generalized
inverses, small linear complementarity problems, 3x3 circulant regions and
seeded instance generators."""

from .linalg import RatMatrix, det, identity, inverse, rank
from .classify import ClassLabel
from .geninv import group_inverse, moore_penrose, moore_penrose_greville

__all__ = [
    "ClassLabel",
    "RatMatrix",
    "det",
    "group_inverse",
    "identity",
    "inverse",
    "moore_penrose",
    "moore_penrose_greville",
    "rank",
]

__version__ = "0.1.0"
