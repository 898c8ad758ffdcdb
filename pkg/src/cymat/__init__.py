"""Cyclic matroids on Z_n: construction, verification, counting and search."""

from .errors import CymatError
from .matroid import BasesSet, CyclicMatroid, from_orbit_representatives
from .zn_sets import ZnSubset

__all__ = ["BasesSet", "CyclicMatroid", "CymatError", "ZnSubset", "from_orbit_representatives"]
__version__ = "0.1.0"
