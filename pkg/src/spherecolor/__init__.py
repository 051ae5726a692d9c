"""Recoloring of even sphere triangulations.

Balanced-condition checks, explicit recoloring sequences, connectivity of the
4-coloring reconfiguration graph, higher-dimensional signatures, hardness
instance construction and a brute-force oracle for small inputs.
"""

from .coloring import Coloring
from .complex import OrientedTriangulation2

__version__ = "0.1.0"

__all__ = ["Coloring", "OrientedTriangulation2", "__version__"]
