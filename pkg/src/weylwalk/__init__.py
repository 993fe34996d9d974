"""Weyl quantum walks on the BCC lattice and their deformed Lorentz symmetry."""

from .geometry import Region, n_inverse, n_of, region_of
from .lattice import LatticeVector, PeriodicGrid, generators, in_brillouin
from .rescaling import OnShellPoint, dmap, dmap_inverse, f_prime
from .symmetry import boost, deformed_apply, orbit, rotation, spinor_pair, vector_rep
from .walk import WalkKind, coin_set, eigen_spinor, step, walk_matrix

__all__ = [
    "LatticeVector", "OnShellPoint", "PeriodicGrid", "Region", "WalkKind",
    "boost", "coin_set", "deformed_apply", "dmap", "dmap_inverse", "eigen_spinor",
    "f_prime", "generators", "in_brillouin", "n_inverse", "n_of", "orbit",
    "region_of", "rotation", "spinor_pair", "step", "vector_rep", "walk_matrix",
]
