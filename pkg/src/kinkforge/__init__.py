"""Heteroclinic orbits of W = |f|^2 for complex polynomials f, with numerical
nondegeneracy and coercivity certificates."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    BlockedByWell,
    BoundaryMinimum,
    Breakdown,
    Budget,
    DegenerateSegment,
    IllConditioned,
    InvalidGrid,
    KinkforgeError,
    LeftSegment,
    NonConvergence,
)
from .holomorphic_potential import ComplexPoly, Well, wells, zeros  # noqa: E402
from .orbit_solver import OrbitProfile, connect, verify_orbit  # noqa: E402
from .presets import preset, presets, product  # noqa: E402
from .spectral import spectrum  # noqa: E402

__all__ = [
    "__version__",
    "BlockedByWell",
    "BoundaryMinimum",
    "Breakdown",
    "Budget",
    "ComplexPoly",
    "DegenerateSegment",
    "IllConditioned",
    "InvalidGrid",
    "KinkforgeError",
    "LeftSegment",
    "NonConvergence",
    "OrbitProfile",
    "Well",
    "connect",
    "preset",
    "presets",
    "product",
    "spectrum",
    "verify_orbit",
    "wells",
    "zeros",
]
