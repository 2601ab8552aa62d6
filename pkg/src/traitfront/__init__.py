"""Numerical laboratory for front propagation with an unbounded motility trait.

The package studies one population model on the half-plane (x, theta >= 0)
from four directions that must agree with each other:

* an explicit solver for the scaled reaction-diffusion system (``reaction_diffusion``),
* a monotone finite-difference solver for the three limiting interface
  equations — obstacle, free action, geometric (``hamilton_jacobi``),
* direct trajectory optimization of the action functional (``trajectories``),
* a fast-sweeping geodesic distance solver (``eikonal``).

``fronts`` turns any of their outputs into front positions and set
comparisons, ``acceptance`` packages the cross-method agreement checks, and
``cli`` exposes everything as subcommands.  Hot kernels live in
``_kernels`` with a compiled extension and a pure-NumPy fallback selected at
import time (override with TRAITFRONT_BACKEND=pure|compiled).
"""

__version__ = "0.1.0"

from .config import RunConfig, default_config, parse_config, serialize_config
from .errors import (
    ConfigError,
    DomainError,
    FrontOutOfDomainError,
    NumericalError,
    TraitfrontError,
)
from .grid import HalfPlaneGrid, ScalarField
from .profiles import (
    DiffusionProfile,
    linear_profile,
    oscillating_log_profile,
    power_law_profile,
    tabulated_profile,
)
from .regions import ConvexRegion, cap_region, polygon_region

__all__ = [
    "__version__",
    "RunConfig",
    "default_config",
    "parse_config",
    "serialize_config",
    "ConfigError",
    "DomainError",
    "FrontOutOfDomainError",
    "NumericalError",
    "TraitfrontError",
    "HalfPlaneGrid",
    "ScalarField",
    "DiffusionProfile",
    "linear_profile",
    "oscillating_log_profile",
    "power_law_profile",
    "tabulated_profile",
    "ConvexRegion",
    "cap_region",
    "polygon_region",
]
