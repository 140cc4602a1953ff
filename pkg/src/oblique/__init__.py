"""Volume, surface area and mean width of oblique circular cylinders and cones."""

__version__ = "0.1.0"

from .base import (BodyMeasures, BranchError, ConeGeom, CylinderGeom, DomainError,
                   QuadratureError, RootError, ToleranceConfig, assemble_mean_width)
from .cone import cone_area, cone_edge_term, cone_imc, cone_mean_width, cone_measures, cone_volume
from .cylinder import (cyl_area, cyl_edge_term, cyl_imc, cyl_mean_width, cyl_measures,
                       cyl_section_ellipse, cyl_volume)
from .elliptic import ellip_e, ellip_k, ellip_pi, eta, xi
from .halfcone import HalfSide, half_measures
from .optimize import solve, solve_ar_addendum, solve_ar_lateral, solve_ar_total, solve_mw
