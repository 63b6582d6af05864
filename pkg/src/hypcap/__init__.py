"""Hyperbolic diameters, Jung-type capacity bounds and numerical conformal capacity in the disk."""

__version__ = "0.1.0"

from ._validation import ConvergenceError, DomainError, GeometryError
from .bounds import (
    b1,
    b2,
    bounds_report,
    cap_seg,
    cap_upper_n,
    jung_h,
    jung_phi_uniform,
    jung_ratio_bounds,
    omega,
    qc_diameter_bound,
)
from .capacity import CapacityResult, CapacitySolver, Condenser, capacity, capacity_sweep
from .conformal import RiemannMap, hyp_diameter, rho_G, riemann_map
from .discretize import DiscretizedBoundary, discretize
from .hyperbolic import HypBall, geodesic_segment, hyp_ball, hyp_diameter_points, mobius, rho_disk
from .shapes import (
    CircleArc,
    JordanBoundary,
    LineArc,
    SplineArc,
    circle,
    euc_reuleaux,
    euc_reuleaux_with_hyp_diameter,
    hyp_reuleaux,
    dumbbell_polygon,
    polygon,
    read_boundary_csv,
    reuleaux_radius_for_diameter,
    reuleaux_vertex_distance,
    square,
    unit_circle,
    write_boundary_csv,
)
from .special import agm, ellip_K, gamma2, mu, tau2

__all__ = [name for name in dir() if not name.startswith("_")]
