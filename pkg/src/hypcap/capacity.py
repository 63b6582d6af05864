"""Conformal capacity of ring domains by a second-kind boundary integral equation.

The potential of the condenser (outer boundary at 0, inner boundary at 1)
is written as a double-layer potential on both boundary curves plus a
logarithmic term centred inside the inner set,

    u(z) = D[sigma](z) + A log|z - z2|,

with the side condition ``int_inner sigma ds = 0`` removing the null space
of the double-layer operator on a doubly connected domain.  The double
layer has zero net flux, so the capacity is the flux of the log term,
``cap = -2 pi A``.
"""

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._nystrom import cauchy_sums, double_layer_matrix, smooth_corner_values
from ._validation import ConvergenceError, GeometryError, check_node_count, check_point, check_points
from .discretize import discretize
from .shapes import JordanBoundary


@dataclass(frozen=True)
class Condenser:
    """Ring domain between `outer` and `inner` with its auxiliary points.

    Orientations are normalized on construction (outer counterclockwise,
    inner clockwise).  `aux_inner_point` must lie inside the inner set and
    `aux_domain_point` in the ring domain; both get defaults when omitted.
    """

    outer: JordanBoundary
    inner: JordanBoundary
    aux_domain_point: complex = None
    aux_inner_point: complex = None

    def __post_init__(self):
        outer = self.outer.oriented(ccw=True)
        inner = self.inner.oriented(ccw=False)
        object.__setattr__(self, "outer", outer)
        object.__setattr__(self, "inner", inner)
        inner_pts = inner.sample(64)
        if not np.all(outer.contains(inner_pts)):
            raise GeometryError("inner boundary is not inside the outer boundary")
        if np.any(inner.contains(outer.sample(64))):
            raise GeometryError("outer boundary points lie inside the inner boundary")
        z2 = self.aux_inner_point
        z2 = _default_inner_point(inner) if z2 is None else check_point(z2, "aux_inner_point")
        if not inner.contains(z2)[0]:
            raise GeometryError(f"auxiliary point {z2} is not inside the inner set")
        alpha = self.aux_domain_point
        alpha = _default_domain_point(outer, inner, z2) if alpha is None else check_point(alpha, "aux_domain_point")
        if not (outer.contains(alpha)[0] and not inner.contains(alpha)[0]):
            raise GeometryError(f"auxiliary point {alpha} is not in the ring domain")
        object.__setattr__(self, "aux_inner_point", complex(z2))
        object.__setattr__(self, "aux_domain_point", complex(alpha))


def _default_inner_point(inner):
    c = inner.centroid()
    if inner.contains(c)[0]:
        return c
    # non-convex inner set: pull boundary points towards the centroid until inside
    for p in inner.sample(32):
        for s in (0.5, 0.25, 0.1, 0.05):
            q = p + s * (c - p)
            if inner.contains(q)[0]:
                return q
    raise GeometryError("could not find a point inside the inner set")


def _default_domain_point(outer, inner, z2):
    pin = inner.sample(64)
    pout = outer.sample(256)
    # midpoint of the widest gap between inner tips and the outer boundary
    order = np.argsort(-np.abs(pin - z2))
    for i in order:
        q = pout[np.argmin(np.abs(pout - pin[i]))]
        a = 0.5 * (pin[i] + q)
        if outer.contains(a)[0] and not inner.contains(a)[0]:
            return a
    raise GeometryError("could not find a point in the ring domain")


@dataclass
class CapacityResult:
    """Capacity with its a-posteriori error estimate ``|cap(n) - cap(n/2)|``."""

    value: float
    error_estimate: float
    n_nodes: int
    potential_at_aux: float = math.nan
    error: str = None
    meta: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.error is None

    def to_record(self, shape="", params=None, t=None):
        return {
            "shape": shape,
            "params": params or {},
            "t": t,
            "cap": self.value,
            "err_est": self.error_estimate,
            "n_nodes": self.n_nodes,
        }

    def to_json(self, **kw):
        return json.dumps(self.to_record(**kw))


def _solve(condenser, n, grading, minimum):
    d1 = discretize(condenser.outer, n, grading, minimum=minimum)
    d2 = discretize(condenser.inner, n, grading, minimum=minimum)
    z = np.concatenate([d1.z, d2.z])
    dz = np.concatenate([d1.dz, d2.dz])
    d2z = np.concatenate([d1.d2z, d2.d2z])
    h = 2 * np.pi / n
    N = 2 * n
    z2 = condenser.aux_inner_point
    A = np.empty((N + 1, N + 1))
    A[:N, :N] = double_layer_matrix(z, dz, d2z, h)
    A[np.arange(N), np.arange(N)] += 0.5
    A[:N, N] = np.log(np.abs(z - z2))
    A[N, :n] = 0.0
    A[N, n:N] = h
    A[N, N] = 0.0
    rhs = np.zeros(N + 1)
    rhs[n:N] = 1.0
    try:
        x = np.linalg.solve(A, rhs)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError("singular boundary integral system") from exc
    if not np.all(np.isfinite(x)):
        raise ConvergenceError("non-finite solution of the boundary integral system")
    sigma = np.concatenate([smooth_corner_values(x[:n], d1.dz), smooth_corner_values(x[n:N], d2.dz)])
    return z, dz, h, sigma, x[N]


class CapacitySolver(BaseEstimator):
    """Estimator computing ``cap(G, E)`` for a ring domain ``G \\ E``.

    Parameters
    ----------
    n : int
        Nodes per boundary curve (even).
    grading : float
        Corner grading exponent.
    tol : float or None
        If set, `n` is doubled (up to `n_max`) until the relative error
        estimate drops below `tol`.
    n_max : int
        Upper limit for the refinement loop.
    max_rel_error : float
        Relative error estimate above which the geometry is reported as
        under-resolved instead of returning a value.
    """

    def __init__(self, n=768, grading=3, tol=None, n_max=4096, max_rel_error=0.1):
        self.n = n
        self.grading = grading
        self.tol = tol
        self.n_max = n_max
        self.max_rel_error = max_rel_error

    def fit(self, condenser, y=None):
        if not isinstance(condenser, Condenser):
            raise TypeError("fit expects a Condenser")
        n = check_node_count(self.n, minimum=64)
        coarse = _solve(condenser, n // 2, self.grading, minimum=32)
        while True:
            fine = _solve(condenser, n, self.grading, minimum=64)
            cap_c, cap_f = -2 * np.pi * coarse[4], -2 * np.pi * fine[4]
            err = abs(cap_f - cap_c)
            if self.tol is None or err <= self.tol * abs(cap_f) or 2 * n > self.n_max:
                break
            n, coarse = 2 * n, fine
        if not cap_f > 0 or err > self.max_rel_error * abs(cap_f):
            raise GeometryError(
                f"under-resolved condenser at n = {n}: capacity {cap_f:.6g} with error "
                f"estimate {err:.3g}; increase n"
            )
        self.condenser_ = condenser
        self.nodes_, self.dz_, self.h_, self.density_, self.log_coeff_ = fine
        self.n_nodes_ = n
        self.capacity_ = float(cap_f)
        self.error_estimate_ = float(err)
        u_alpha = float(self.predict(condenser.aux_domain_point)[0])
        if not (0.0 < u_alpha < 1.0):
            raise ConvergenceError(f"potential at the auxiliary point is {u_alpha}, outside (0, 1)")
        self.result_ = CapacityResult(self.capacity_, self.error_estimate_, n, u_alpha,
                                      meta={"grading": self.grading})
        return self

    def predict(self, z):
        """Capacity potential: harmonic in the ring domain, 1 on the inner set, 0 outside the outer curve."""
        check_is_fitted(self, "density_")
        z = check_points(z)
        flat = z.ravel()
        n = self.n_nodes_
        u = self.log_coeff_ * np.log(np.abs(flat - self.condenser_.aux_inner_point))
        # per curve, subtract the density at the nearest node; the constant part
        # integrates exactly to the winding number (1 about the outer, 0 about the inner curve)
        for part, winding in ((slice(0, n), 1.0), (slice(n, 2 * n), 0.0)):
            nodes, sigma = self.nodes_[part], self.density_[part]
            num, den = cauchy_sums(nodes, self.dz_[part], self.h_, flat, sigma.astype(complex))
            near = sigma[_nearest(nodes, flat)]
            u += num.real - near * den.real + near * winding
        u[self.condenser_.inner.contains(flat)] = 1.0
        u[~self.condenser_.outer.contains(flat)] = 0.0
        return u.reshape(z.shape)


def _nearest(nodes, points, chunk=512):
    out = np.empty(points.size, dtype=int)
    for start in range(0, points.size, chunk):
        out[start:start + chunk] = np.argmin(np.abs(points[start:start + chunk, None] - nodes[None, :]), axis=1)
    return out


def capacity(c, n=768, grading=3, **kw):
    """Capacity of condenser `c` as a `CapacityResult`."""
    return CapacitySolver(n=n, grading=grading, **kw).fit(c).result_


def capacity_sweep(family, params, n=768, grading=3, **kw):
    """Capacity for each parameter; failures are recorded per item and the sweep continues."""
    out = []
    for p in params:
        try:
            out.append(capacity(family(p), n=n, grading=grading, **kw))
        except (GeometryError, ConvergenceError, ValueError) as exc:
            out.append(CapacityResult(math.nan, math.nan, n, error=f"{type(exc).__name__}: {exc}"))
    return out
