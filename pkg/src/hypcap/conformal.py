"""Numerical Riemann map of a Jordan domain onto the unit disk.

For an interior base point ``alpha`` the map is ``f(z) = (z - alpha) exp(g(z))``
where g is analytic in G with ``Re g = -log|z - alpha|`` on the boundary.
g is represented as a Cauchy integral with real density sigma, which
turns the boundary condition into the second-kind equation
``(I/2 + K) sigma = -log|eta - alpha|``.  Boundary values of g (real part
and conjugate) then feed a barycentric Cauchy formula for interior
evaluation, which stays accurate close to the boundary.

Near heavily graded corners the node images on the unit circle are packed
closer than the attainable accuracy, so the node-wise correspondence can
step backwards there by small amounts; away from corners it is monotone.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin, clone
from sklearn.utils.validation import check_is_fitted

from ._nystrom import cauchy_sums, double_layer_matrix, smooth_corner_values
from ._validation import ConvergenceError, DomainError, GeometryError, check_node_count, check_point, check_points
from .discretize import discretize
from .hyperbolic import hyp_diameter_points, rho_disk
from .shapes import JordanBoundary


class RiemannMap(BaseEstimator, TransformerMixin):
    """Conformal map of the interior of a Jordan curve onto the unit disk, ``alpha -> 0``.

    ``fit(boundary)`` solves the boundary integral equation; ``transform(z)``
    maps interior points.  The rotation is fixed by the discretization and
    irrelevant for hyperbolic distances.
    """

    def __init__(self, alpha=0.0, n=1024, grading=5):
        self.alpha = alpha
        self.n = n
        self.grading = grading

    def fit(self, boundary, y=None):
        if not isinstance(boundary, JordanBoundary):
            raise TypeError("fit expects a JordanBoundary")
        boundary = boundary.oriented(ccw=True)
        alpha = check_point(self.alpha, "alpha")
        if not boundary.contains(alpha)[0]:
            raise GeometryError(f"base point {alpha} is not inside the boundary")
        n = check_node_count(self.n, minimum=64)
        d = discretize(boundary, n, self.grading)
        h = d.h
        K = double_layer_matrix(d.z, d.dz, d.d2z, h)
        K[np.arange(n), np.arange(n)] += 0.5
        phi = -np.log(np.abs(d.z - alpha))
        sigma = smooth_corner_values(np.linalg.solve(K, phi), d.dz)
        # boundary values of g: sigma + (1/2 pi i) PV int (sigma(s) - sigma(t)) eta'/(eta - eta_t) ds.
        # The subtracted integrand is smooth; summing over nodes at odd index offsets
        # (trapezoid rule of step 2h) avoids its diagonal limit sigma'(t), whose spectral
        # evaluation rings around the poorly resolved nodes next to corners.
        idx = np.arange(n)
        odd = ((idx[None, :] - idx[:, None]) % 2) == 1
        diff = d.z[None, :] - d.z[:, None]
        diff[~odd] = 1.0
        C = np.where(odd, (2 * h / (2j * np.pi)) * d.dz[None, :] / diff, 0.0)
        del diff, odd
        conj = np.imag(C @ sigma - C.sum(axis=1) * sigma)
        # the real part is known exactly on the boundary
        g = phi + 1j * conj
        self.boundary_ = boundary
        self.coarse_ = None
        self.alpha_ = alpha
        self.nodes_ = d.z
        self.dz_ = d.dz
        self.h_ = h
        self.density_ = sigma
        self.boundary_log_ = g
        self.boundary_values_ = (d.z - alpha) * np.exp(g)
        self.boundary_residual_ = float(np.max(np.abs(np.abs(self.boundary_values_[d.dz != 0]) - 1.0)))
        return self

    @property
    def boundary_correspondence_(self):
        """Arguments of the boundary node images on the unit circle (unwrapped)."""
        check_is_fitted(self, "boundary_values_")
        return np.unwrap(np.angle(self.boundary_values_))

    def _log_factor(self, z):
        num, den = cauchy_sums(self.nodes_, self.dz_, self.h_, z, self.boundary_log_)
        out = num / den
        # points sitting on a node: take the node value
        hit = np.isclose(z[:, None], self.nodes_[None, :], rtol=0, atol=1e-14)
        rows = np.nonzero(hit.any(axis=1))[0]
        for r in rows:
            out[r] = self.boundary_log_[np.argmax(hit[r])]
        return out

    def transform(self, z, check=True):
        """Images of interior points under the map."""
        check_is_fitted(self, "boundary_log_")
        z = check_points(z)
        flat = z.ravel()
        if check and not np.all(self.boundary_.contains(flat)):
            raise DomainError("points outside the mapped domain")
        w = (flat - self.alpha_) * np.exp(self._log_factor(flat))
        return w.reshape(z.shape)

    def near_boundary(self, z, spacings=3.0):
        """True where a point is within a few local node spacings of the boundary.

        Values there come from the barycentric Cauchy formula, which keeps
        accuracy close to the curve, but they are the first to degrade.
        """
        check_is_fitted(self, "boundary_log_")
        z = check_points(z).ravel()
        local = np.abs(np.roll(self.nodes_, -1) - self.nodes_)
        out = np.empty(z.size, dtype=bool)
        for start in range(0, z.size, 512):
            d = np.abs(z[start:start + 512, None] - self.nodes_[None, :])
            j = np.argmin(d, axis=1)
            out[start:start + 512] = d[np.arange(j.size), j] < spacings * np.maximum(local[j], local[j - 1])
        return out

    def rho(self, x, y):
        """Hyperbolic distance of the domain between x and y (broadcasting)."""
        x = check_points(x, "x")
        y = check_points(y, "y")
        fx, fy = self.transform(x), self.transform(y)
        return rho_disk(_check_images(fx), _check_images(fy))

    def estimate_error(self, x, y):
        """A-posteriori error of ``rho(x, y)``: difference to a map fitted with n/2 nodes.

        Where the images crowd against the unit circle (far lobes, long
        channels) ``1 - |f|`` drops below the quadrature accuracy and this
        estimate becomes large (inf where either map crowds to the circle).
        """
        check_is_fitted(self, "boundary_log_")
        if getattr(self, "coarse_", None) is None:
            self.coarse_ = clone(self).set_params(n=max(64, self.n // 2)).fit(self.boundary_)
        x, y = np.broadcast_arrays(check_points(x, "x"), check_points(y, "y"))
        out = np.full(x.shape, np.inf)
        w = [mm.transform(v) for mm in (self, self.coarse_) for v in (x, y)]
        ok = np.logical_and.reduce([np.abs(v) < 1 for v in w])
        if np.any(ok):
            out[ok] = np.abs(rho_disk(w[0][ok], w[1][ok]) - rho_disk(w[2][ok], w[3][ok]))
        return out if out.size > 1 else float(out.reshape(-1)[0])

    def hyp_diameter(self, e, k=1024):
        """Hyperbolic diameter of the set bounded by `e`, maximized over ~k boundary samples."""
        return hyp_diameter(self, e, k)


def _check_images(w):
    if np.any(np.abs(w) >= 1.0):
        raise ConvergenceError(
            "image point reached the unit circle: the map crowds beyond the attainable "
            "accuracy here; increase n or move the base point closer"
        )
    return w


def riemann_map(b, alpha, n=1024, grading=5):
    return RiemannMap(alpha=alpha, n=n, grading=grading).fit(b)


def rho_G(m, x, y):
    """Hyperbolic distance in the domain of the fitted map `m`."""
    return m.rho(x, y)


def hyp_diameter(m, e, k=1024):
    """``max rho_G(x, y)`` over sampled boundary points of `e` (nested under doubling of k)."""
    if k < 16:
        raise DomainError("need at least 16 boundary samples")
    check_is_fitted(m, "boundary_log_")
    pts = e.sample(max(1, k // len(e.arcs)))
    if not np.all(m.boundary_.contains(pts)):
        raise GeometryError("set is not strictly inside the domain")
    return hyp_diameter_points(_check_images(m.transform(pts, check=False)))
