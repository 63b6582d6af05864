"""Piecewise-smooth Jordan boundaries and the test bodies built from them."""

import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq, minimize

from ._validation import ConvergenceError, DomainError, GeometryError, check_open_interval, check_points, check_positive
from .hyperbolic import hyp_ball, hyp_diameter_points, rho_disk

# ---------------------------------------------------------------------------
# arcs: smooth maps of [0, 1] into the plane


class Arc:
    """A smooth parametric arc on ``tau in [0, 1]``; subclasses give derivatives."""

    def point(self, tau):
        raise NotImplementedError

    def deriv(self, tau):
        raise NotImplementedError

    def deriv2(self, tau):
        raise NotImplementedError

    def reversed(self):
        return _ReversedArc(self)

    @property
    def start(self):
        return complex(self.point(np.array([0.0]))[0])

    @property
    def end(self):
        return complex(self.point(np.array([1.0]))[0])

    def length(self, m=512):
        # Gauss-Legendre on the speed; exact enough for the smooth arcs used here
        x, w = np.polynomial.legendre.leggauss(64)
        edges = np.linspace(0.0, 1.0, m // 64 + 2)
        total = 0.0
        for a, b in zip(edges[:-1], edges[1:]):
            tau = 0.5 * (b - a) * x + 0.5 * (a + b)
            total += 0.5 * (b - a) * np.sum(w * np.abs(self.deriv(tau)))
        return float(total)


class LineArc(Arc):
    def __init__(self, a, b):
        self.a, self.b = complex(a), complex(b)
        if self.a == self.b:
            raise GeometryError("degenerate line segment")

    def point(self, tau):
        tau = np.asarray(tau, dtype=float)
        return self.a + (self.b - self.a) * tau

    def deriv(self, tau):
        return np.full(np.shape(tau), self.b - self.a, dtype=complex)

    def deriv2(self, tau):
        return np.zeros(np.shape(tau), dtype=complex)

    def reversed(self):
        return LineArc(self.b, self.a)

    def length(self, m=None):
        return abs(self.b - self.a)

    def __repr__(self):
        return f"LineArc({self.a}, {self.b})"


class CircleArc(Arc):
    """``center + radius * exp(i theta)`` for theta running from theta0 to theta1."""

    def __init__(self, center, radius, theta0, theta1):
        self.center, self.radius = complex(center), float(radius)
        self.theta0, self.theta1 = float(theta0), float(theta1)
        if self.radius <= 0 or self.theta0 == self.theta1:
            raise GeometryError("degenerate circular arc")

    @property
    def span(self):
        return self.theta1 - self.theta0

    def point(self, tau):
        theta = self.theta0 + self.span * np.asarray(tau, dtype=float)
        return self.center + self.radius * np.exp(1j * theta)

    def deriv(self, tau):
        return 1j * self.span * (self.point(tau) - self.center)

    def deriv2(self, tau):
        return -(self.span ** 2) * (self.point(tau) - self.center)

    def reversed(self):
        return CircleArc(self.center, self.radius, self.theta1, self.theta0)

    def length(self, m=None):
        return abs(self.span) * self.radius

    def __repr__(self):
        return f"CircleArc({self.center}, {self.radius}, {self.theta0}, {self.theta1})"


class SplineArc(Arc):
    """Cubic spline through sampled points (chord-length parameter, rescaled to [0, 1])."""

    def __init__(self, points, periodic=False):
        pts = check_points(points, "points")
        if periodic and pts[0] != pts[-1]:
            pts = np.append(pts, pts[0])
        if pts.size < 2:
            raise GeometryError("spline arc needs at least two points")
        chord = np.concatenate([[0.0], np.cumsum(np.abs(np.diff(pts)))])
        if np.any(np.diff(chord) <= 0):
            raise GeometryError("repeated consecutive points")
        knots = chord / chord[-1]
        if pts.size == 2:
            bc = "not-a-knot"
            pts = np.array([pts[0], 0.5 * (pts[0] + pts[1]), pts[1]])
            knots = np.array([0.0, 0.5, 1.0])
        else:
            bc = "periodic" if periodic else "not-a-knot"
        self._spline = CubicSpline(knots, np.column_stack([pts.real, pts.imag]), bc_type=bc)
        self.periodic = periodic

    def _eval(self, tau, nu):
        v = self._spline(np.asarray(tau, dtype=float), nu)
        return v[..., 0] + 1j * v[..., 1]

    def point(self, tau):
        return self._eval(tau, 0)

    def deriv(self, tau):
        return self._eval(tau, 1)

    def deriv2(self, tau):
        return self._eval(tau, 2)


class _ReversedArc(Arc):
    def __init__(self, arc):
        self.arc = arc

    def point(self, tau):
        return self.arc.point(1.0 - np.asarray(tau, dtype=float))

    def deriv(self, tau):
        return -self.arc.deriv(1.0 - np.asarray(tau, dtype=float))

    def deriv2(self, tau):
        return self.arc.deriv2(1.0 - np.asarray(tau, dtype=float))

    def reversed(self):
        return self.arc

    def length(self, m=512):
        return self.arc.length(m)


# ---------------------------------------------------------------------------
# closed boundaries


def _segments_cross(p, q):
    """Indices of properly intersecting, non-adjacent segments of the closed polyline p."""
    a, b = p, np.roll(p, -1)
    n = a.size
    d = b - a

    def cross(u, v):
        return u.real * v.imag - u.imag * v.real

    # orientations of c, d endpoints relative to each segment
    o1 = cross(d[:, None], a[None, :] - a[:, None])
    o2 = cross(d[:, None], b[None, :] - a[:, None])
    o3 = cross(d[None, :], a[:, None] - a[None, :])
    o4 = cross(d[None, :], b[:, None] - a[None, :])
    hit = (o1 * o2 < 0) & (o3 * o4 < 0)
    i, j = np.nonzero(np.triu(hit, 2))
    keep = ~((i == 0) & (j == n - 1))
    return list(zip(i[keep], j[keep]))


class JordanBoundary:
    """Closed, simple, piecewise-smooth curve made of consecutive arcs.

    A corner is recorded at every arc junction where the tangent direction
    jumps.  The curve may have either orientation; `ccw` reports which.
    """

    def __init__(self, arcs, check_simple=True, tol=1e-9):
        self.arcs = tuple(arcs)
        if not self.arcs:
            raise GeometryError("boundary needs at least one arc")
        scale = max(abs(a.start) for a in self.arcs) + max(a.length() for a in self.arcs)
        for k, arc in enumerate(self.arcs):
            nxt = self.arcs[(k + 1) % len(self.arcs)]
            if abs(arc.end - nxt.start) > tol * scale:
                raise GeometryError(f"arc {k} does not end where arc {(k + 1) % len(self.arcs)} starts")
        self.turning_angles = self._turning_angles()
        if np.any(np.abs(np.abs(self.turning_angles) - np.pi) < 1e-6):
            raise GeometryError("boundary has a cusp")
        self.corners = tuple(int(k) for k in np.nonzero(np.abs(self.turning_angles) > 1e-8)[0])
        tau = np.linspace(0.0, 1.0, 65)[:-1]
        self._coarse = np.concatenate([a.point(tau) for a in self.arcs])
        area = self.signed_area()
        if abs(area) < 1e-14 * scale ** 2:
            raise GeometryError("boundary encloses no area")
        self.ccw = area > 0
        if check_simple and _segments_cross(self._coarse, None):
            raise GeometryError("boundary is self-intersecting")
        if check_simple:
            self._check_arc_speed()

    def _check_arc_speed(self):
        tau = np.linspace(0.0, 1.0, 33)[1:-1]
        for k, arc in enumerate(self.arcs):
            if np.any(np.abs(arc.deriv(tau)) == 0):
                raise GeometryError(f"arc {k} has a vanishing derivative")

    def _turning_angles(self):
        out = []
        for k, arc in enumerate(self.arcs):
            nxt = self.arcs[(k + 1) % len(self.arcs)]
            t_in = complex(arc.deriv(np.array([1.0]))[0])
            t_out = complex(nxt.deriv(np.array([0.0]))[0])
            out.append(np.angle(t_out / t_in))
        # the corner at the start of arc k is the junction (k-1 -> k)
        return np.roll(np.array(out), 1)

    @property
    def has_corners(self):
        return bool(self.corners)

    def interior_angles(self):
        """Interior angle at each corner (keyed by the index of the arc that starts there)."""
        sign = 1.0 if self.ccw else -1.0
        return {k: float(np.pi - sign * self.turning_angles[k]) for k in self.corners}

    def sample(self, k_per_arc):
        """Points ``arc.point(j / k)``, j = 0..k-1, arc by arc (nested under doubling)."""
        tau = np.arange(k_per_arc) / k_per_arc
        return np.concatenate([a.point(tau) for a in self.arcs])

    def sample_total(self, k):
        """About `k` points split over arcs in proportion to their lengths."""
        counts = allocate(k, [a.length() for a in self.arcs], minimum=1)
        return np.concatenate([a.point(np.arange(c) / c) for a, c in zip(self.arcs, counts)])

    def signed_area(self):
        x, w = np.polynomial.legendre.leggauss(48)
        tau = 0.5 * (x + 1.0)
        total = 0.0
        for arc in self.arcs:
            for a, b in ((0.0, 0.5), (0.5, 1.0)):
                tt = a + (b - a) * tau
                z, dz = arc.point(tt), arc.deriv(tt)
                total += (b - a) * np.sum(w * 0.5 * (z.real * dz.imag - z.imag * dz.real)) * 0.5
        return float(total)

    def length(self):
        return float(sum(a.length() for a in self.arcs))

    def reversed(self):
        return JordanBoundary([a.reversed() for a in reversed(self.arcs)], check_simple=False)

    def oriented(self, ccw=True):
        return self if self.ccw == ccw else self.reversed()

    def winding_number(self, z, k_per_arc=512):
        """Winding number of the curve about each point (vectorized)."""
        z = check_points(z)
        p = self.sample(k_per_arc)
        out = np.zeros(z.shape, dtype=float)
        flat = z.ravel()
        res = np.empty(flat.size)
        for start in range(0, flat.size, 256):
            rel = p[None, :] - flat[start:start + 256, None]
            ang = np.angle(np.roll(rel, -1, axis=1) * np.conj(rel))
            on_curve = np.any(rel == 0, axis=1)
            res[start:start + 256] = np.where(on_curve, 0.0, ang.sum(axis=1) / (2 * np.pi))
        out[...] = res.reshape(z.shape)
        return np.rint(out).astype(int)

    def contains(self, z):
        """True for points enclosed by the curve (either orientation)."""
        return self.winding_number(z) != 0

    def distance_to(self, z, k_per_arc=2048):
        z = check_points(z)
        p = self.sample(k_per_arc)
        return np.min(np.abs(z.ravel()[:, None] - p[None, :]), axis=1).reshape(z.shape)

    def centroid(self):
        p = self.sample(256)
        return complex(np.mean(p))

    def __len__(self):
        return len(self.arcs)

    def __repr__(self):
        return f"JordanBoundary({len(self.arcs)} arcs, corners={list(self.corners)}, ccw={self.ccw})"


def allocate(total, weights, minimum=1):
    """Split an integer total into parts roughly proportional to weights."""
    w = np.asarray(weights, dtype=float)
    if total < minimum * w.size:
        raise DomainError(f"cannot split {total} into {w.size} parts of at least {minimum}")
    raw = np.maximum(w / w.sum() * total, minimum)
    counts = np.maximum(np.floor(raw).astype(int), minimum)
    while counts.sum() > total:
        idx = np.argmax(np.where(counts > minimum, counts - raw, -np.inf))
        counts[idx] -= 1
    while counts.sum() < total:
        counts[np.argmax(raw - counts)] += 1
    return counts


# ---------------------------------------------------------------------------
# test bodies


def circle(center=0.0, radius=1.0, ccw=True):
    arc = CircleArc(center, radius, 0.0, 2 * np.pi if ccw else -2 * np.pi)
    return JordanBoundary([arc])


def unit_circle():
    return circle(0.0, 1.0)


def polygon(vertices):
    """Piecewise-linear boundary through `vertices`; clockwise input is reversed."""
    v = check_points(vertices, "vertices")
    if v.size >= 2 and v[0] == v[-1]:
        v = v[:-1]
    if v.size < 3:
        raise GeometryError("polygon needs at least three vertices")
    arcs = [LineArc(a, b) for a, b in zip(v, np.roll(v, -1))]
    bnd = JordanBoundary(arcs)
    return bnd.oriented(ccw=True)


DUMBBELL_VERTICES = (0, 3, 3 + 1j, 2 + 1j, 2 + 0.2j, 1 + 0.2j, 1 + 1j, 1j)


def dumbbell_polygon():
    """Two unit-square lobes joined by a channel of width 0.2 (eight vertices)."""
    return polygon(DUMBBELL_VERTICES)


def square(center, half):
    c = complex(center)
    h = check_positive(half, "half")
    return polygon([c + h * (-1 - 1j), c + h * (1 - 1j), c + h * (1 + 1j), c + h * (-1 + 1j)])


def hyp_disk_shape(t):
    """Circle ``|z| = th(t/4)``, clockwise; the hyperbolic disk of diameter `t` about 0."""
    t = check_positive(t, "t")
    return circle(0.0, math.tanh(t / 4), ccw=False)


def _three_arcs(centers, radius, vertices):
    """Arcs of the three circles, arc k joining the two vertices other than vertex k."""
    arcs = []
    for k in range(3):
        a, b = vertices[(k + 1) % 3], vertices[(k + 2) % 3]
        c = centers[k]
        th0 = np.angle(a - c)
        th1 = np.angle(b - c)
        # counterclockwise about c, the short way (arc faces away from vertex k)
        while th1 <= th0:
            th1 += 2 * np.pi
        arcs.append(CircleArc(c, radius, th0, th1))
    return arcs


@dataclass(frozen=True)
class HypReuleauxTriangle:
    """Intersection of three hyperbolic disks centred at r e^{2 pi i k/3} through the other vertices."""

    r: float
    vertices: tuple
    M: float
    y: float
    h: float
    centers: tuple
    boundary: JordanBoundary

    def contains(self, z, tol=0.0):
        z = np.asarray(z, dtype=complex)
        inside = np.ones(z.shape, dtype=bool)
        for c in self.centers:
            inside &= np.abs(z - c) <= self.h + tol
        return inside


def reuleaux_vertex_distance(r):
    """Hyperbolic distance ``2 arsh(r sqrt3 / (1 - r^2))`` between vertices on ``|z| = r``."""
    r = check_open_interval(r, 0.0, 1.0, "r")
    return 2 * math.asinh(r * math.sqrt(3) / ((1 - r) * (1 + r)))


def reuleaux_radius_for_diameter(t):
    """Inverse of `reuleaux_vertex_distance`: vertex radius r giving diameter `t`."""
    t = check_positive(t, "t")
    s = math.sinh(t / 2)
    # s r^2 + sqrt3 r - s = 0, positive root, written to avoid cancellation
    return 2 * s / (math.sqrt(3) + math.sqrt(3 + 4 * s * s))


def hyp_reuleaux(r):
    """Hyperbolic Reuleaux triangle with vertices ``r e^{2 pi i k/3}``.

    The boundary is oriented clockwise, ready to serve as the inner
    component of a ring domain.
    """
    r = check_open_interval(r, 0.0, 1.0, "r")
    M = reuleaux_vertex_distance(r)
    verts = tuple(r * np.exp(2j * np.pi * k / 3) for k in range(3))
    ball = hyp_ball(r, M)
    y, h = ball.euclidean_center.real, ball.euclidean_radius
    centers = tuple(y * np.exp(2j * np.pi * k / 3) for k in range(3))
    bnd = JordanBoundary(_three_arcs(centers, h, verts)).reversed()
    return HypReuleauxTriangle(r, verts, M, y, h, centers, bnd)


@dataclass(frozen=True)
class EucReuleauxTriangle:
    """Euclidean Reuleaux triangle of width `w` centred at `center`."""

    w: float
    center: complex
    vertices: tuple
    boundary: JordanBoundary

    @property
    def circumradius(self):
        return self.w / math.sqrt(3)

    def contains(self, z, tol=0.0):
        z = np.asarray(z, dtype=complex)
        inside = np.ones(z.shape, dtype=bool)
        for v in self.vertices:
            inside &= np.abs(z - v) <= self.w + tol
        return inside


def euc_reuleaux(rE, center=0.0):
    """Euclidean Reuleaux triangle with vertices ``center + rE e^{2 pi i k/3}``, clockwise."""
    rE = check_positive(rE, "rE")
    c = complex(center)
    verts = tuple(c + rE * np.exp(2j * np.pi * k / 3) for k in range(3))
    w = rE * math.sqrt(3)
    bnd = JordanBoundary(_three_arcs(verts, w, verts)).reversed()
    return EucReuleauxTriangle(w, c, verts, bnd)


def _euc_reuleaux_point(rE, s):
    """Boundary point of the origin-centred Euclidean triangle at global parameter s in [0, 3)."""
    s = np.mod(s, 3.0)
    k = np.minimum(np.floor(s).astype(int), 2)
    tau = s - k
    w = rE * math.sqrt(3)
    v = rE * np.exp(2j * np.pi * np.arange(3) / 3)
    a = v[(k + 1) % 3] - v[k]
    th0 = np.angle(a)
    # the arc about vertex k spans 60 degrees
    return v[k] + w * np.exp(1j * (th0 + tau * np.pi / 3))


def euc_reuleaux_hyp_diameter(rE, samples=600):
    """Hyperbolic diameter of the origin-centred Euclidean Reuleaux triangle.

    A brute-force scan over boundary samples locates the maximizing pair,
    which is then polished by a local maximization over the two boundary
    parameters.
    """
    rE = check_open_interval(rE, 0.0, 1.0, "rE")
    m = samples // 3
    s = np.arange(3 * m) / m
    z = _euc_reuleaux_point(rE, s)
    coarse = hyp_diameter_points(z)
    d = rho_disk(z[:, None], z[None, :])
    i, j = np.unravel_index(np.argmax(d), d.shape)

    def neg(p):
        return -rho_disk(_euc_reuleaux_point(rE, p[0]), _euc_reuleaux_point(rE, p[1]))

    res = minimize(neg, x0=[s[i], s[j]], method="Nelder-Mead",
                   options={"xatol": 1e-13, "fatol": 1e-15, "maxiter": 4000})
    return max(coarse, -float(res.fun))


def euc_reuleaux_with_hyp_diameter(t, xtol=1e-14):
    """Origin-centred Euclidean Reuleaux triangle (a vertex on the positive axis) with hyperbolic diameter `t`."""
    t = check_positive(t, "t")

    def gap(rE):
        return euc_reuleaux_hyp_diameter(rE) - t

    hi = 1.0 - 1e-15
    lo = 1e-300
    # bracket from the hyperbolic triangle, which is larger at equal diameter
    r0 = reuleaux_radius_for_diameter(t)
    lo = r0 * 0.5
    while gap(lo) > 0:
        lo *= 0.5
    hi = min(r0 * 1.5 + 0.05, 1 - 1e-12)
    while gap(hi) < 0:
        hi = 0.5 * (1 + hi)
        if hi >= 1 - 1e-15:
            raise ConvergenceError("could not bracket the Euclidean Reuleaux radius")
    rE = brentq(gap, lo, hi, xtol=xtol, rtol=4 * np.finfo(float).eps)
    return euc_reuleaux(rE)


# ---------------------------------------------------------------------------
# CSV exchange: rows ``arc_index, t_param, x, y`` with t_param in [0, 1)

CSV_HEADER = ("arc_index", "t_param", "x", "y")


def boundary_rows(boundary, points):
    """Sample `points` boundary rows, split over arcs by length (at least 2 per arc)."""
    counts = allocate(int(points), [a.length() for a in boundary.arcs], minimum=2)
    rows = []
    for k, (arc, m) in enumerate(zip(boundary.arcs, counts)):
        tau = np.arange(m) / m
        z = arc.point(tau)
        rows.extend((k, float(t), float(p.real), float(p.imag)) for t, p in zip(tau, z))
    return rows


def _collinear(pts, tol=1e-12):
    if pts.size < 3:
        return True
    d = pts[-1] - pts[0]
    off = np.imag((pts - pts[0]) * np.conj(d)) / abs(d)
    return bool(np.max(np.abs(off)) <= tol * max(1.0, abs(d)))


def boundary_from_rows(rows):
    """Rebuild a boundary from sampled rows: lines for collinear arcs, cubic splines otherwise."""
    rows = sorted(((int(a), float(t), float(x), float(y)) for a, t, x, y in rows), key=lambda r: (r[0], r[1]))
    if not rows:
        raise GeometryError("no boundary rows")
    groups = {}
    for a, t, x, y in rows:
        groups.setdefault(a, []).append(complex(x, y))
    pts = [np.array(groups[k]) for k in sorted(groups)]
    if len(pts) == 1:
        return JordanBoundary([SplineArc(pts[0], periodic=True)])
    arcs = []
    for k, p in enumerate(pts):
        closed = np.append(p, pts[(k + 1) % len(pts)][0])
        arcs.append(LineArc(closed[0], closed[-1]) if _collinear(closed) else SplineArc(closed))
    return JordanBoundary(arcs)


def write_boundary_csv(path_or_file, boundary, points):
    import csv

    def _write(fh):
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for a, t, x, y in boundary_rows(boundary, points):
            w.writerow([a, repr(t), repr(x), repr(y)])

    if hasattr(path_or_file, "write"):
        _write(path_or_file)
    else:
        with open(path_or_file, "w", newline="") as fh:
            _write(fh)


def read_boundary_csv(path):
    import csv

    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        rows = []
        for rec in reader:
            if not rec or rec[0].startswith("#") or rec[0].strip() == CSV_HEADER[0]:
                continue
            rows.append(rec[:4])
    return boundary_from_rows(rows)
