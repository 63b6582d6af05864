"""Closed-form hyperbolic geometry of the Poincare unit disk."""

from dataclasses import dataclass

import numpy as np

from ._validation import DomainError, check_in_disk, check_point, check_positive


def _one_minus_abs2(z):
    a = np.abs(z)
    return (1.0 - a) * (1.0 + a)


def rho_disk(x, y):
    """Hyperbolic distance in the unit disk (broadcasts over arrays).

    Uses ``2 * arsh(|x - y| / sqrt((1 - |x|^2)(1 - |y|^2)))`` with the
    factors ``1 - |x|^2`` evaluated as ``(1 - |x|)(1 + |x|)``.
    """
    x = check_in_disk(x, "x")
    y = check_in_disk(y, "y")
    d = 2.0 * np.arcsinh(np.abs(x - y) / np.sqrt(_one_minus_abs2(x) * _one_minus_abs2(y)))
    return d if d.size > 1 else float(d.reshape(-1)[0])


def mobius(a, z):
    """Disk automorphism ``T_a(z) = (z - a) / (1 - conj(a) z)``."""
    a = complex(a)
    z = np.asarray(z, dtype=complex)
    return (z - a) / (1.0 - np.conj(a) * z)


@dataclass(frozen=True)
class HypBall:
    """Hyperbolic disk ``B_rho(center, radius)`` and its Euclidean description."""

    center: complex
    radius: float
    euclidean_center: complex
    euclidean_radius: float

    def boundary(self, m=256):
        theta = 2 * np.pi * np.arange(m) / m
        return self.euclidean_center + self.euclidean_radius * np.exp(1j * theta)

    def contains(self, z):
        return np.abs(np.asarray(z) - self.euclidean_center) <= self.euclidean_radius


def hyp_ball(q, R):
    """Euclidean center and radius of the hyperbolic disk of radius `R` about `q`."""
    q = complex(check_in_disk(check_point(q, "q"), "q")[0])
    R = check_positive(R, "R")
    t = np.tanh(R / 2)
    aq2 = abs(q) ** 2
    denom = 1.0 - aq2 * t * t
    j = q * (1.0 - t * t) / denom
    h = _one_minus_abs2(q) * t / denom
    return HypBall(center=q, radius=R, euclidean_center=complex(j), euclidean_radius=float(h))


def geodesic_segment(x, y, m):
    """`m` points along the hyperbolic geodesic from `x` to `y`, equally spaced in rho."""
    x = complex(check_in_disk(check_point(x, "x"), "x")[0])
    y = complex(check_in_disk(check_point(y, "y"), "y")[0])
    if m < 2:
        raise DomainError("need at least two sample points")
    if x == y:
        raise DomainError("geodesic endpoints coincide")
    w = complex(mobius(x, y))
    dist = 2 * np.arctanh(abs(w))
    radii = np.tanh(np.linspace(0.0, dist, m) / 2)
    pts = radii * (w / abs(w))
    out = (pts + x) / (1.0 + np.conj(x) * pts)
    out[0], out[-1] = x, y
    return out


def hyp_diameter_points(points, chunk=2048):
    """Largest pairwise hyperbolic distance of a finite point set (brute force)."""
    z = check_in_disk(points, "points").ravel()
    if z.size == 0:
        raise DomainError("empty point set")
    w = _one_minus_abs2(z)
    best = 0.0
    for start in range(0, z.size, chunk):
        zi = z[start:start + chunk, None]
        q = np.abs(zi - z[None, :]) ** 2 / (w[start:start + chunk, None] * w[None, :])
        best = max(best, float(q.max()))
    return float(2.0 * np.arcsinh(np.sqrt(best)))
