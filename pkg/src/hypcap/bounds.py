"""Closed-form capacity and Jung-radius bounds in terms of hyperbolic diameter."""

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from ._validation import DomainError, check_dimension, check_positive
from .special import _mu_pair


@dataclass(frozen=True)
class DimensionConstant:
    """Surface area ``omega`` of the unit sphere S^(n-1) in R^n."""

    n: int
    omega: float

    @classmethod
    def of(cls, n):
        n = check_dimension(n)
        return cls(n, 2 * math.pi ** (n / 2) / _gamma_half_integer(n))


def _gamma_half_integer(n):
    """Gamma(n/2) by recurrence from Gamma(1) = 1 and Gamma(1/2) = sqrt(pi)."""
    if n % 2:
        g, x = math.sqrt(math.pi), 0.5
    else:
        g, x = 1.0, 1.0
    while x < n / 2:
        g *= x
        x += 1.0
    return g


def omega(n):
    return DimensionConstant.of(n).omega


def _jung_factor(n):
    return math.sqrt(2 * n / (n + 1))


def jung_h(n, t):
    """Dekster's bound ``h(n, t) = arsh(sqrt(2n/(n+1)) sh(t/2))`` on the Jung radius."""
    n = check_dimension(n)
    t = check_positive(t, "t")
    return math.asinh(_jung_factor(n) * math.sinh(t / 2))


def th_half_jung(n, t):
    """``th(h(n,t)/2)`` via ``v / (1 + sqrt(1 + v^2))`` with ``v = sh h(n,t)``."""
    n = check_dimension(n)
    t = check_positive(t, "t")
    v = _jung_factor(n) * math.sinh(t / 2)
    return v / (1.0 + math.hypot(1.0, v))


def _log_inv_th_half_jung(n, t):
    # log(1/th(h/2)) = arsh(1/v), v = sh h(n,t); finite for every t > 0
    with np.errstate(over="ignore"):
        v = _jung_factor(n) * np.sinh(t / 2)
    return math.asinh(1.0 / v) if np.isfinite(v) else 0.0


class RatioBounds(NamedTuple):
    low: float
    high: float
    ratio: float


def jung_ratio_bounds(n, t):
    """The bracket ``sqrt(2(n+1)/n) <= t/h(n,t) <= 2`` together with the actual ratio."""
    n = check_dimension(n)
    t = check_positive(t, "t")
    low = math.sqrt(2 * (n + 1) / n)
    h = jung_h(n, t)
    ratio = t / h if h > 0 else low
    if not (low * (1 - 1e-12) <= ratio <= 2 * (1 + 1e-12)):
        raise ArithmeticError(f"ratio {ratio} escapes [{low}, 2]")
    return RatioBounds(low, 2.0, ratio)


def _capacity_from_log(omega_, log_term, n=2):
    if log_term <= 0.0:
        return math.inf
    return omega_ / log_term ** (n - 1)


def b1(t):
    """Capacity of a hyperbolic disk with hyperbolic diameter `t` in the unit disk.

    Equals ``2 pi / log(1/th(t/4))``; the log is evaluated as
    ``log1p(2/expm1(t/2))`` so it stays accurate for large `t`.  Returns
    ``inf`` once the log underflows.
    """
    t = check_positive(t, "t")
    with np.errstate(over="ignore"):
        log_term = math.log1p(2.0 / np.expm1(t / 2)) if t < 1400 else 0.0
    return _capacity_from_log(2 * math.pi, log_term)


def b2(t):
    """Jung-type upper bound ``2 pi / log((1 + sqrt(1 + v^2)) / v)``, ``v = (2/sqrt 3) sh(t/2)``."""
    t = check_positive(t, "t")
    return _capacity_from_log(2 * math.pi, _log_inv_th_half_jung(2, t))


def cap_upper_n(n, t):
    """Upper bound ``omega_(n-1) / log(1/th(h(n,t)/2))^(n-1)`` for cap(B^n, E)."""
    n = check_dimension(n)
    t = check_positive(t, "t")
    return _capacity_from_log(omega(n), _log_inv_th_half_jung(n, t), n)


def cap_seg(t):
    """Capacity of a hyperbolic geodesic segment of length `t` in the unit disk."""
    t = check_positive(t, "t")
    # gamma_2(1/th(t/2)) = 2 pi / mu(th(t/2)); the complement of th(t/2) is 1/ch(t/2)
    with np.errstate(over="ignore"):
        rc = 1.0 / np.cosh(t / 2)
    return 2 * math.pi / float(_mu_pair(math.tanh(t / 2), rc))


def jung_radius_from_capacity_bound(t):
    """Euclidean radius of the disk at the origin whose capacity equals ``b2(t)``."""
    return th_half_jung(2, t)


class QCBound(NamedTuple):
    value: float
    vacuous: bool


def qc_diameter_bound(K, t):
    """Bound ``4 (th(h(2,t)/2))^(1/K)`` on ``th(rho(f(E))/2)`` under a K-quasiconformal f.

    The result is flagged vacuous when it is at least 1, since the left-hand
    side never exceeds 1.
    """
    K = float(K)
    if not (K >= 1) or not math.isfinite(K):
        raise DomainError(f"K must be >= 1, got {K}")
    t = check_positive(t, "t")
    value = 4.0 * th_half_jung(2, t) ** (1.0 / K)
    return QCBound(value, value >= 1.0)


def jung_phi_uniform(phi, dE, dist):
    """Jung-radius bound ``arsh((2/sqrt 3) sh(phi(dE/dist)/2))`` in a phi-uniform domain."""
    dE = check_positive(dE, "dE")
    dist = check_positive(dist, "dist")
    s = float(phi(dE / dist))
    if not (s >= 0) or not math.isfinite(s):
        raise DomainError("phi must map into [0, inf)")
    return math.asinh(_jung_factor(2) * math.sinh(s / 2))


@dataclass(frozen=True)
class BoundsReport:
    """Closed-form envelopes of the extremal capacity at hyperbolic diameter `t`."""

    t: float
    cap_seg: float
    b1: float
    b2: float
    jung_radius_2d: float
    by_dimension: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "t": self.t,
            "cap_seg": self.cap_seg,
            "b1": self.b1,
            "b2": self.b2,
            "jung_radius_2d": self.jung_radius_2d,
            "by_dimension": {
                str(n): {"h": h, "cap_upper": c} for n, (h, c) in self.by_dimension.items()
            },
        }


def bounds_report(t, dims=(2, 3)):
    t = check_positive(t, "t")
    report = BoundsReport(
        t=t,
        cap_seg=cap_seg(t),
        b1=b1(t),
        b2=b2(t),
        jung_radius_2d=jung_h(2, t),
        by_dimension={n: (jung_h(n, t), cap_upper_n(n, t)) for n in dims},
    )
    if not report.cap_seg <= report.b1 <= report.b2:
        raise ArithmeticError(f"envelope ordering violated at t = {t}")
    return report
