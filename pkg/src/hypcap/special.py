"""Complete elliptic integrals and the planar Grotzsch/Teichmuller capacities.

The modulus convention throughout is ``K(r) = int_0^1 dx / sqrt((1-x^2)(1-r^2 x^2))``
(not the parameter ``m = r^2`` used by scipy and mpmath).
"""

import warnings

import numpy as np

from ._validation import DomainError


class RangeWarning(UserWarning):
    """Input is in a regime where double precision results are degraded."""


def _scalar_or_array(x):
    return float(x) if np.ndim(x) == 0 else x


def agm(a, b, max_iter=64):
    """Arithmetic-geometric mean of positive arrays."""
    a = np.asarray(a, dtype=float).copy()
    b = np.asarray(b, dtype=float).copy()
    for _ in range(max_iter):
        a, b = 0.5 * (a + b), np.sqrt(a * b)
        if np.all(np.abs(a - b) <= 4 * np.finfo(float).eps * a):
            break
    return 0.5 * (a + b)


def _complement(r):
    # sqrt(1 - r^2) without cancellation near r = 1
    return np.sqrt((1.0 - r) * (1.0 + r))


def ellip_K(r):
    """Complete elliptic integral of the first kind for modulus ``0 <= r < 1``."""
    r = np.asarray(r, dtype=float)
    if np.any(~np.isfinite(r)) or np.any(r < 0) or np.any(r >= 1):
        raise DomainError("ellip_K needs 0 <= r < 1")
    return _scalar_or_array(np.pi / (2.0 * agm(1.0, _complement(r))))


def mu(r):
    """Modulus of the planar Grotzsch ring, ``(pi/2) K(r') / K(r)``, ``r' = sqrt(1-r^2)``."""
    r = np.asarray(r, dtype=float)
    if np.any(~np.isfinite(r)) or np.any(r <= 0) or np.any(r >= 1):
        raise DomainError("mu needs 0 < r < 1")
    if np.any(r < 1e-8):
        warnings.warn("mu evaluated below r = 1e-8", RangeWarning, stacklevel=2)
    # K(r')/K(r) = AGM(1, r')/AGM(1, r); this form is already symmetric under
    # r <-> r', so mu(r) mu(r') = pi^2/4 holds without a separate branch near 1
    return _scalar_or_array(_mu_pair(r, _complement(r)))


def _mu_pair(r, rc):
    """mu from a modulus and its complement, for callers that know ``rc`` more accurately."""
    return 0.5 * np.pi * agm(1.0, rc) / agm(1.0, r)


def gamma2(s):
    """Planar Grotzsch capacity ``gamma_2(s) = 2 pi / mu(1/s)`` for ``s > 1``."""
    s = np.asarray(s, dtype=float)
    if np.any(~(s > 1)):
        raise DomainError("gamma2 needs s > 1")
    return _scalar_or_array(2 * np.pi / np.asarray(mu(1.0 / s)))


def tau2(s):
    """Planar Teichmuller capacity, ``tau_2(s) = gamma_2(sqrt(s + 1)) / 2``."""
    s = np.asarray(s, dtype=float)
    if np.any(~(s > 0)):
        raise DomainError("tau2 needs s > 0")
    return _scalar_or_array(0.5 * np.asarray(gamma2(np.sqrt(s + 1.0))))
