"""Input validation helpers shared by the public API."""

import numbers

import numpy as np


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class GeometryError(ValueError):
    """Boundary data do not describe a valid domain or condenser."""


class ConvergenceError(RuntimeError):
    """A numerical procedure failed to reach its accuracy target."""


def check_points(z, name="z"):
    """Return `z` as a finite complex ndarray (at least 1-d)."""
    arr = np.atleast_1d(np.asarray(z, dtype=complex))
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} contains non-finite values")
    return arr


def check_point(z, name="z"):
    if isinstance(z, (tuple, list)) and len(z) == 2:
        z = complex(z[0], z[1])
    try:
        w = complex(z)
    except TypeError as exc:
        raise DomainError(f"{name} is not a point: {z!r}") from exc
    if not (np.isfinite(w.real) and np.isfinite(w.imag)):
        raise DomainError(f"{name} is not finite")
    return w


def check_in_disk(z, name="z"):
    """Points of the open unit disk, as a complex ndarray."""
    arr = check_points(z, name)
    if np.any(np.abs(arr) >= 1.0):
        raise DomainError(f"{name} must lie in the open unit disk")
    return arr


def check_positive(x, name, allow_zero=False):
    if not isinstance(x, numbers.Real) and not np.isscalar(x):
        raise DomainError(f"{name} must be a real number")
    x = float(x)
    if not np.isfinite(x) or x < 0 or (x == 0 and not allow_zero):
        raise DomainError(f"{name} must be {'non-negative' if allow_zero else 'positive'}, got {x}")
    return x


def check_open_interval(x, lo, hi, name):
    x = float(x)
    if not (lo < x < hi):
        raise DomainError(f"{name} must lie in ({lo}, {hi}), got {x}")
    return x


def check_dimension(n):
    if isinstance(n, bool) or not isinstance(n, numbers.Integral) or n < 2:
        raise DomainError(f"dimension must be an integer >= 2, got {n!r}")
    return int(n)


def check_node_count(n, minimum=64):
    if isinstance(n, bool) or not isinstance(n, numbers.Integral):
        raise DomainError(f"node count must be an integer, got {n!r}")
    if n < minimum or n % 2:
        raise DomainError(f"node count must be even and >= {minimum}, got {n}")
    return int(n)
