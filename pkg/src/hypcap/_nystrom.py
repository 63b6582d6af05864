"""Nystrom discretization of the planar double-layer operator."""

import numpy as np


def double_layer_matrix(z, dz, d2z, h):
    """Matrix of ``sigma -> (1/2pi) int sigma Im(eta'/(eta - eta_i)) ds`` on the nodes.

    The diagonal holds the smooth limit ``Im(eta''/eta') / (4 pi)``; nodes
    where the graded derivative vanishes (corners) get a zero column.
    """
    diff = z[None, :] - z[:, None]
    np.fill_diagonal(diff, 1.0)
    K = (h / (2 * np.pi)) * np.imag(dz[None, :] / diff)
    nz = dz != 0
    diag = np.zeros(z.size)
    diag[nz] = (h / (4 * np.pi)) * np.imag(d2z[nz] / dz[nz])
    np.fill_diagonal(K, diag)
    return K


def cauchy_sums(z, dz, h, points, values=None, chunk=512):
    """Trapezoidal sums ``(1/2 pi i) sum_j v_j h dz_j / (z_j - p)`` for each point p.

    With `values` omitted the sum approximates the winding number.  Returns
    ``(numerator, denominator)`` so callers can form the barycentric ratio.
    """
    w = h * dz / (2j * np.pi)
    p = np.asarray(points, dtype=complex).ravel()
    num = np.empty(p.size, dtype=complex)
    den = np.empty(p.size, dtype=complex)
    for start in range(0, p.size, chunk):
        c = w[None, :] / (z[None, :] - p[start:start + chunk, None])
        den[start:start + chunk] = c.sum(axis=1)
        num[start:start + chunk] = c @ values if values is not None else den[start:start + chunk]
    return num, den


def smooth_corner_values(sigma, dz):
    """Replace the density at zero-speed corner nodes by the mean of its neighbours.

    Those nodes carry no quadrature weight, so their solved value is not
    meaningful; left alone it spoils spectral derivatives and nearest-node
    corrections.  `sigma` holds one closed curve.
    """
    sigma = np.array(sigma, copy=True)
    idx = np.nonzero(dz == 0)[0]
    if idx.size:
        sigma[idx] = 0.5 * (np.roll(sigma, 1)[idx] + np.roll(sigma, -1)[idx])
    return sigma
