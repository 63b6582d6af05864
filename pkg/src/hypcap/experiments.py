"""Drivers for the tabulated experiments: Reuleaux comparison, polygon table, quotient curves."""

import math
from concurrent.futures import ProcessPoolExecutor
from functools import partial

import numpy as np

from . import bounds
from ._validation import ConvergenceError, DomainError, GeometryError, check_open_interval
from .capacity import Condenser, capacity
from .conformal import RiemannMap
from .shapes import (
    euc_reuleaux_with_hyp_diameter,
    hyp_reuleaux,
    dumbbell_polygon,
    reuleaux_radius_for_diameter,
    reuleaux_vertex_distance,
    square,
    unit_circle,
)

TABLE2_COLUMNS = ("r", "h_diam", "capSeg", "capERtri", "capDisk", "capHRtri", "capJung")
TABLE2_R = (0.05, 0.15, 0.25, 0.35, 0.45, 0.55, 0.65, 0.75, 0.85, 0.95)
TABLE1_H = (0.1, 0.2, 0.3, 0.4, 0.45)
TABLE1_COLUMNS = ("h", "rho_G", "cap")
QUOTIENT_COLUMNS = ("t", "b2_over_b1", "capHRtri_over_b1", "one", "capERtri_over_b1", "limit")

_FAILURES = (GeometryError, ConvergenceError, DomainError, np.linalg.LinAlgError)


def _pmap(fn, items, jobs=1):
    """Map over sweep items, optionally in worker processes; results keep input order."""
    items = list(items)
    if jobs is None or jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


def reuleaux_condenser(r, euclidean=False):
    """Unit disk with a hyperbolic (or equal-diameter Euclidean) Reuleaux triangle of vertex radius r."""
    T = hyp_reuleaux(r)
    inner = euc_reuleaux_with_hyp_diameter(T.M).boundary if euclidean else T.boundary
    return Condenser(unit_circle(), inner, aux_domain_point=0.4 + 0.6 * r, aux_inner_point=0.0)


def table2_row(r, n=768):
    r = check_open_interval(r, 0.0, 1.0, "r")
    t = reuleaux_vertex_distance(r)
    row = {"r": r, "h_diam": t, "capSeg": bounds.cap_seg(t), "capDisk": bounds.b1(t), "capJung": bounds.b2(t)}
    errors = {}
    for key, euclid in (("capERtri", True), ("capHRtri", False)):
        try:
            res = capacity(reuleaux_condenser(r, euclid), n=n)
            row[key] = res.value
            row[key + "_err"] = res.error_estimate
        except _FAILURES as exc:
            row[key] = math.nan
            row[key + "_err"] = math.nan
            errors[key] = str(exc)
    row["error"] = "; ".join(f"{k}: {v}" for k, v in errors.items()) or None
    return row


def table2(r_list, n=768, jobs=1):
    return _pmap(partial(table2_row, n=n), r_list, jobs)


def table1(h_list, n=1024, n_map=2048, k=1024, alpha_map=0.5 + 0.5j, alpha_cap=1.5 + 0.1j, z2=0.5 + 0.5j):
    """Hyperbolic diameter and capacity of the centred squares in the dumbbell polygon."""
    G = dumbbell_polygon()
    rows = []
    fmap = None
    for h in h_list:
        row = {"h": float(h), "rho_G": math.nan, "cap": math.nan, "cap_err": math.nan, "error": None}
        try:
            h = check_open_interval(h, 0.0, 0.5, "h")
            E = square(0.5 + 0.5j, h)
            if fmap is None:
                fmap = RiemannMap(alpha=alpha_map, n=n_map).fit(G)
            row["rho_G"] = fmap.hyp_diameter(E, k)
            res = capacity(Condenser(G, E, aux_domain_point=alpha_cap, aux_inner_point=z2), n=n)
            row["cap"], row["cap_err"] = res.value, res.error_estimate
        except _FAILURES as exc:
            row["error"] = str(exc)
        rows.append(row)
    return rows


def quotient_row(t, n=768):
    t = float(t)
    lower = bounds.b1(t)
    row = {"t": t, "b2_over_b1": bounds.b2(t) / lower, "capHRtri_over_b1": math.nan, "one": 1.0,
           "capERtri_over_b1": math.nan, "limit": 2 / math.sqrt(3), "error": None}
    r = reuleaux_radius_for_diameter(t)
    try:
        row["capHRtri_over_b1"] = capacity(reuleaux_condenser(r), n=n).value / lower
        row["capERtri_over_b1"] = capacity(reuleaux_condenser(r, True), n=n).value / lower
    except _FAILURES as exc:
        row["error"] = str(exc)
    return row


def quotients(t_min, t_max, steps, n=768, jobs=1):
    """Capacities divided by the disk capacity b1(t) on a grid of hyperbolic diameters."""
    steps = int(steps)
    if steps < 1:
        raise DomainError("steps must be >= 1")
    if not t_min > 0 or (steps > 1 and not t_max > t_min):
        raise DomainError("need 0 < t_min < t_max")
    grid = [float(t_min)] if steps == 1 else [float(t) for t in np.linspace(t_min, t_max, steps)]
    return _pmap(partial(quotient_row, n=n), grid, jobs)
