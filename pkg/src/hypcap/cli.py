"""Command-line front end: table reproductions and direct access to the library.

Every command writes rows as CSV (``#`` metadata lines, then a header) or as
JSON ``{"meta": ..., "rows": [...]}``.  Floats are written with 17 significant
digits, and no timestamps are included, so identical arguments give
byte-identical output.

Exit status: 0 on success, 2 when some rows carry an error, 1 on a hard
failure (bad arguments or an unusable geometry).
"""

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__, bounds, experiments, shapes
from ._validation import ConvergenceError, DomainError, GeometryError
from .capacity import Condenser, capacity
from .conformal import RiemannMap
from .hyperbolic import hyp_diameter_points

EXIT_OK, EXIT_FAIL, EXIT_PARTIAL = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_FAIL, f"{self.prog}: error: {message}\n")


def _floats(text):
    text = text.strip()
    if not text:
        return []
    return [float(v) for v in text.replace(",", " ").split()]


def _complex(text):
    return complex(text.replace(" ", ""))


def _cell(v):
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (float, np.floating)):
        return "nan" if math.isnan(v) else "%.17g" % v
    if isinstance(v, complex):
        return "%.17g%+.17gj" % (v.real, v.imag)
    if v is None:
        return ""
    return str(v)


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (np.bool_, bool)):
        return bool(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else None
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, complex):
        return [v.real, v.imag]
    return v


def render(rows, columns, meta, fmt):
    """Serialize rows (dicts) to CSV or JSON text."""
    if fmt == "json":
        doc = {"meta": _jsonable(meta), "rows": [_jsonable({c: r.get(c) for c in columns}) for r in rows]}
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    for k, v in meta.items():
        buf.write(f"# {k}={_cell(v) if not isinstance(v, (list, tuple)) else ' '.join(map(_cell, v))}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_cell(r.get(c)) for c in columns])
    return buf.getvalue()


def _emit(args, rows, columns, meta):
    meta = {"command": args.command, "version": __version__, **meta}
    text = render(rows, columns, meta, args.format)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    return EXIT_PARTIAL if any(r.get("error") for r in rows) else EXIT_OK


# ---------------------------------------------------------------------------
# geometry helpers


def _inner_shape(kind, args):
    """Built-in set geometry for ``cap`` / ``hypdiam`` / ``shape``."""
    if kind == "hyp-reuleaux":
        return shapes.hyp_reuleaux(args.r).boundary
    if kind == "euc-reuleaux":
        if args.t is not None:
            return shapes.euc_reuleaux_with_hyp_diameter(args.t).boundary
        return shapes.euc_reuleaux(args.r).boundary
    if kind == "hyp-disk":
        return shapes.hyp_disk_shape(args.t)
    if kind == "disk":
        return shapes.circle(args.center, args.r)
    if kind == "square":
        return shapes.square(args.center, args.h)
    if kind == "dumbbell":
        return shapes.dumbbell_polygon()
    if kind == "unit-disk":
        return shapes.unit_circle()
    raise DomainError(f"unknown shape type {kind!r}")


SHAPE_TYPES = ("hyp-reuleaux", "euc-reuleaux", "hyp-disk", "disk", "square", "dumbbell", "unit-disk")


def _shape_params(kind, args):
    keys = {
        "hyp-reuleaux": ("r",),
        "euc-reuleaux": ("r", "t"),
        "hyp-disk": ("t",),
        "disk": ("center", "r"),
        "square": ("center", "h"),
    }.get(kind, ())
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


def _load(path, kind, args):
    return shapes.read_boundary_csv(path) if path else _inner_shape(kind, args)


# ---------------------------------------------------------------------------
# commands


def cmd_table2(args):
    r_list = experiments.TABLE2_R if args.r is None else _floats(args.r)
    for r in r_list:
        if not 0 < r < 1:
            raise DomainError(f"r must lie in (0, 1), got {r}")
    rows = experiments.table2(r_list, n=args.n, jobs=args.jobs)
    cols = list(experiments.TABLE2_COLUMNS) + ["capERtri_err", "capHRtri_err", "error"]
    return _emit(args, rows, cols, {"n": args.n, "grading": 3, "alpha": "0.4+0.6r", "z2": 0.0})


def cmd_table1(args):
    h_list = experiments.TABLE1_H if args.h is None else _floats(args.h)
    for h in h_list:
        if not 0 < h < 0.5:
            raise DomainError(f"h must lie in (0, 0.5), got {h}")
    rows = experiments.table1(h_list, n=args.n, n_map=args.n_map, k=args.k)
    cols = list(experiments.TABLE1_COLUMNS) + ["cap_err", "error"]
    return _emit(args, rows, cols, {"n": args.n, "n_map": args.n_map, "k": args.k,
                                    "alpha_map": 0.5 + 0.5j, "alpha_cap": 1.5 + 0.1j, "z2": 0.5 + 0.5j})


def cmd_quotients(args):
    rows = experiments.quotients(args.t_min, args.t_max, args.steps, n=args.n, jobs=args.jobs)
    cols = list(experiments.QUOTIENT_COLUMNS) + ["error"]
    return _emit(args, rows, cols, {"n": args.n, "t_min": args.t_min, "t_max": args.t_max, "steps": args.steps})


def cmd_bounds(args):
    rows = []
    for t in _floats(args.t):
        d = bounds.bounds_report(t, dims=tuple(range(2, args.max_dim + 1))).as_dict()
        row = {"t": d["t"], "capSeg": d["cap_seg"], "b1": d["b1"], "b2": d["b2"], "jung_radius": d["jung_radius_2d"]}
        for k, v in d["by_dimension"].items():
            row[f"h{k}"] = v["h"]
            row[f"cap_upper{k}"] = v["cap_upper"]
        rows.append(row)
    cols = ["t", "capSeg", "b1", "b2", "jung_radius"]
    for k in range(2, args.max_dim + 1):
        cols += [f"h{k}", f"cap_upper{k}"]
    return _emit(args, rows, cols, {"max_dim": args.max_dim})


def cmd_qc_bound(args):
    res = bounds.qc_diameter_bound(args.K, args.t)
    return _emit(args, [{"K": float(args.K), "t": float(args.t), "bound": res.value, "vacuous": res.vacuous}],
                 ["K", "t", "bound", "vacuous"], {})


def cmd_cap(args):
    outer = shapes.read_boundary_csv(args.outer) if args.outer else shapes.unit_circle()
    inner = _load(args.inner, args.type, args)
    c = Condenser(outer, inner, aux_domain_point=args.alpha, aux_inner_point=args.z2)
    t = None
    if not args.outer:
        t = hyp_diameter_points(inner.oriented(True).sample(max(1, args.k // len(inner.arcs))))
    row = {"shape": args.inner or args.type, "params": _shape_params(args.type, args) if not args.inner else {}, "t": t}
    try:
        res = capacity(c, n=args.n, tol=args.tol)
        row.update({"cap": res.value, "err_est": res.error_estimate, "n_nodes": res.n_nodes, "error": None})
    except (GeometryError, ConvergenceError) as exc:
        row.update({"cap": math.nan, "err_est": math.nan, "n_nodes": args.n, "error": str(exc)})
    cols = ["shape", "params", "t", "cap", "err_est", "n_nodes", "error"]
    if args.format == "csv":
        row["params"] = " ".join(f"{k}={_cell(v)}" for k, v in row["params"].items())
    return _emit(args, [row], cols, {"n": args.n, "tol": args.tol, "grading": 3})


def _domain_map(args):
    domain = shapes.read_boundary_csv(args.domain) if args.domain else shapes.dumbbell_polygon()
    return RiemannMap(alpha=args.alpha, n=args.n).fit(domain)


def cmd_hypdiam(args):
    m = _domain_map(args)
    e = _load(args.set, args.type, args)
    row = {"rho_G": math.nan, "error": None}
    try:
        row["rho_G"] = m.hyp_diameter(e, args.k)
    except ConvergenceError as exc:
        row["error"] = str(exc)
    return _emit(args, [row], ["rho_G", "error"],
                 {"n": args.n, "k": args.k, "alpha": args.alpha, "boundary_residual": m.boundary_residual_})


def cmd_hypfield(args):
    m = _domain_map(args)
    domain = m.boundary_
    pts = domain.sample_total(4096)
    x0, x1 = (args.xlim or (pts.real.min(), pts.real.max()))
    y0, y1 = (args.ylim or (pts.imag.min(), pts.imag.max()))
    X, Y = np.meshgrid(np.linspace(x0, x1, args.nx), np.linspace(y0, y1, args.ny))
    z = (X + 1j * Y).ravel()
    rho = np.full(z.size, np.nan)
    inside = domain.contains(z) & (domain.distance_to(z) > 0)
    fz = m.transform(z[inside], check=False)
    ok = np.abs(fz) < 1
    vals = np.full(fz.size, np.nan)
    errs = np.full(fz.size, np.nan)
    if np.any(ok):
        vals[ok] = m.rho(m.alpha_, z[inside][ok])
        errs[ok] = m.estimate_error(m.alpha_, z[inside][ok])
    rho[inside] = vals
    err = np.full(z.size, np.nan)
    err[inside] = errs
    tol = 1e-3 if args.tol is None else args.tol
    good = err <= tol * np.maximum(rho, 1.0)
    rows = [{"x": float(p.real), "y": float(p.imag), "rho": float(v), "err_est": float(e)}
            for p, v, e in zip(z, rho, err)]
    return _emit(args, rows, ["x", "y", "rho", "err_est"],
                 {"n": args.n, "alpha": args.alpha, "nx": args.nx, "ny": args.ny,
                  "crowded_points": int(np.count_nonzero(~ok)),
                  "resolved_points": int(np.count_nonzero(good)),
                  "max_resolved_rho": float(np.max(rho[good])) if np.any(good) else float("nan")})


def cmd_shape(args):
    b = _inner_shape(args.type, args)
    rows = [dict(zip(shapes.CSV_HEADER, r)) for r in shapes.boundary_rows(b, args.points)]
    meta = {"type": args.type, "points": args.points, "arcs": len(b.arcs)}
    meta.update(_shape_params(args.type, args))
    return _emit(args, rows, list(shapes.CSV_HEADER), meta)


# ---------------------------------------------------------------------------


def _add_common(p, n_default):
    p.add_argument("--n", type=int, default=n_default, help="nodes per boundary curve (even)")
    p.add_argument("--tol", type=float, default=None, help="relative tolerance for n-doubling refinement")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def _add_shape_args(p, default_type):
    p.add_argument("--type", choices=SHAPE_TYPES, default=default_type)
    p.add_argument("--r", type=float, default=0.5, help="vertex radius (Reuleaux) or disk radius")
    p.add_argument("--t", type=float, default=None, help="hyperbolic diameter")
    p.add_argument("--h", type=float, default=0.2, help="square half side")
    p.add_argument("--center", type=_complex, default=0.5 + 0.5j)


def build_parser():
    parser = _Parser(prog="hypcap", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("table2", help="Reuleaux triangle capacities against closed-form bounds")
    _add_common(p, 768)
    p.add_argument("--r", default=None, help="vertex radii, comma separated (default: the ten-row grid)")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_table2)

    p = sub.add_parser("table1", help="squares in the dumbbell polygon: diameter and capacity")
    _add_common(p, 1024)
    p.add_argument("--h", default=None, help="square half sides, comma separated")
    p.add_argument("--n-map", type=int, default=2048, help="nodes for the Riemann map")
    p.add_argument("--k", type=int, default=1024, help="boundary samples for the diameter scan")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("quotients", help="capacities divided by the disk capacity b1(t)")
    _add_common(p, 768)
    p.add_argument("--t-min", type=float, required=True)
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--steps", type=int, default=20)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_quotients)

    p = sub.add_parser("bounds", help="closed-form capacity envelopes at hyperbolic diameter t")
    _add_common(p, 0)
    p.add_argument("--t", required=True, help="one or more diameters, comma separated")
    p.add_argument("--max-dim", type=int, default=3)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("qc-bound", help="quasiconformal distortion bound for the hyperbolic diameter")
    _add_common(p, 0)
    p.add_argument("--K", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.set_defaults(func=cmd_qc_bound)

    p = sub.add_parser("cap", help="capacity of a condenser")
    _add_common(p, 768)
    _add_shape_args(p, "hyp-reuleaux")
    p.add_argument("--outer", default=None, help="outer boundary CSV (default unit circle)")
    p.add_argument("--inner", default=None, help="inner boundary CSV (overrides --type)")
    p.add_argument("--alpha", type=_complex, default=None, help="auxiliary point in the ring domain")
    p.add_argument("--z2", type=_complex, default=None, help="auxiliary point inside the set")
    p.add_argument("--k", type=int, default=1024, help="samples for the diameter of the set")
    p.set_defaults(func=cmd_cap)

    p = sub.add_parser("hypdiam", help="hyperbolic diameter of a set in a Jordan domain")
    _add_common(p, 2048)
    _add_shape_args(p, "square")
    p.add_argument("--domain", default=None, help="domain boundary CSV (default dumbbell polygon)")
    p.add_argument("--set", default=None, help="set boundary CSV (overrides --type)")
    p.add_argument("--alpha", type=_complex, default=0.5 + 0.5j, help="base point of the Riemann map")
    p.add_argument("--k", type=int, default=1024)
    p.set_defaults(func=cmd_hypdiam)

    p = sub.add_parser("hypfield", help="grid of rho_G(alpha, z) for contour plots")
    _add_common(p, 2048)
    p.add_argument("--domain", default=None, help="domain boundary CSV (default dumbbell polygon)")
    p.add_argument("--alpha", type=_complex, default=0.5 + 0.5j)
    p.add_argument("--nx", type=int, default=61)
    p.add_argument("--ny", type=int, default=21)
    p.add_argument("--xlim", type=float, nargs=2, default=None)
    p.add_argument("--ylim", type=float, nargs=2, default=None)
    p.set_defaults(func=cmd_hypfield)

    p = sub.add_parser("shape", help="sample a built-in boundary as CSV rows")
    _add_common(p, 0)
    _add_shape_args(p, "hyp-reuleaux")
    p.add_argument("--points", type=int, default=300)
    p.set_defaults(func=cmd_shape)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, GeometryError, ConvergenceError, ValueError, OSError) as exc:
        print(f"hypcap {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
