"""Command-line surface: classification, dismantling, dynamics, geometry,
samplers, barcodes, scale sweeps, and the homology oracle.

Exit codes: 0 success, 2 usage or malformed input, 3 verification or
internal-consistency failure. All randomness flows from explicit --seed
flags; outputs are deterministic given flags + seed. The sweep subcommand
parallelizes per grid point (CYCLORIPS_THREADS or --threads; output order is
by grid index regardless of completion order).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .circle import CyclePosition
from .cyclic_graph import CyclicGraph, dismantle, homotopy_type, validate, winding_fraction
from .dynamics import classify_vertices, periodic_orbits
from .ellipse import (
    EllipseModel,
    advance,
    antipodal_normal,
    critical_radii,
    inscribed_triangle,
    inverse_antipodal_normal,
    triangle_side,
    z_points,
)
from .errors import ConstructionError, CycloripsError, InternalConsistencyError, ParameterError
from .oracle import betti_numbers, clique_complex, persistent_pairs, rips_filtration
from .sampler import SamplerSpec, adversarial_sample, uniform_sample
from .vr import Convention, classify_sample, ellipse_barcode, sample_barcode, vr_graph

USAGE_ERROR = 2
VERIFICATION_ERROR = 3


def _wf_str(wf: Fraction) -> str:
    return f"{wf.numerator}/{wf.denominator}"


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParameterError(f"cannot read JSON input {path}: {exc}") from exc


def _load_graph(path: str) -> CyclicGraph:
    g = CyclicGraph.from_json(_load_json(path))
    if not validate(g):
        raise ParameterError(f"{path} does not describe a valid cyclic graph")
    return g


def _load_points(path: str):
    obj = _load_json(path)
    try:
        m = EllipseModel(float(obj["a"]))
        pts = [m.point(float(t)) for t in obj["t"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParameterError(f"malformed point set in {path}: {exc}") from exc
    return m, pts

def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _emit_json(obj, out: str | None) -> None:
    _emit(json.dumps(obj, indent=2, allow_nan=False), out)


def _convention(name: str) -> Convention:
    return Convention.LESS if name == "less" else Convention.LESS_EQ


def _orbit_json(g: CyclicGraph) -> dict:
    report = periodic_orbits(g)
    obj = report.to_json()
    obj["classes"] = [c.value for c in classify_vertices(g)]
    return obj


def cmd_classify(args) -> int:
    if args.graph:
        g = _load_graph(args.graph)
    else:
        m, pts = _load_points(args.points)
        if args.r is None:
            raise ParameterError("--r is required with --points")
        g = vr_graph(m, pts, args.r, _convention(args.convention))
    ht = homotopy_type(g)
    out = {"wf": _wf_str(winding_fraction(g))}
    out.update(ht.to_json())
    out["orbit_report"] = _orbit_json(g)
    _emit_json(out, args.out)
    return 0


def cmd_dismantle(args) -> int:
    g = _load_graph(args.graph)
    core, rounds = dismantle(g)
    _emit_json(
        {
            "core": core.to_json(),
            "rounds": [sorted(r) for r in rounds],
            "wf": _wf_str(winding_fraction(g)),
        },
        args.out,
    )
    return 0


def cmd_dynamics(args) -> int:
    g = _load_graph(args.graph)
    _emit_json(_orbit_json(g), args.out)
    return 0


def cmd_geometry(args) -> int:
    m = EllipseModel(args.a)
    r1, r2 = critical_radii(m)
    out = {"a": args.a, "r1": r1, "r2": r2}
    if args.h_at is not None:
        p = m.point(args.h_at)
        out["h"] = antipodal_normal(m, p).to_json()
        out["h_inverse"] = inverse_antipodal_normal(m, p).to_json()
    if args.advance_at is not None:
        if args.r is None:
            raise ParameterError("--advance-at needs --r")
        out["advance"] = advance(m, m.point(args.advance_at), args.r).to_json()
    if args.triangle_at is not None:
        tri = inscribed_triangle(m, m.point(args.triangle_at))
        out["triangle"] = {"side": tri.side, "vertices": [v.to_json() for v in tri.vertices]}
        out["s"] = tri.side
    if args.z_points:
        if args.r is None:
            raise ParameterError("--z-points needs --r")
        out["z_points"] = [p.to_json() for p in z_points(m, args.r)]
    if args.s_grid:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["t", "s"])
        for i in range(args.s_grid):
            t = i * 2.0 * math.pi / args.s_grid
            w.writerow([f"{t:.12g}", f"{triangle_side(m, m.point(t)):.12g}"])
        _emit(buf.getvalue(), args.csv)
        if args.csv:
            out["s_grid_csv"] = args.csv
        else:
            return 0
    _emit_json(out, args.out)
    return 0


def cmd_sample(args) -> int:
    m = EllipseModel(args.a)
    if args.k is not None:
        split = tuple(int(x) for x in args.split.split(",")) if args.split else None
        if split is None:
            split = (args.k // 2, args.k - args.k // 2)
        spec = SamplerSpec(args.a, args.r, args.epsilon, args.k, split, args.seed)
        pts, report = adversarial_sample(spec, with_report=True)
    else:
        if args.n_points is None:
            raise ParameterError("need either --k (adversarial) or --n-points (uniform)")
        pts, achieved = uniform_sample(m, args.n_points, args.seed)
        report = {"points": len(pts), "epsilon_achieved": achieved}
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["t", "x", "y"])
        for p in pts:
            w.writerow([f"{p.t:.17g}", f"{p.x:.17g}", f"{p.y:.17g}"])
        _emit(buf.getvalue(), args.out)
        sys.stderr.write(json.dumps(report) + "\n")
    else:
        _emit_json({"a": args.a, "t": [p.t for p in pts], "report": report}, args.out)
    return 0


def _barcode_json(bc) -> dict:
    return bc.to_json()


def _barcode_csv(bc) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["kind", "dim", "birth", "death", "birth_closed", "death_closed", "multiplicity"])
    for b in bc.intervals:
        death = "inf" if math.isinf(b.death) else f"{b.death:.17g}"
        w.writerow(["interval", b.dim, f"{b.birth:.17g}", death, b.birth_closed, b.death_closed, 1])
    for d in bc.diagonal:
        w.writerow(["diagonal", d.dim, f"{d.lo:.17g}", f"{d.hi:.17g}", "", "", d.multiplicity])
    return buf.getvalue()


def cmd_barcode(args) -> int:
    conv = _convention(args.convention)
    if args.ellipse:
        bc = ellipse_barcode(EllipseModel(args.a), conv)
    else:
        m, pts = _load_points(args.points)
        bc = sample_barcode(m, pts, conv, max_dim=args.max_dim)
    if args.format == "csv":
        _emit(_barcode_csv(bc), args.out)
    else:
        _emit_json(_barcode_json(bc), args.out)
    return 0


def cmd_sweep(args) -> int:
    m = EllipseModel(args.a)
    conv = _convention(args.convention)
    if args.points:
        _, pts = _load_points(args.points)
    else:
        pts, _ = uniform_sample(m, args.n_points, args.seed)
    if args.r_min <= 0 or args.r_max >= 2 or args.r_min > args.r_max:
        raise ParameterError("sweep grid must satisfy 0 < r-min <= r-max < 2")
    grid = [
        args.r_min + (args.r_max - args.r_min) * i / max(args.steps - 1, 1)
        for i in range(args.steps)
    ]

    def one(r: float):
        ht, report = classify_sample(m, pts, r, conv)
        return (r, _wf_str(report.winding_fraction), str(ht), report.count)

    threads = args.threads or int(os.environ.get("CYCLORIPS_THREADS", "1"))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(one, grid))
    else:
        rows = [one(r) for r in grid]
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["r", "wf", "homotopy", "orbit_count"])
    for r, wf, ht, count in rows:
        w.writerow([f"{r:.12g}", wf, ht, count])
    _emit(buf.getvalue(), args.out)
    return 0


def cmd_oracle(args) -> int:
    if args.graph:
        g = _load_graph(args.graph)
        c = clique_complex(g.undirected_adjacency(), args.max_dim + 1)
    else:
        m, pts = _load_points(args.points)
        if args.r is not None:
            g = vr_graph(m, pts, args.r, _convention(args.convention))
            c = clique_complex(g.undirected_adjacency(), args.max_dim + 1)
        else:
            dist = [[math.hypot(q.x - p.x, q.y - p.y) for q in pts] for p in pts]
            c = rips_filtration(dist, args.max_dim + 1)
    out = {"betti": list(betti_numbers(c, args.max_dim).betti)}
    if args.pairs:
        pairs, essentials = persistent_pairs(c, args.max_dim)
        out["pairs"] = [[d, b, dth] for d, b, dth in pairs]
        out["essential"] = [[d, b] for d, b in essentials]
    _emit_json(out, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cyclorips",
        description="Vietoris-Rips complexes of small-eccentricity ellipses",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="homotopy type of a cyclic graph or a sample")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", help="cyclic graph JSON file")
    src.add_argument("--points", help="point set JSON file ({a, t})")
    p.add_argument("--r", type=float, help="scale (with --points)")
    p.add_argument("--convention", choices=["less", "leq"], default="leq")
    p.add_argument("--out")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("dismantle", help="dismantle a cyclic graph to its regular core")
    p.add_argument("--graph", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_dismantle)

    p = sub.add_parser("dynamics", help="periodic orbits and vertex classes")
    p.add_argument("--graph", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_dynamics)

    p = sub.add_parser("geometry", help="ellipse maps, triangles, critical radii")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--r", type=float)
    p.add_argument("--h-at", type=float, metavar="T")
    p.add_argument("--advance-at", type=float, metavar="T")
    p.add_argument("--triangle-at", type=float, metavar="T")
    p.add_argument("--z-points", action="store_true")
    p.add_argument("--s-grid", type=int, metavar="N", help="CSV grid export of s(t)")
    p.add_argument("--csv", help="destination for --s-grid output")
    p.add_argument("--out")
    p.set_defaults(func=cmd_geometry)

    p = sub.add_parser("sample", help="adversarial or uniform samples")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--r", type=float)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--k", type=int, help="exact orbit count (adversarial)")
    p.add_argument("--split", help="n,n' with n+n'=k")
    p.add_argument("--n-points", type=int, help="uniform sample size")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("barcode", help="ellipse closed form or sample persistence")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--ellipse", action="store_true")
    src.add_argument("--points")
    p.add_argument("--a", type=float, default=1.2)
    p.add_argument("--convention", choices=["less", "leq"], default="leq")
    p.add_argument("--max-dim", type=int, default=2)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_barcode)

    p = sub.add_parser("sweep", help="classification across a scale grid (CSV)")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--r-min", type=float, required=True)
    p.add_argument("--r-max", type=float, required=True)
    p.add_argument("--steps", type=int, default=50)
    p.add_argument("--n-points", type=int, default=200)
    p.add_argument("--points", help="point set JSON instead of a uniform sample")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--convention", choices=["less", "leq"], default="leq")
    p.add_argument("--threads", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("oracle", help="brute-force Betti numbers / persistence")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph")
    src.add_argument("--points")
    p.add_argument("--r", type=float, help="build the VR graph at this scale")
    p.add_argument("--convention", choices=["less", "leq"], default="leq")
    p.add_argument("--max-dim", type=int, default=2)
    p.add_argument("--pairs", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (ConstructionError, InternalConsistencyError) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return VERIFICATION_ERROR
    except CycloripsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
