"""Epsilon-dense subsets of the ellipse with a prescribed number of periodic
orbits, plus uniform samplers and a grid density estimator.

The adversarial construction follows the existence proof step by step: seed
inscribed triangles accumulating toward the attracting end of each fast
component, densify the rest of the component with a chain of triangles whose
steps are small enough that no chain triangle is an orbit, then fill the slow
components with arbitrary seeded points (slow points cannot create orbits).
The output is self-certifying: density, exact orbit count, and homotopy type
are all verified before returning.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels as K
from .cyclic_graph import homotopy_type, HomotopyType
from .dynamics import periodic_orbits
from .ellipse import EllipseModel, _side_param, critical_radii, z_points
from .errors import ConstructionError, ParameterError
from .vr import Convention, vr_graph

_CHAIN_GUARD = 20_000
_PROBE_GRID = 13


@dataclass(frozen=True)
class SamplerSpec:
    a: float
    r: float
    epsilon: float
    k: int
    split: tuple
    seed: int = 0

    def __post_init__(self) -> None:
        r1, r2 = critical_radii(EllipseModel(self.a))
        if not r1 < self.r < r2:
            raise ParameterError(f"scale must lie strictly between {r1} and {r2}")
        if self.epsilon <= 0.0:
            raise ParameterError("epsilon must be positive")
        n, n2 = self.split
        if n < 1 or n2 < 1 or n + n2 != self.k or self.k < 2:
            raise ParameterError("split must be two positive counts summing to k >= 2")


@lru_cache(maxsize=64)
def _z_params(a: float, r: float) -> tuple:
    return tuple(p.t for p in z_points(EllipseModel(a), r))


def _between(lo: float, x: float, hi: float) -> bool:
    """x strictly inside the forward arc (lo, hi)."""
    return 0.0 < K.angle_gap(lo, x) < K.angle_gap(lo, hi)


class _Tri:
    """Warm-started inscribed-triangle evaluations on raw parameters."""

    def __init__(self, a: float):
        self.a = a

    def at(self, t: float, guess: float | None = None, width: float = 2e-3) -> tuple:
        s = _side_param(self.a, t, guess, width)
        t1 = K.advance_param(self.a, t, s)
        t2 = K.advance_param(self.a, t1, s)
        return s, t1, t2


def _bisect_offset(f, hi: float, target: float, iters: int = 40) -> float:
    """Smallest offset u in (0, hi] with f(u) = target, for f increasing from
    f(0) = 0; expands hi only through the caller-supplied bound."""
    lo = 0.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if f(mid) < target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-13:
            break
    return 0.5 * (lo + hi)


def _fast_component(
    a: float,
    r: float,
    eps: float,
    z: tuple,  # (zA, zB, zAp, zBp, zApp, zBpp): component ends and their images
    n_orbits: int,
) -> tuple:
    """Points for one invariant set of fast arcs: n_orbits seeded triangles
    accumulating toward zB plus a non-periodic triangle chain densifying the
    rest. Returns (params, orbit_triples)."""
    zA, zB, zAp, zBp, zApp, zBpp = z
    tri = _Tri(a)
    gap_ab = K.angle_gap(zA, zB)
    out: list = []

    def dist_to_end(u: float) -> float:
        q = K.norm_angle(zB - u)
        s, q1, q2 = tri.at(q, r - 1e-6, 4e-3)
        return max(K.chord(a, q, zB), K.chord(a, q1, zBp), K.chord(a, q2, zBpp))

    hi = 0.05 * gap_ab
    while dist_to_end(hi) < 0.5 * eps and hi < 0.9 * gap_ab:
        hi = min(1.8 * hi, 0.9 * gap_ab)
    u1 = _bisect_offset(dist_to_end, hi, 0.5 * eps)
    p = K.norm_angle(zB - u1)
    tri_p = tri.at(p, r - 1e-6, 4e-3)
    orbit_triples = [(p, tri_p)]

    for _ in range(1, n_orbits):
        prev, (prev_s, prev_1, prev_2) = orbit_triples[-1]
        floor_t = K.advance_param(a, prev_2, r)  # g_r(p'') overshoots past p
        need_1 = K.advance_param(a, prev, r)
        need_2 = K.advance_param(a, prev_1, r)
        if not _between(prev, floor_t, zB):
            raise ConstructionError(
                f"orbit seeding lost its margin toward the component end at {prev}"
            )
        frac = 0.5
        for _ in range(80):
            cand = K.norm_angle(floor_t + frac * K.angle_gap(floor_t, zB))
            s, c1, c2 = tri.at(cand, prev_s, 4e-3)
            if _between(need_1, c1, zBp) and _between(need_2, c2, zBpp):
                orbit_triples.append((cand, (s, c1, c2)))
                break
            frac = 0.5 * (frac + 1.0)
        else:
            raise ConstructionError("could not place the next orbit triangle")
    for q, (s, q1, q2) in orbit_triples:
        out.extend((q, q1, q2))

    # landing zone near zA
    def dist_to_start(u: float) -> float:
        q = K.norm_angle(zA + u)
        s, q1, q2 = tri.at(q, r - 1e-6, 4e-3)
        return max(K.chord(a, q, zA), K.chord(a, q1, zAp), K.chord(a, q2, zApp))

    p1, tri_1 = orbit_triples[0]
    hi = 0.05 * gap_ab
    while dist_to_start(hi) < 0.5 * eps and hi < 0.9 * gap_ab:
        hi = min(1.8 * hi, 0.9 * gap_ab)
    u_land = _bisect_offset(dist_to_start, hi, 0.5 * eps)
    land = K.norm_angle(zA + u_land)
    if not _between(zA, land, p1):
        # the whole component already sits within the landing zone
        return tuple(out), orbit_triples

    # Densification chain from p1 back toward zA. Each step takes the largest
    # margin that keeps the image of the new point strictly inside its
    # predecessor's window (between the predecessor's middle vertex and the
    # predecessor's image), which is the condition ruling out new periodic
    # orbits among chain points; the window shrinks linearly near both
    # component ends, so steps adapt instead of using one global constant.
    cur, cur_tri = p1, tri_1
    g_cur = K.advance_param(a, cur, r)
    first = True
    for _ in range(_CHAIN_GUARD):
        if not first and (cur == land or not _between(land, cur, p1)):
            break
        first = False
        window = K.angle_gap(cur_tri[1], g_cur)
        step = min(0.8 * window, 0.45 * eps / a, 0.999 * K.angle_gap(zA, cur))
        placed = False
        for _ in range(60):
            q = K.norm_angle(cur - step)
            tri_q = tri.at(q, cur_tri[0], max(8.0 * step, 1e-4))
            g_q = K.advance_param(a, q, r)
            dmax = max(
                K.chord(a, q, cur),
                K.chord(a, tri_q[1], cur_tri[1]),
                K.chord(a, tri_q[2], cur_tri[2]),
            )
            if dmax <= 0.45 * eps and _between(cur_tri[1], g_q, g_cur):
                placed = True
                break
            step *= 0.5
            if step < 1e-10:
                raise ConstructionError("chain step collapsed inside the fast arc")
        if not placed:
            raise ConstructionError("could not place a chain triangle")
        cur, cur_tri, g_cur = q, tri_q, g_q
        out.extend((q, tri_q[1], tri_q[2]))
    else:
        raise ConstructionError("densification chain did not terminate")
    return tuple(out), orbit_triples


def _fill_slow(a: float, eps: float, zz: tuple, rng: random.Random) -> list:
    """Seeded arbitrary points making the slow arcs dense; slow points cannot
    create periodic orbits."""
    arcs = [
        (zz[1], zz[2]), (zz[5], zz[6]), (zz[9], zz[10]),
        (zz[3], zz[4]), (zz[7], zz[8]), (zz[11], zz[0]),
    ]
    out = []
    for start, end in arcs:
        gap = K.angle_gap(start, end)
        count = max(1, math.ceil(a * gap / (eps / 1.8)))
        for j in range(count):
            frac = (j + 0.5 + rng.uniform(-0.2, 0.2)) / count
            frac = min(max(frac, 0.02), 0.98)
            out.append(K.norm_angle(start + gap * frac))
    return out


def epsilon_density(m: EllipseModel, points, grid_size: int = 10_000) -> float:
    """Sup over a parameter grid of the Euclidean distance to the nearest
    sample; one-sided error bounded by the grid mesh (chord distance from a
    point to its two parameter-neighbors is minimized at one of them)."""
    if not points:
        raise ParameterError("density of an empty sample is undefined")
    a = m.a
    ts = np.sort(np.array([p.t for p in points]))
    xs, ys = a * np.cos(ts), np.sin(ts)
    grid = np.arange(grid_size) * (K.TWO_PI / grid_size)
    gx, gy = a * np.cos(grid), np.sin(grid)
    idx = np.searchsorted(ts, grid) % len(ts)
    prev = idx - 1
    d_next = np.hypot(xs[idx] - gx, ys[idx] - gy)
    d_prev = np.hypot(xs[prev] - gx, ys[prev] - gy)
    return float(np.minimum(d_next, d_prev).max())


def uniform_sample(m: EllipseModel, n_points: int, jitter_seed=None) -> tuple:
    """n points at (optionally jittered) equal parameter spacing, plus the
    achieved density. Deterministic for a fixed seed; no seed means exactly
    even spacing."""
    if n_points < 3:
        raise ParameterError("need at least 3 points")
    if jitter_seed is None:
        offsets = [0.0] * n_points
    else:
        rng = random.Random(jitter_seed)
        offsets = [rng.uniform(-0.3, 0.3) for _ in range(n_points)]
    pts = [m.point((i + offsets[i]) * K.TWO_PI / n_points) for i in range(n_points)]
    return pts, epsilon_density(m, pts)


def verify_sample(m: EllipseModel, points, r: float, epsilon: float, k: int) -> dict:
    """Density, orbit count, and homotopy checks for a constructed sample.

    Returns the report; raises ConstructionError when any check fails. Both
    edge conventions are verified to coincide on the sample (the construction
    avoids exact distance-r pairs)."""
    grid = max(10_000, math.ceil(10.0 * K.TWO_PI * m.a / epsilon))
    achieved = epsilon_density(m, points, grid)
    g_leq = vr_graph(m, points, r, Convention.LESS_EQ)
    g_less = vr_graph(m, points, r, Convention.LESS)
    report_orbits = periodic_orbits(g_leq)
    ht = homotopy_type(g_leq)
    report = {
        "points": len(points),
        "epsilon_target": epsilon,
        "epsilon_achieved": achieved,
        "orbit_count": report_orbits.count,
        "orbit_length": report_orbits.length,
        "orbit_winding": report_orbits.winding,
        "homotopy": ht.to_json(),
        "conventions_agree": g_leq.out_degree == g_less.out_degree,
    }
    failures = []
    if achieved > epsilon:
        failures.append(f"density {achieved} exceeds epsilon {epsilon}")
    if report_orbits.count != k:
        failures.append(f"expected {k} orbits, found {report_orbits.count}")
    if report_orbits.length != 3 or report_orbits.winding != 1:
        failures.append("orbits are not length-3 winding-1")
    if ht != HomotopyType.even_wedge(k - 1, 1):
        failures.append(f"homotopy type {ht} is not a wedge of {k - 1} 2-spheres")
    if not report["conventions_agree"]:
        failures.append("strict and non-strict conventions disagree on this sample")
    if failures:
        raise ConstructionError("; ".join(failures), report)
    return report


def merge_instance(m: EllipseModel, r: float, r_tilde: float) -> list:
    """A small designed sample whose orbits merge between two scales.

    Two attractor triangles (one per fast interval) persist at both scales; a
    third "merger" triangle just behind the first attractor is a separate
    orbit at r but drains into the attractor family at r_tilde, so growing
    the scale induces a rank-1 map on degree-2 homology while the smaller
    scale has two independent classes. The merger offset is located by a scan
    (the valid window sits at the critical-radius gap scale), and the result
    is verified: 3 orbits at r, 2 at r_tilde.
    """
    r1, r2 = critical_radii(m)
    if not r1 < r < r_tilde < r2:
        raise ParameterError("need r1 < r < r_tilde < r2")
    from .ellipse import inscribed_triangle

    zz = _z_params(m.a, r)
    attractors = []
    for i0, i1 in ((0, 1), (2, 3)):
        mid_t = K.norm_angle(zz[i0] + 0.5 * K.angle_gap(zz[i0], zz[i1]))
        attractors.append(inscribed_triangle(m, m.point(mid_t)))
    base = list(attractors[0].vertices) + list(attractors[1].vertices)

    def orbit_counts(pts) -> tuple:
        g = vr_graph(m, pts, r, Convention.LESS_EQ)
        gt = vr_graph(m, pts, r_tilde, Convention.LESS_EQ)
        return periodic_orbits(g).count, periodic_orbits(gt).count

    anchor = attractors[0].vertices[0].t
    hits = []
    u = 1e-5
    while u < 0.05:
        merger = inscribed_triangle(m, m.point(anchor - u))
        pts = base + list(merger.vertices)
        if orbit_counts(pts) == (3, 2):
            hits.append(u)
        elif hits:
            break  # past the far edge of the window
        u *= 1.18
    if not hits:
        raise ConstructionError("no merger offset produced a 3-to-2 orbit merge")
    merger = inscribed_triangle(m, m.point(anchor - hits[len(hits) // 2]))
    pts = base + list(merger.vertices)
    if orbit_counts(pts) != (3, 2):
        raise ConstructionError("merge instance failed its final verification")
    return sorted(pts, key=lambda p: p.t)


def adversarial_sample(spec: SamplerSpec, with_report: bool = False):
    """An epsilon-dense sample whose VR graph at the spec scale has exactly k
    periodic orbits of length three (so the complex is a wedge of k-1
    2-spheres). Self-certifying; raises ConstructionError with the stage and
    report on any failed check."""
    m = EllipseModel(spec.a)
    a, r, eps = spec.a, spec.r, spec.epsilon
    zz = _z_params(a, r)
    rng = random.Random(spec.seed)
    stage = "fast component around the first minimum"
    try:
        pts0, orbits0 = _fast_component(
            a, r, eps, (zz[0], zz[1], zz[4], zz[5], zz[8], zz[9]), spec.split[0]
        )
        stage = "fast component around the second minimum"
        pts2, orbits2 = _fast_component(
            a, r, eps, (zz[2], zz[3], zz[6], zz[7], zz[10], zz[11]), spec.split[1]
        )
        stage = "slow fill"
        fill = _fill_slow(a, eps, zz, rng)
    except ConstructionError as exc:
        raise ConstructionError(f"{stage}: {exc}", exc.report) from exc
    params = sorted(set(pts0) | set(pts2) | set(fill))
    points = [m.point(t) for t in params]
    stage = "verification"
    report = verify_sample(m, points, r, eps, spec.k)
    report["orbit_triples"] = [
        [t, t1, t2] for t, (_, t1, t2) in list(orbits0) + list(orbits2)
    ]
    report["seed"] = spec.seed
    if with_report:
        return points, report
    return points
