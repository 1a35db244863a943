"""Vietoris-Rips graphs of finite ellipse subsets and the closed-form answers
for the whole ellipse.

Directed VR graphs are built by scanning each point's forward out-run until
the chord first exceeds the scale (connectivity of metric balls makes the run
contiguous), then classified through the cyclic-graph machinery. The
whole-ellipse homotopy table and barcode are closed forms in the two critical
radii.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from . import _kernels as K
from .circle import CyclePosition
from .cyclic_graph import CyclicGraph, HomotopyType, validate
from .dynamics import OrbitReport, orbits_hit, periodic_orbits
from .ellipse import EllipseModel, EllipsePoint, critical_radii
from .errors import InternalConsistencyError, ParameterError, UnsupportedRangeError
from .oracle import rips_filtration, persistent_pairs

_BOUNDARY_EQ_TOL = 1e-12
_BOUNDARY_WARN_TOL = 1e-9
SAMPLE_BARCODE_CAP = 60


class Convention(Enum):
    """Simplices of diameter strictly less than r, or at most r."""

    LESS = "less"
    LESS_EQ = "leq"


@dataclass(frozen=True)
class BarInterval:
    dim: int
    birth: float
    death: float
    birth_closed: bool
    death_closed: bool

    def contains(self, r: float) -> bool:
        if r < self.birth or r > self.death:
            return False
        if r == self.birth and not self.birth_closed:
            return False
        if r == self.death and not self.death_closed:
            return False
        return True

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "birth": self.birth,
            "death": None if math.isinf(self.death) else self.death,
            "birth_closed": self.birth_closed,
            "death_closed": self.death_closed,
        }


@dataclass(frozen=True)
class DiagonalRecord:
    """Ephemeral summands: multiplicity-many diagonal points for every scale
    in (lo, hi); kept symbolic, never materialized pointwise."""

    dim: int
    lo: float
    hi: float
    multiplicity: int

    def to_json(self) -> dict:
        return {"dim": self.dim, "lo": self.lo, "hi": self.hi, "multiplicity": self.multiplicity}


@dataclass(frozen=True)
class Barcode:
    intervals: tuple
    diagonal: tuple

    def to_json(self) -> dict:
        return {
            "intervals": [b.to_json() for b in self.intervals],
            "diagonal": [d.to_json() for d in self.diagonal],
        }


def sort_points(points) -> list:
    """Points in cyclic parameter order; vertex i of a VR graph built from
    them is the i-th entry."""
    return sorted(points, key=lambda p: p.t)


def vr_graph(m: EllipseModel, points, r: float, convention: Convention) -> CyclicGraph:
    """Directed VR graph at scale r: vertex order is cyclic parameter order,
    out-runs scan forward while the chord stays below (Less) or at most
    (LessEq) r."""
    if not 0.0 < r < 2.0:
        raise ParameterError(f"scale must lie in (0, 2), got {r}")
    pts = sort_points(points)
    ts = [p.t for p in pts]
    for i in range(1, len(ts)):
        if ts[i] == ts[i - 1]:
            raise ParameterError(f"duplicate points at parameter {ts[i]}")
    od = K.vr_out_degrees(m.a, ts, r, convention is Convention.LESS_EQ)
    g = CyclicGraph([t / K.TWO_PI for t in ts], od)
    if not validate(g):
        raise InternalConsistencyError("VR graph of an ellipse subset failed validation")
    return g


def classify_sample(m: EllipseModel, points, r: float, convention: Convention) -> tuple:
    """(homotopy type, orbit report) of the clique complex of the VR graph."""
    from .cyclic_graph import homotopy_type

    g = vr_graph(m, points, r, convention)
    return homotopy_type(g), periodic_orbits(g)


@dataclass(frozen=True)
class EllipseAnswer:
    homotopy: HomotopyType
    near_boundary: bool  # r within 1e-9 (but not 1e-12) of a critical radius


def ellipse_homotopy(m: EllipseModel, r: float, convention: Convention) -> EllipseAnswer:
    """Closed-form homotopy type of the VR complex of the whole ellipse.

    Boundary comparisons snap within 1e-12 of a critical radius; values within
    1e-9 but beyond the snap get the open-interval answer plus a warning flag.
    Scales beyond r2 are an explicit unsupported range.
    """
    r1, r2 = critical_radii(m)
    if not r > 0.0:
        raise ParameterError(f"scale must be positive, got {r}")
    at_r1 = abs(r - r1) <= _BOUNDARY_EQ_TOL
    at_r2 = abs(r - r2) <= _BOUNDARY_EQ_TOL
    if r > r2 and not at_r2:
        raise UnsupportedRangeError(f"no closed form past r2={r2} (got r={r})")
    near = (not at_r1 and abs(r - r1) < _BOUNDARY_WARN_TOL) or (
        not at_r2 and abs(r - r2) < _BOUNDARY_WARN_TOL
    )
    if r1 == r2 and (at_r1 or at_r2):
        # circle limit: both critical radii coincide and the table degenerates
        if convention is Convention.LESS:
            return EllipseAnswer(HomotopyType.odd_sphere(0), near)
        raise UnsupportedRangeError(
            "at a = 1 the critical radii coincide; the <= complex at the "
            "critical scale is outside the classified range"
        )
    if convention is Convention.LESS:
        if r < r1 or at_r1:
            return EllipseAnswer(HomotopyType.odd_sphere(0), near)
        return EllipseAnswer(HomotopyType.even_wedge(1, 1), near)
    if at_r1:
        return EllipseAnswer(HomotopyType.even_wedge(1, 1), near)
    if at_r2:
        return EllipseAnswer(HomotopyType.even_wedge(3, 1), near)
    if r < r1:
        return EllipseAnswer(HomotopyType.odd_sphere(0), near)
    return EllipseAnswer(HomotopyType.even_wedge(5, 1), near)


def ellipse_barcode(m: EllipseModel, convention: Convention) -> Barcode:
    """Persistent homology of the whole ellipse over [0, r2], symbolically.

    Less: H1 = (0, r1], H2 = (r1, r2]. LessEq: H1 = [0, r1), H2 = [r1, r2]
    plus a multiplicity-4 diagonal record over (r1, r2). Degenerate intervals
    at a = 1 (r1 = r2) are dropped when empty."""
    r1, r2 = critical_radii(m)
    if convention is Convention.LESS:
        intervals = [BarInterval(1, 0.0, r1, False, True)]
        if r1 < r2:
            intervals.append(BarInterval(2, r1, r2, False, True))
        return Barcode(tuple(intervals), ())
    intervals = [BarInterval(1, 0.0, r1, True, False), BarInterval(2, r1, r2, True, True)]
    diagonal = [DiagonalRecord(2, r1, r2, 4)] if r1 < r2 else []
    return Barcode(tuple(intervals), tuple(diagonal))


def sample_barcode(
    m: EllipseModel,
    points,
    convention: Convention,
    max_dim: int = 2,
    cap: int = SAMPLE_BARCODE_CAP,
) -> Barcode:
    """Persistent homology of a finite sample over GF(2), dimensions
    0..max_dim, by boundary-matrix reduction on the diameter filtration.

    The complex is constant between critical values; births and deaths sit at
    the critical values with the convention's endpoint flags: LessEq bars are
    [b, d), Less bars are (b, d]. Zero-length pairs aggregate into diagonal
    records."""
    pts = sort_points(points)
    n = len(pts)
    if n > cap:
        raise ParameterError(f"sample size {n} exceeds the oracle cap {cap}")
    dist = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d = math.hypot(pts[j].x - pts[i].x, pts[j].y - pts[i].y)
            dist[i][j] = dist[j][i] = d
    complex_ = rips_filtration(dist, max_dim + 1)
    pairs, essentials = persistent_pairs(complex_, max_dim)
    leq = convention is Convention.LESS_EQ
    intervals = []
    diagonal_counts = {}
    for dim, birth, death in pairs:
        if dim > max_dim:
            continue
        if birth == death:
            key = (dim, birth)
            diagonal_counts[key] = diagonal_counts.get(key, 0) + 1
            continue
        intervals.append(BarInterval(dim, birth, death, leq, not leq))
    for dim, birth in essentials:
        intervals.append(BarInterval(dim, birth, math.inf, leq, False))
    intervals.sort(key=lambda b: (b.dim, b.birth, b.death))
    diagonal = [
        DiagonalRecord(dim, value, value, count)
        for (dim, value), count in sorted(diagonal_counts.items())
    ]
    return Barcode(tuple(intervals), tuple(diagonal))


def rank_across(
    m: EllipseModel, points, r: float, r_tilde: float, convention: Convention
) -> int:
    """Rank of the map induced on middle homology by growing the scale from r
    to r_tilde on a fixed sample: the number of distinct orbit targets hit by
    the identity vertex map, minus one."""
    pts = sort_points(points)
    g = vr_graph(m, pts, r, convention)
    g_tilde = vr_graph(m, pts, r_tilde, convention)
    return orbits_hit(g, g_tilde, list(range(g.n))) - 1
