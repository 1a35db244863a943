"""Geometry of the small-eccentricity ellipse (x/a)^2 + y^2 = 1, 1 <= a <= sqrt(2).

Hosts the normal-antipode map h and its inverse, the Euclidean arc-advance map
g_r, the inscribed-equilateral-triangle side function s with its critical
radii, the twelve s = r solutions that separate fast from slow arcs, and the
sextic polynomial certifying the triangle x-coordinates.

Points are parametrized as (a*cos t, sin t); the parameter t is the source of
truth (cyclic order is exact in t, Euclidean quantities are derived). All root
finding is bisection on intervals where a lemma supplies a unique sign change;
see the kernel backends for the actual loops.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from . import _kernels as K
from .circle import CyclePosition
from .errors import InternalConsistencyError, ParameterError

SQRT2 = math.sqrt(2.0)
_A_TOL = 1e-12
_SIDE_BRACKET_PAD = 1e-3
_WIDE_BRACKET = (1.0, 1.9999999)
_CLASS_TOL = 1e-9


@dataclass(frozen=True)
class EllipsePoint:
    """A point of the ellipse; t in [0, 2*pi), coords cached."""

    t: float
    x: float
    y: float

    @property
    def cycle(self) -> CyclePosition:
        return CyclePosition(self.t / K.TWO_PI)

    def to_json(self) -> dict:
        return {"t": self.t, "x": self.x, "y": self.y}


class PointSpeed(Enum):
    FAST = "fast"
    SLOW = "slow"
    CRITICAL = "critical"


@dataclass(frozen=True)
class EllipseModel:
    """Semi-major axis a in [1, sqrt(2)]; a = 1 is the circle limit with exact
    fast paths in the kernels."""

    a: float

    def __post_init__(self) -> None:
        if not (1.0 - _A_TOL <= self.a <= SQRT2 + _A_TOL):
            raise ParameterError(f"semi-major axis must lie in [1, sqrt(2)], got {self.a}")

    def point(self, t: float) -> EllipsePoint:
        t = K.norm_angle(t)
        x, y = K.ellipse_xy(self.a, t)
        return EllipsePoint(t, x, y)

    def point_from_xy(self, x: float, y: float) -> EllipsePoint:
        return self.point(math.atan2(y, x / self.a))


@dataclass(frozen=True)
class TriangleCertificate:
    """An inscribed equilateral triangle, vertices in cyclic order."""

    vertices: tuple
    side: float

    def __post_init__(self) -> None:
        p, q, w = self.vertices
        for u, v in ((p, q), (q, w), (w, p)):
            if abs(euclid(u, v) - self.side) > 1e-9:
                raise InternalConsistencyError(
                    f"triangle side {euclid(u, v)} deviates from {self.side}"
                )
        if not (0.0 < K.angle_gap(p.t, q.t) < K.angle_gap(p.t, w.t)):
            raise InternalConsistencyError("triangle vertices are not in cyclic order")


def euclid(p: EllipsePoint, q: EllipsePoint) -> float:
    return math.hypot(q.x - p.x, q.y - p.y)


def antipodal_normal(m: EllipseModel, p: EllipsePoint) -> EllipsePoint:
    """h(p): the second intersection of the normal line at p with the ellipse
    (closed form; the circle case degenerates to the antipode)."""
    return m.point(K.normal_second_param(m.a, p.t))


def inverse_antipodal_normal(m: EllipseModel, p: EllipsePoint) -> EllipsePoint:
    """The unique q with h(q) = p, by bisection in the quadrant diametrically
    opposite p where the defining equation has a single monotone crossing."""
    return m.point(K.inverse_normal_param(m.a, p.t))


def advance(m: EllipseModel, p: EllipsePoint, r: float) -> EllipsePoint:
    """g_r(p): the unique point at Euclidean distance r from p on the forward
    arc toward h^{-1}(p), where the distance from p is strictly increasing."""
    if not 0.0 < r < 2.0:
        raise ParameterError(f"advance radius must lie in (0, 2), got {r}")
    return m.point(K.advance_param(m.a, p.t, r))


def critical_radii(m: EllipseModel) -> tuple:
    """(r1, r2): the global minimum and maximum of the triangle side function,
    attained on the axes."""
    a = m.a
    s3 = math.sqrt(3.0)
    return (4.0 * s3 * a / (a * a + 3.0), 4.0 * s3 * a * a / (3.0 * a * a + 1.0))


def _side_param(a: float, t: float, guess: float | None = None, width: float = 0.0) -> float:
    """s(t) with an optional warm bracket around a previous value."""
    if guess is not None:
        s = K.side_length(a, t, guess - width, guess + width)
        if not math.isnan(s):
            return s
    r1, r2 = 4.0 * math.sqrt(3.0) * a / (a * a + 3.0), 4.0 * math.sqrt(3.0) * a * a / (3.0 * a * a + 1.0)
    s = K.side_length(a, t, max(r1 - _SIDE_BRACKET_PAD, 0.05), min(r2 + _SIDE_BRACKET_PAD, 1.9999999))
    if not math.isnan(s):
        return s
    s = K.side_length(a, t, *_WIDE_BRACKET)
    if math.isnan(s):
        raise InternalConsistencyError(f"triangle side bracketing failed at t={t}, a={a}")
    return s


def triangle_side(m: EllipseModel, p: EllipsePoint) -> float:
    """s(p): side of the unique inscribed equilateral triangle with vertex p,
    by bisection on the radius of the displacement of three chained advances."""
    return _side_param(m.a, p.t)


def inscribed_triangle(m: EllipseModel, p: EllipsePoint) -> TriangleCertificate:
    s = triangle_side(m, p)
    q = advance(m, p, s)
    w = advance(m, q, s)
    return TriangleCertificate((p, q, w), s)


def point_class(m: EllipseModel, r: float, p: EllipsePoint) -> PointSpeed:
    """Fast where s(p) < r, slow where s(p) > r, critical within 1e-9."""
    r1, r2 = critical_radii(m)
    if not r1 < r < r2:
        raise ParameterError(f"scale must lie strictly between {r1} and {r2}, got {r}")
    s = triangle_side(m, p)
    if s < r - _CLASS_TOL:
        return PointSpeed.FAST
    if s > r + _CLASS_TOL:
        return PointSpeed.SLOW
    return PointSpeed.CRITICAL


def _axis_triangle_params(a: float) -> list:
    """Parameters of the twelve extrema of s: the vertices of the two
    minimal triangles (through (+-a, 0)) and the two maximal triangles
    (through (0, +-1)), as (t, kind) with kind -1 for minima and +1 for
    maxima, sorted by t."""
    out = []
    mx = -(3.0 * a - a**3) / (a * a + 3.0)
    my = 2.0 * math.sqrt(3.0) * a / (a * a + 3.0)
    for x, y in ((a, 0.0), (mx, my), (mx, -my), (-a, 0.0), (-mx, my), (-mx, -my)):
        out.append((K.norm_angle(math.atan2(y, x / a)), -1))
    ex = 2.0 * math.sqrt(3.0) * a * a / (3.0 * a * a + 1.0)
    ey = -(3.0 * a * a - 1.0) / (3.0 * a * a + 1.0)
    for x, y in ((0.0, 1.0), (ex, ey), (-ex, ey), (0.0, -1.0), (ex, -ey), (-ex, -ey)):
        out.append((K.norm_angle(math.atan2(y, x / a)), +1))
    out.sort()
    return out


def z_points(m: EllipseModel, r: float) -> list:
    """The twelve solutions of s = r for r strictly between the critical
    radii, in cyclic order starting so that the arc from the first to the
    second point is fast (contains a minimum of s).

    One bisection per arc between consecutive extrema of s, where s is
    strictly monotone.
    """
    a = m.a
    r1, r2 = critical_radii(m)
    if not r1 < r < r2:
        raise ParameterError(f"z points need r strictly between {r1} and {r2}, got {r}")
    ext = _axis_triangle_params(a)
    roots = []
    for i in range(12):
        t0, kind0 = ext[i]
        t1, _ = ext[(i + 1) % 12]
        gap = K.angle_gap(t0, t1)
        lo, hi = 0.0, gap
        # sign of s - r at the lo end: negative when the arc starts at a minimum
        neg_at_lo = kind0 == -1
        for _ in range(48):
            mid = 0.5 * (lo + hi)
            v = _side_param(a, K.norm_angle(t0 + mid)) - r
            if (v < 0.0) == neg_at_lo:
                lo = mid
            else:
                hi = mid
            if hi - lo <= 1e-12:
                break
        roots.append(K.norm_angle(t0 + 0.5 * (lo + hi)))
    roots.sort()
    min_ts = [t for t, kind in ext if kind == -1]
    for shift in range(12):
        zz = roots[shift:] + roots[:shift]
        g = K.angle_gap(zz[0], zz[1])
        if any(0.0 < K.angle_gap(zz[0], t) < g for t in min_ts):
            return [m.point(t) for t in zz]
    raise InternalConsistencyError("no fast arc found among the s = r roots")


def sextic_residual(x: float, a: float, r: float) -> float:
    """The degree-6-in-x polynomial whose roots contain every x-coordinate of
    an inscribed equilateral triangle of side r; evaluated with the monomials
    grouped by power of x."""
    a2 = a * a
    a4 = a2 * a2
    a6 = a4 * a2
    a8 = a4 * a4
    a10 = a8 * a2
    a12 = a8 * a4
    r4 = r**4
    r6 = r4 * r * r
    r8 = r4 * r4
    r10 = r8 * r * r
    c0 = (
        12288 * a12 * r4
        - 6912 * a12 * r6
        - 10752 * a10 * r6
        + 13568 * a8 * r6
        + 1296 * a12 * r8
        + 4032 * a10 * r8
        - 2208 * a8 * r8
        - 6720 * a6 * r8
        + 3600 * a4 * r8
        - 81 * a12 * r10
        - 378 * a10 * r10
        - 63 * a8 * r10
        + 1044 * a6 * r10
        - 63 * a4 * r10
        - 378 * a2 * r10
        - 81 * r10
    )
    c2 = (
        -36864 * a10 * r4
        + 36864 * a8 * r4
        + 13824 * a10 * r6
        - 4608 * a8 * r6
        + 16896 * a6 * r6
        - 26112 * a4 * r6
        - 1296 * a10 * r8
        - 432 * a8 * r8
        - 4512 * a6 * r8
        + 4512 * a4 * r8
        + 432 * a2 * r8
        + 1296 * r8
    )
    c4 = (
        36864 * a8 * r4
        - 73728 * a6 * r4
        + 36864 * a4 * r4
        - 6912 * a8 * r6
        + 15360 * a6 * r6
        - 16896 * a4 * r6
        + 15360 * a2 * r6
        - 6912 * r6
    )
    c6 = -12288 * a6 * r4 + 36864 * a4 * r4 - 36864 * a2 * r4 + 12288 * r4
    x2 = x * x
    return c0 + x2 * (c2 + x2 * (c4 + x2 * c6))


def sextic_monomial_scale(x: float, a: float, r: float) -> float:
    """Largest monomial magnitude of the sextic at (x, a, r); residuals are
    only meaningful relative to this (coefficients reach ~1e4, degrees 22)."""
    a2 = a * a
    r2 = r * r
    x2 = x * x
    scale = 0.0
    # (|coef|, powers of a^2, r^2, x^2) for all 40 monomials
    for coef, pa, pr, px in (
        (12288, 6, 2, 0), (6912, 6, 3, 0), (10752, 5, 3, 0), (13568, 4, 3, 0),
        (1296, 6, 4, 0), (4032, 5, 4, 0), (2208, 4, 4, 0), (6720, 3, 4, 0),
        (3600, 2, 4, 0), (81, 6, 5, 0), (378, 5, 5, 0), (63, 4, 5, 0),
        (1044, 3, 5, 0), (63, 2, 5, 0), (378, 1, 5, 0), (81, 0, 5, 0),
        (36864, 5, 2, 1), (36864, 4, 2, 1), (13824, 5, 3, 1), (4608, 4, 3, 1),
        (16896, 3, 3, 1), (26112, 2, 3, 1), (1296, 5, 4, 1), (432, 4, 4, 1),
        (4512, 3, 4, 1), (4512, 2, 4, 1), (432, 1, 4, 1), (1296, 0, 4, 1),
        (36864, 4, 2, 2), (73728, 3, 2, 2), (36864, 2, 2, 2), (6912, 4, 3, 2),
        (15360, 3, 3, 2), (16896, 2, 3, 2), (15360, 1, 3, 2), (6912, 0, 3, 2),
        (12288, 3, 2, 3), (36864, 2, 2, 3), (36864, 1, 2, 3), (12288, 0, 2, 3),
    ):
        mag = coef * a2**pa * r2**pr * x2**px
        if mag > scale:
            scale = mag
    return scale
