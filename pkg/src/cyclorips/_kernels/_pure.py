"""Pure-Python scalar kernels for ellipse root-finding and VR graph construction.

This is the fallback backend; ``_compiled.pyx`` mirrors every function here
operation-for-operation (same constants, same bisection schedules) so that the
two backends produce identical doubles. Change them together.

All angles are ellipse parameters t with coordinates (a*cos t, sin t); the
"clockwise" direction of the cyclic order is increasing t. Every bisection
below runs on an interval where the relevant lemma guarantees a unique root:
the inverse normal map is bracketed inside the quadrant diametrically opposite
the input, the arc-advance inside the monotone arc toward the inverse-normal
point, and the triangle side inside a bracket where the three-hop displacement
changes sign.
"""

from __future__ import annotations

import math

PI = 3.141592653589793
TWO_PI = 6.283185307179586
HALF_PI = 1.5707963267948966

_AXIS_TOL = 1e-12
_PARAM_TOL = 1e-13
_SIDE_TOL = 1e-12


def norm_angle(t: float) -> float:
    """Map t into [0, 2*pi)."""
    t = math.fmod(t, TWO_PI)
    if t < 0.0:
        t += TWO_PI
    if t >= TWO_PI:
        t = 0.0
    return t


def angle_gap(t0: float, t1: float) -> float:
    """Parameter distance from t0 forward (increasing t) to t1, in [0, 2*pi)."""
    return norm_angle(t1 - t0)


def ellipse_xy(a: float, t: float) -> tuple[float, float]:
    return (a * math.cos(t), math.sin(t))


def chord(a: float, t0: float, t1: float) -> float:
    dx = a * (math.cos(t1) - math.cos(t0))
    dy = math.sin(t1) - math.sin(t0)
    return math.sqrt(dx * dx + dy * dy)


def normal_second_param(a: float, t: float) -> float:
    """Parameter of the second intersection of the normal line at t with the ellipse.

    The normal line p + u*(x/a^2, y) meets the ellipse at u = 0 and at one
    other root of a quadratic whose constant term vanishes, so the second
    intersection is closed-form.
    """
    t = norm_angle(t)
    if a == 1.0:
        return norm_angle(t + PI)
    x = a * math.cos(t)
    y = math.sin(t)
    nx = x / (a * a)
    ny = y
    num = x * nx / (a * a) + y * ny
    den = nx * nx / (a * a) + ny * ny
    u = -2.0 * num / den
    qx = x + u * nx
    qy = y + u * ny
    return norm_angle(math.atan2(qy, qx / a))


def _is_axis(t: float) -> bool:
    for k in range(5):
        if abs(t - k * HALF_PI) < _AXIS_TOL:
            return True
    return False


def inverse_normal_param(a: float, t: float) -> float:
    """Parameter of the unique q with normal_second_param(q) = t.

    For small-eccentricity ellipses the preimage lies in the quadrant
    diametrically opposite t, where the defining function is guaranteed a
    single sign change; bisection there is unconditionally safe.
    """
    t = norm_angle(t)
    if a == 1.0 or _is_axis(t):
        return norm_angle(t + PI)
    x = a * math.cos(t)
    y = math.sin(t)
    quad = int(t / HALF_PI)
    if quad > 3:
        quad = 3
    lo = ((quad + 2) % 4) * HALF_PI
    hi = lo + HALF_PI

    def g(tq: float) -> float:
        cq = math.cos(tq)
        sq = math.sin(tq)
        return (cq / a) * (y - sq) - sq * (x - a * cq)

    glo = g(lo)
    if glo == 0.0:
        return norm_angle(lo)
    neg = glo < 0.0
    for _ in range(48):
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if gm == 0.0:
            return norm_angle(mid)
        if (gm < 0.0) == neg:
            lo = mid
        else:
            hi = mid
        if hi - lo <= _PARAM_TOL:
            break
    return norm_angle(0.5 * (lo + hi))


def advance_param(a: float, t: float, r: float) -> float:
    """Parameter of the unique point at chord distance r forward of t.

    The chord distance from t is strictly increasing up to the inverse-normal
    point; a quadrant-boundary shortcut avoids solving for that point when the
    root is known to come earlier.
    """
    t = norm_angle(t)
    if a == 1.0:
        return norm_angle(t + 2.0 * math.asin(0.5 * r))
    quad = int(t / HALF_PI)
    if quad > 3:
        quad = 3
    gap_q = (quad + 2) * HALF_PI - t
    if chord(a, t, t + gap_q) >= r:
        lo = 0.0
        hi = gap_q
    else:
        t_inv = inverse_normal_param(a, t)
        lo = gap_q
        hi = angle_gap(t, t_inv)
        if hi < lo:
            hi = lo
    for _ in range(52):
        mid = 0.5 * (lo + hi)
        if chord(a, t, t + mid) < r:
            lo = mid
        else:
            hi = mid
        if hi - lo <= _PARAM_TOL:
            break
    return norm_angle(t + 0.5 * (lo + hi))


def triple_advance_gap(a: float, t: float, r: float) -> float:
    """Total parameter displacement of three r-hops from t, minus one full turn.

    Negative when the three hops fall short of closing up, positive when they
    overshoot; zero exactly at r = side of the inscribed equilateral triangle.
    """
    u = t
    total = 0.0
    for _ in range(3):
        v = advance_param(a, u, r)
        total += angle_gap(u, v)
        u = v
    return total - TWO_PI


def side_length(a: float, t: float, lo: float, hi: float) -> float:
    """Side of the inscribed equilateral triangle at t, by bisection on [lo, hi].

    Returns NaN when the bracket does not straddle the root (callers retry
    with a wide bracket).
    """
    flo = triple_advance_gap(a, t, lo)
    fhi = triple_advance_gap(a, t, hi)
    if not (flo < 0.0 and fhi > 0.0):
        if flo == 0.0:
            return lo
        if fhi == 0.0:
            return hi
        return math.nan
    for _ in range(48):
        mid = 0.5 * (lo + hi)
        fm = triple_advance_gap(a, t, mid)
        if fm == 0.0:
            return mid
        if fm < 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= _SIDE_TOL:
            break
    return 0.5 * (lo + hi)


def vr_out_degrees(a: float, ts: list, r: float, leq: bool) -> list:
    """Out-run lengths of the directed VR graph on sorted parameters ts.

    ts must be sorted ascending in [0, 2*pi). Vertex i points to the maximal
    run of consecutive forward points with chord < r (or <= r when leq).
    """
    n = len(ts)
    out = [0] * n
    for i in range(n):
        ti = ts[i]
        xi = a * math.cos(ti)
        yi = math.sin(ti)
        k = 0
        while k < n - 1:
            j = i + k + 1
            if j >= n:
                j -= n
            tj = ts[j]
            dx = a * math.cos(tj) - xi
            dy = math.sin(tj) - yi
            d = math.sqrt(dx * dx + dy * dy)
            if (d <= r) if leq else (d < r):
                k += 1
            else:
                break
        out[i] = k
    return out
