# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of ``cyclorips._kernels._pure``.

Same constants, same bisection schedules, same arithmetic order; the two
backends must produce identical doubles. Change them together.
"""

from libc.math cimport atan2, asin, cos, fabs, fmod, sin, sqrt, NAN
from libc.stdlib cimport free, malloc


cdef double PI = 3.141592653589793
cdef double TWO_PI = 6.283185307179586
cdef double HALF_PI = 1.5707963267948966

cdef double _AXIS_TOL = 1e-12
cdef double _PARAM_TOL = 1e-13
cdef double _SIDE_TOL = 1e-12


cdef inline double _norm(double t) nogil:
    t = fmod(t, TWO_PI)
    if t < 0.0:
        t += TWO_PI
    if t >= TWO_PI:
        t = 0.0
    return t


cdef inline double _gap(double t0, double t1) nogil:
    return _norm(t1 - t0)


cdef inline double _chord(double a, double t0, double t1) nogil:
    cdef double dx = a * (cos(t1) - cos(t0))
    cdef double dy = sin(t1) - sin(t0)
    return sqrt(dx * dx + dy * dy)


cdef double _normal_second(double a, double t) nogil:
    cdef double x, y, nx, ny, num, den, u, qx, qy
    t = _norm(t)
    if a == 1.0:
        return _norm(t + PI)
    x = a * cos(t)
    y = sin(t)
    nx = x / (a * a)
    ny = y
    num = x * nx / (a * a) + y * ny
    den = nx * nx / (a * a) + ny * ny
    u = -2.0 * num / den
    qx = x + u * nx
    qy = y + u * ny
    return _norm(atan2(qy, qx / a))


cdef inline bint _is_axis(double t) nogil:
    cdef int k
    for k in range(5):
        if fabs(t - k * HALF_PI) < _AXIS_TOL:
            return True
    return False


cdef double _inverse_normal(double a, double t) nogil:
    cdef double x, y, lo, hi, glo, gm, mid, cq, sq
    cdef int quad, it
    cdef bint neg
    t = _norm(t)
    if a == 1.0 or _is_axis(t):
        return _norm(t + PI)
    x = a * cos(t)
    y = sin(t)
    quad = <int> (t / HALF_PI)
    if quad > 3:
        quad = 3
    lo = ((quad + 2) % 4) * HALF_PI
    hi = lo + HALF_PI

    cq = cos(lo)
    sq = sin(lo)
    glo = (cq / a) * (y - sq) - sq * (x - a * cq)
    if glo == 0.0:
        return _norm(lo)
    neg = glo < 0.0
    for it in range(48):
        mid = 0.5 * (lo + hi)
        cq = cos(mid)
        sq = sin(mid)
        gm = (cq / a) * (y - sq) - sq * (x - a * cq)
        if gm == 0.0:
            return _norm(mid)
        if (gm < 0.0) == neg:
            lo = mid
        else:
            hi = mid
        if hi - lo <= _PARAM_TOL:
            break
    return _norm(0.5 * (lo + hi))


cdef double _advance(double a, double t, double r) nogil:
    cdef double gap_q, lo, hi, mid, t_inv
    cdef int quad, it
    t = _norm(t)
    if a == 1.0:
        return _norm(t + 2.0 * asin(0.5 * r))
    quad = <int> (t / HALF_PI)
    if quad > 3:
        quad = 3
    gap_q = (quad + 2) * HALF_PI - t
    if _chord(a, t, t + gap_q) >= r:
        lo = 0.0
        hi = gap_q
    else:
        t_inv = _inverse_normal(a, t)
        lo = gap_q
        hi = _gap(t, t_inv)
        if hi < lo:
            hi = lo
    for it in range(52):
        mid = 0.5 * (lo + hi)
        if _chord(a, t, t + mid) < r:
            lo = mid
        else:
            hi = mid
        if hi - lo <= _PARAM_TOL:
            break
    return _norm(t + 0.5 * (lo + hi))


cdef double _triple_gap(double a, double t, double r) nogil:
    cdef double u = t
    cdef double total = 0.0
    cdef double v
    cdef int i
    for i in range(3):
        v = _advance(a, u, r)
        total += _gap(u, v)
        u = v
    return total - TWO_PI


cdef double _side(double a, double t, double lo, double hi) nogil:
    cdef double flo, fhi, mid, fm
    cdef int it
    flo = _triple_gap(a, t, lo)
    fhi = _triple_gap(a, t, hi)
    if not (flo < 0.0 and fhi > 0.0):
        if flo == 0.0:
            return lo
        if fhi == 0.0:
            return hi
        return NAN
    for it in range(48):
        mid = 0.5 * (lo + hi)
        fm = _triple_gap(a, t, mid)
        if fm == 0.0:
            return mid
        if fm < 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= _SIDE_TOL:
            break
    return 0.5 * (lo + hi)


def norm_angle(double t):
    return _norm(t)


def angle_gap(double t0, double t1):
    return _gap(t0, t1)


def ellipse_xy(double a, double t):
    return (a * cos(t), sin(t))


def chord(double a, double t0, double t1):
    return _chord(a, t0, t1)


def normal_second_param(double a, double t):
    return _normal_second(a, t)


def inverse_normal_param(double a, double t):
    return _inverse_normal(a, t)


def advance_param(double a, double t, double r):
    return _advance(a, t, r)


def triple_advance_gap(double a, double t, double r):
    return _triple_gap(a, t, r)


def side_length(double a, double t, double lo, double hi):
    return _side(a, t, lo, hi)


def vr_out_degrees(double a, ts, double r, bint leq):
    cdef Py_ssize_t n = len(ts)
    cdef Py_ssize_t i, j, k
    cdef double ti, xi, yi, tj, dx, dy, d
    cdef double *buf
    cdef list out = [0] * n
    if n == 0:
        return out
    buf = <double *> malloc(n * sizeof(double))
    if buf == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            buf[i] = <double> ts[i]
        for i in range(n):
            ti = buf[i]
            xi = a * cos(ti)
            yi = sin(ti)
            k = 0
            while k < n - 1:
                j = i + k + 1
                if j >= n:
                    j -= n
                tj = buf[j]
                dx = a * cos(tj) - xi
                dy = sin(tj) - yi
                d = sqrt(dx * dx + dy * dy)
                if (d <= r) if leq else (d < r):
                    k += 1
                else:
                    break
            out[i] = k
    finally:
        free(buf)
    return out
