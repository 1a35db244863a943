"""Numeric kernel backend selection.

Imports the compiled Cython kernels when available, falling back to the pure
Python twin. Set ``CYCLORIPS_PURE=1`` to force the fallback (used by the
benchmark and the backend-parity tests).
"""

from __future__ import annotations

import os

if os.environ.get("CYCLORIPS_PURE"):
    from . import _pure as _impl

    BACKEND = "pure"
else:
    try:
        from . import _compiled as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _pure as _impl

        BACKEND = "pure"

PI = 3.141592653589793
TWO_PI = 6.283185307179586
HALF_PI = 1.5707963267948966

norm_angle = _impl.norm_angle
angle_gap = _impl.angle_gap
ellipse_xy = _impl.ellipse_xy
chord = _impl.chord
normal_second_param = _impl.normal_second_param
inverse_normal_param = _impl.inverse_normal_param
advance_param = _impl.advance_param
triple_advance_gap = _impl.triple_advance_gap
side_length = _impl.side_length
vr_out_degrees = _impl.vr_out_degrees

__all__ = [
    "BACKEND",
    "PI",
    "TWO_PI",
    "HALF_PI",
    "norm_angle",
    "angle_gap",
    "ellipse_xy",
    "chord",
    "normal_second_param",
    "inverse_normal_param",
    "advance_param",
    "triple_advance_gap",
    "side_length",
    "vr_out_degrees",
]
