"""The circle of unit circumference: positions, clockwise order, arcs.

Positions live in [0, 1); "clockwise" is the direction of increasing
coordinate. Everything here is exact float comparison on normalized
coordinates, no tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParameterError


class CyclePosition(float):
    """A point of the unit-circumference circle, normalized into [0, 1)."""

    def __new__(cls, coord: float) -> "CyclePosition":
        c = coord % 1.0
        if c >= 1.0 or c < 0.0:  # float wrap guard: (-1e-18) % 1.0 == 1.0
            c = 0.0
        return super().__new__(cls, c)

    @property
    def coord(self) -> float:
        return float(self)

    def __repr__(self) -> str:
        return f"CyclePosition({float(self)!r})"


def cw_dist(p: float, q: float) -> float:
    """Clockwise distance from p to q, in [0, 1)."""
    d = (float(q) - float(p)) % 1.0
    if d >= 1.0 or d < 0.0:
        d = 0.0
    return d


def in_cyclic_order(p: float, w: float, u: float, strict: bool = False) -> bool:
    """True iff p, w, u appear in clockwise order (p <= w <= u <= p cyclically).

    The strict variant additionally demands the three points be pairwise
    distinct.
    """
    if strict and (float(p) == float(w) or float(w) == float(u) or float(p) == float(u)):
        return False
    return cw_dist(p, w) <= cw_dist(p, u)


@dataclass(frozen=True)
class Arc:
    """Clockwise arc from start to end with open/closed endpoint flags.

    start == end with both endpoints closed denotes the single point;
    any other degenerate combination (which would denote the full circle or
    the full circle minus a point) is rejected.
    """

    start: CyclePosition
    end: CyclePosition
    start_closed: bool = True
    end_closed: bool = True

    def __post_init__(self) -> None:
        if float(self.start) == float(self.end) and not (self.start_closed and self.end_closed):
            raise ParameterError("degenerate full-circle arc")

    def complement(self) -> "Arc":
        return Arc(self.end, self.start, not self.end_closed, not self.start_closed)


def arc_contains(arc: Arc, z: float) -> bool:
    zf = float(z)
    s, e = float(arc.start), float(arc.end)
    if s == e:
        return zf == s
    if zf == s:
        return arc.start_closed
    if zf == e:
        return arc.end_closed
    return cw_dist(s, zf) < cw_dist(s, e)
