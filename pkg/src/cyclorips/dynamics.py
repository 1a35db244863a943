"""The discrete dynamical system attached to a finite cyclic graph.

f sends each vertex to the clockwise-most vertex of its closed out-run; its
periodic orbits all share one length and one winding number, whose ratio is
the winding fraction. Greedy f-iteration attains the supremum defining the
displacement gamma_m on finite graphs, so gamma_m is a plain cumulative sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .cyclic_graph import CyclicGraph, _require_valid, winding_fraction
from .errors import InternalConsistencyError, ParameterError

_WINDING_TOL = 1e-9


class VertexClass(Enum):
    PERIODIC = "periodic"
    FAST = "fast"
    SLOW = "slow"


@dataclass(frozen=True)
class OrbitReport:
    orbits: tuple  # tuple of tuples of vertex indices, each in f-iteration order
    length: int  # common orbit length
    winding: int  # common integer winding number
    count: int  # number of orbits

    @property
    def winding_fraction(self) -> Fraction:
        return Fraction(self.winding, self.length)

    def to_json(self) -> dict:
        return {
            "orbits": [list(o) for o in self.orbits],
            "length": self.length,
            "winding": self.winding,
            "count": self.count,
        }


def step(g: CyclicGraph, v: int) -> int:
    """One application of f: the far end of v's out-run (v itself if the run
    is empty)."""
    k = g.out_degree[v]
    return (v + k) % g.n if k else v


def gamma_m(g: CyclicGraph, v: int, m: int) -> float:
    """Cumulative clockwise distance along v, f(v), ..., f^m(v)."""
    _require_valid(g)
    pos = g.positions
    total = 0.0
    u = v
    for _ in range(m):
        w = step(g, u)
        total += (pos[w] - pos[u]) % 1.0
        u = w
    return total


def periodic_orbits(g: CyclicGraph) -> OrbitReport:
    """All periodic orbits of f, with their common length and winding number.

    Every vertex enters a cycle within n steps; graphs without a directed
    cycle degenerate to fixed points (length 1, winding 0). Disagreement of
    length or winding across orbits is an internal-consistency failure.
    """
    _require_valid(g)
    n = g.n
    if n == 0:
        raise ParameterError("empty graph has no dynamics")
    pos = g.positions
    nxt = [step(g, v) for v in range(n)]

    # functional-graph cycle detection: color 0 unvisited / 1 on current path
    # / 2 settled
    color = [0] * n
    orbit_vertices: list = []
    for v0 in range(n):
        if color[v0]:
            continue
        path = []
        v = v0
        while color[v] == 0:
            color[v] = 1
            path.append(v)
            v = nxt[v]
        if color[v] == 1:  # new cycle entered at v
            i = path.index(v)
            orbit_vertices.append(path[i:])
        for u in path:
            color[u] = 2

    orbits = []
    lengths = set()
    windings = set()
    for cyc in orbit_vertices:
        start = min(range(len(cyc)), key=lambda i: cyc[i])
        cyc = cyc[start:] + cyc[:start]
        w = 0.0
        for i, u in enumerate(cyc):
            v = cyc[(i + 1) % len(cyc)]
            w += (pos[v] - pos[u]) % 1.0
        w_int = round(w)
        if abs(w - w_int) > _WINDING_TOL:
            raise InternalConsistencyError(f"orbit winding {w} is not an integer")
        orbits.append(tuple(cyc))
        lengths.add(len(cyc))
        windings.add(w_int)
    if len(lengths) != 1 or len(windings) != 1:
        raise InternalConsistencyError(
            f"orbits disagree: lengths {sorted(lengths)}, windings {sorted(windings)}"
        )
    orbits.sort(key=lambda o: o[0])
    return OrbitReport(tuple(orbits), lengths.pop(), windings.pop(), len(orbits))


def classify_vertices(g: CyclicGraph) -> list:
    """Per-vertex class: periodic, fast (gamma_q > p), or slow (gamma_q <= p),
    where p/q is the reduced winding fraction."""
    wf = winding_fraction(g)
    p, q = wf.numerator, wf.denominator
    report = periodic_orbits(g)
    periodic = {v for orbit in report.orbits for v in orbit}
    out = []
    for v in range(g.n):
        if v in periodic:
            out.append(VertexClass.PERIODIC)
        elif gamma_m(g, v, q) > p:
            out.append(VertexClass.FAST)
        else:
            out.append(VertexClass.SLOW)
    return out


def is_cyclic_homomorphism(g: CyclicGraph, g_tilde: CyclicGraph, h) -> bool:
    """Check h (a vertex-index map) is a cyclic homomorphism g -> g_tilde:
    edges map to edges or collapse, the cyclic order is weakly preserved, and
    h is non-constant whenever g has a directed cycle."""
    n, m = g.n, g_tilde.n
    h = list(h)
    if len(h) != n or any(not 0 <= x < m for x in h):
        return False
    for v in range(n):
        for t in range(1, g.out_degree[v] + 1):
            u = (v + t) % n
            if h[v] != h[u] and not g_tilde.has_edge(h[v], h[u]):
                return False
    # weak order preservation: the image sequence winds exactly once (or is
    # constant); any backtrack forces an extra lap
    pos = g_tilde.positions
    img = [pos[h[v]] for v in range(n)]
    if len(set(img)) > 1:
        total = 0.0
        for i in range(n):
            total += (img[(i + 1) % n] - img[i]) % 1.0
        if abs(total - 1.0) > 1e-9:
            return False
    else:
        # constant map: forbidden when g has a directed cycle, i.e. any
        # periodic orbit with positive winding
        if periodic_orbits(g).winding > 0:
            return False
    return True


def orbits_hit(g: CyclicGraph, g_tilde: CyclicGraph, h) -> int:
    """Number of distinct periodic orbits of g_tilde reached by pushing each
    orbit of g through h and iterating the target dynamics to stabilization.

    Both graphs must have the same singular winding fraction l/(2l+1); the
    induced map on degree-2l homology with field coefficients then has rank
    orbits_hit - 1.
    """
    _require_valid(g)
    _require_valid(g_tilde)
    if not is_cyclic_homomorphism(g, g_tilde, h):
        raise ParameterError("h is not a cyclic homomorphism")
    wf = winding_fraction(g)
    wf_t = winding_fraction(g_tilde)
    if wf != wf_t:
        raise ParameterError(f"winding fractions differ: {wf} vs {wf_t}")
    p, q = wf.numerator, wf.denominator
    if q != 2 * p + 1:
        raise ParameterError(f"winding fraction {wf} is not singular (l/(2l+1))")

    report = periodic_orbits(g)
    report_t = periodic_orbits(g_tilde)
    orbit_sets_t = {frozenset(o): i for i, o in enumerate(report_t.orbits)}
    h = list(h)
    hit = set()
    for orbit in report.orbits:
        image = {h[v] for v in orbit}
        for _ in range(g_tilde.n):
            image = {step(g_tilde, v) for v in image}
        key = frozenset(image)
        if key not in orbit_sets_t:
            raise InternalConsistencyError(
                "image of an orbit did not stabilize onto a single target orbit"
            )
        hit.add(orbit_sets_t[key])
    return len(hit)
