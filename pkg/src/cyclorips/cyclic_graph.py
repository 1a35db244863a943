"""Finite cyclic graphs: validation, dismantling, winding fraction, homotopy type.

A cyclic graph is stored as cyclically sorted vertex positions plus, per
vertex, the length of its contiguous clockwise out-run. This representation
makes the defining arc condition structural: vertex i has directed edges to
the next out_degree[i] vertices clockwise, and closure of the edge set under
clockwise shadowing is equivalent to out_degree[(i+1) % n] >= out_degree[i] - 1.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InternalConsistencyError, ParameterError

_WINDING_TOL = 1e-9


@dataclass(frozen=True)
class CyclicGraph:
    positions: tuple[float, ...]
    out_degree: tuple[int, ...]

    def __init__(self, positions, out_degree):
        object.__setattr__(self, "positions", tuple(float(p) for p in positions))
        object.__setattr__(self, "out_degree", tuple(int(k) for k in out_degree))
        if len(self.positions) != len(self.out_degree):
            raise ParameterError("positions and out_degree length mismatch")

    @property
    def n(self) -> int:
        return len(self.positions)

    def has_edge(self, i: int, j: int) -> bool:
        n = self.n
        return i != j and (j - i) % n <= self.out_degree[i]

    def undirected_adjacency(self) -> list:
        """Adjacency sets of the underlying undirected graph."""
        n = self.n
        adj = [set() for _ in range(n)]
        for i in range(n):
            for t in range(1, self.out_degree[i] + 1):
                j = (i + t) % n
                adj[i].add(j)
                adj[j].add(i)
        return adj

    def to_json(self) -> dict:
        return {"positions": list(self.positions), "out_degree": list(self.out_degree)}

    @classmethod
    def from_json(cls, obj: dict) -> "CyclicGraph":
        try:
            return cls(obj["positions"], obj["out_degree"])
        except (KeyError, TypeError) as exc:
            raise ParameterError(f"malformed cyclic graph object: {exc}") from exc


@dataclass(frozen=True)
class HomotopyType:
    """Symbolic homotopy type of a clique complex: S^{2l+1}, a wedge of
    2l-spheres, or a point."""

    kind: str  # "point" | "odd_sphere" | "even_wedge"
    level: int = 0  # the l in S^{2l+1} resp. wedge of S^{2l}
    count: int = 0  # number of wedge summands (even_wedge only)

    @staticmethod
    def point() -> "HomotopyType":
        return HomotopyType("point", 0, 0)

    @staticmethod
    def odd_sphere(level: int) -> "HomotopyType":
        return HomotopyType("odd_sphere", level, 0)

    @staticmethod
    def even_wedge(count: int, level: int) -> "HomotopyType":
        if count < 0:
            raise ParameterError("wedge count must be >= 0")
        if count == 0:
            return HomotopyType.point()
        return HomotopyType("even_wedge", level, count)

    @property
    def sphere_dim(self) -> int:
        if self.kind == "odd_sphere":
            return 2 * self.level + 1
        if self.kind == "even_wedge":
            return 2 * self.level
        raise ParameterError("a point has no sphere dimension")

    def betti(self, max_dim: int) -> list[int]:
        """Unreduced Betti numbers in dimensions 0..max_dim."""
        b = [0] * (max_dim + 1)
        if self.kind == "point":
            b[0] = 1
        elif self.kind == "odd_sphere":
            b[0] = 1
            if self.sphere_dim <= max_dim:
                b[self.sphere_dim] = 1
        else:
            if self.level == 0:
                b[0] = self.count + 1  # wedge of 0-spheres: count+1 points
            else:
                b[0] = 1
                if self.sphere_dim <= max_dim:
                    b[self.sphere_dim] = self.count
        return b

    def to_json(self) -> dict:
        if self.kind == "point":
            return {"type": "point"}
        if self.kind == "odd_sphere":
            return {"type": "sphere", "dim": self.sphere_dim}
        return {"type": "wedge", "count": self.count, "sphere_dim": self.sphere_dim}

    def __str__(self) -> str:
        if self.kind == "point":
            return "point"
        if self.kind == "odd_sphere":
            return f"S^{self.sphere_dim}"
        return f"wedge^{self.count} S^{self.sphere_dim}"


def regular(n: int, k: int) -> CyclicGraph:
    """The regular cyclic graph on n vertices at positions i/n, each pointing
    to the next k vertices clockwise. Requires 0 <= k < n/2."""
    if n < 1 or k < 0 or 2 * k >= n:
        raise ParameterError(f"regular cyclic graph needs 0 <= k < n/2, got n={n}, k={k}")
    return CyclicGraph(tuple(i / n for i in range(n)), (k,) * n)


def validate(g: CyclicGraph) -> bool:
    """Check all representation invariants: sorted positions, cyclic closure,
    no self-loops, no 2-cycles."""
    n = g.n
    pos, od = g.positions, g.out_degree
    for i in range(n):
        if not (0.0 <= pos[i] < 1.0):
            return False
        if i > 0 and pos[i] <= pos[i - 1]:
            return False
        if not 0 <= od[i] < n:
            return False
    if n == 0:
        return True
    for i in range(n):
        if od[(i + 1) % n] < od[i] - 1:
            return False
    # 2-cycle check: od[i+t] + t is non-decreasing in t along i's out-run
    # (closure holds at this point), so only the farthest neighbor can close
    # a 2-cycle back onto i.
    for i in range(n):
        k = od[i]
        if k >= 1 and od[(i + k) % n] + k >= n:
            return False
    return True


def _require_valid(g: CyclicGraph) -> None:
    if not validate(g):
        raise ParameterError("not a valid cyclic graph")


def in_neighbors(g: CyclicGraph, i: int) -> set:
    """Open in-neighborhood of vertex i (set of vertex indices)."""
    n = g.n
    return {j for j in range(n) if j != i and (i - j) % n <= g.out_degree[j]}


def is_dominated(g: CyclicGraph, i: int) -> bool:
    """Vertex i is dominated by its clockwise successor when the successor's
    open in-neighborhood equals i's closed in-neighborhood.

    Deliberately implemented straight from the definition with explicit sets;
    the dismantling loop uses an equivalent O(1) in-degree criterion and the
    two are cross-checked in tests.
    """
    n = g.n
    if n < 2:
        return False
    succ = (i + 1) % n
    return in_neighbors(g, succ) == in_neighbors(g, i) | {i}


def dismantle(g: CyclicGraph) -> tuple:
    """Remove all currently dominated vertices, in simultaneous rounds, until
    none remain.

    Returns (core, rounds) where rounds is a tuple of frozensets of original
    vertex indices, one per round. Domination by the clockwise successor means
    the successor's open in-neighborhood equals the vertex's closed one; both
    are contiguous runs ending at the vertex, so the criterion reduces to an
    in-degree comparison (in_degree[i+1] == in_degree[i] + 1 with the edge
    i -> i+1 present), cross-checked against the set-based is_dominated in
    tests. The core of a valid finite cyclic graph is always some regular
    graph; a non-regular fixed point would contradict the dismantling theorem
    and raises InternalConsistencyError. Round contents are reported for
    diagnostics only (no canonicity claim).
    """
    _require_valid(g)
    pos = np.asarray(g.positions, dtype=np.float64)
    od = np.asarray(g.out_degree, dtype=np.int64)
    orig = np.arange(g.n, dtype=np.int64)
    rounds = []
    while od.size >= 2:
        n = od.size
        # in-degrees by circular difference array: j covers j+1 .. j+od[j]
        diff = np.zeros(n + 1, dtype=np.int64)
        j = np.flatnonzero(od > 0)
        e = j + od[j]
        np.add.at(diff, j + 1, 1)
        np.add.at(diff, np.minimum(e, n - 1) + 1, -1)
        wrapped = e >= n
        if wrapped.any():
            diff[0] += int(wrapped.sum())
            np.add.at(diff, e[wrapped] - n + 1, -1)
        b = np.cumsum(diff[:n])
        dom = (od >= 1) & (np.roll(b, -1) == b + 1)
        if not dom.any():
            break
        if dom.all():
            raise InternalConsistencyError("a dismantling round removed every vertex")
        rounds.append(frozenset(orig[dom].tolist()))
        keep = np.flatnonzero(~dom)
        prefix = np.cumsum(~dom)  # prefix[x] = number of survivors <= x
        run_end = keep + od[keep]
        direct = prefix[np.minimum(run_end, n - 1)] - prefix[keep]
        wrap_cnt = (prefix[n - 1] - prefix[keep]) + prefix[np.clip(run_end - n, 0, n - 1)]
        od = np.where(run_end < n, direct, wrap_cnt)
        pos = pos[keep]
        orig = orig[keep]
    return CyclicGraph(pos.tolist(), od.tolist()), tuple(rounds)


def induced(g: CyclicGraph, vertices) -> CyclicGraph:
    """Induced subgraph on the given vertex indices (a cyclic graph again)."""
    n = g.n
    keep = sorted(set(vertices))
    if any(v < 0 or v >= n for v in keep):
        raise ParameterError("vertex index out of range")
    new_od = []
    for v in keep:
        e = v + g.out_degree[v]
        if e < n:
            cnt = bisect_right(keep, e) - bisect_right(keep, v)
        else:
            cnt = (len(keep) - bisect_right(keep, v)) + bisect_right(keep, e - n)
        new_od.append(cnt)
    return CyclicGraph([g.positions[v] for v in keep], new_od)


def _orbit_invariants_fast(g: CyclicGraph) -> tuple:
    """(length, winding) of the single orbit reached from vertex 0 by greedy
    iteration; O(n). Used as the dynamics-side cross-check of the dismantled
    winding fraction."""
    n = g.n
    od = g.out_degree
    pos = g.positions
    v = 0
    for _ in range(n):
        v = (v + od[v]) % n if od[v] else v
    start = v
    length = 0
    winding = 0.0
    while True:
        w = (v + od[v]) % n if od[v] else v
        winding += (pos[w] - pos[v]) % 1.0
        length += 1
        v = w
        if v == start:
            break
    w_int = round(winding)
    if abs(winding - w_int) > _WINDING_TOL:
        raise InternalConsistencyError(f"orbit winding {winding} is not an integer")
    return length, w_int


def winding_fraction(g: CyclicGraph) -> Fraction:
    """Exact winding fraction k/n of the dismantled core, cross-checked
    against the dynamics invariant winding/length on the original graph."""
    core, _ = dismantle(g)
    if core.n == 0:
        return Fraction(0, 1)
    k = core.out_degree[0]
    if any(d != k for d in core.out_degree):
        raise InternalConsistencyError("dismantled core is not a regular cyclic graph")
    wf = Fraction(k, core.n)
    length, winding = _orbit_invariants_fast(g)
    if Fraction(winding, length) != wf:
        raise InternalConsistencyError(
            f"dismantling gives wf={wf} but dynamics gives {winding}/{length}"
        )
    return wf


def homotopy_type(g: CyclicGraph) -> HomotopyType:
    """Homotopy type of the clique complex, by exact case analysis on the
    winding fraction; wedge counts come from the periodic orbit count."""
    if g.n == 0:
        return HomotopyType.point()
    wf = winding_fraction(g)
    p, q = wf.numerator, wf.denominator
    level = p // (q - 2 * p)
    if Fraction(level, 2 * level + 1) == wf:
        from .dynamics import periodic_orbits  # deferred: dynamics imports this module

        report = periodic_orbits(g)
        return HomotopyType.even_wedge(report.count - 1, level)
    return HomotopyType.odd_sphere(level)
