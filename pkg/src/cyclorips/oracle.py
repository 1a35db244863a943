"""Brute-force homology ground truth over GF(2).

Clique-complex enumeration, Betti numbers by column-elimination rank, and
persistent homology by standard boundary-matrix reduction (processed top
dimension down, with clearing). Columns are Python integers used as bit sets,
so column addition is a single XOR.

betti_numbers and persistent_pairs deliberately share no reduction loop: the
first computes plain matrix ranks, the second runs the pairing algorithm, and
their agreement on trivial filtrations is a test invariant.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import inf

from .errors import ParameterError

SIMPLEX_CAP = 2_000_000


@dataclass(frozen=True)
class FilteredComplex:
    """Simplices as (sorted vertex tuple, filtration value, dimension), sorted
    by (filtration, dimension, vertices); faces never appear after cofaces."""

    simplices: tuple
    max_dim: int

    @staticmethod
    def build(entries) -> "FilteredComplex":
        simps = sorted((tuple(sorted(v)), float(f)) for v, f in entries)
        simps.sort(key=lambda e: (e[1], len(e[0]), e[0]))
        seen = set()
        out = []
        top = 0
        for verts, f in simps:
            if len(set(verts)) != len(verts):
                raise ParameterError(f"repeated vertex in simplex {verts}")
            if verts in seen:
                raise ParameterError(f"duplicate simplex {verts}")
            seen.add(verts)
            out.append((verts, f, len(verts) - 1))
            top = max(top, len(verts) - 1)
        return FilteredComplex(tuple(out), top)

    def counts(self) -> list:
        c = [0] * (self.max_dim + 1)
        for _, _, d in self.simplices:
            c[d] += 1
        return c


@dataclass(frozen=True)
class BettiVector:
    betti: tuple
    reduced: bool = False

    def to_json(self) -> dict:
        return {"betti": list(self.betti), "reduced": self.reduced}


def clique_complex(adjacency, max_dim: int, cap: int = SIMPLEX_CAP) -> FilteredComplex:
    """All cliques of size <= max_dim + 1 of an undirected graph given as
    adjacency sets, as a trivially filtered complex. Aborts past the simplex
    cap."""
    if max_dim > 4:
        raise ParameterError("dimension cap is 4")
    adj = [set(nb) for nb in adjacency]
    n = len(adj)
    entries = []
    level = [((v,), frozenset(w for w in adj[v] if w > v)) for v in range(n)]
    entries.extend((cl, 0.0) for cl, _ in level)
    for _ in range(max_dim):
        nxt = []
        for cl, cand in level:
            for w in sorted(cand):
                nxt.append((cl + (w,), frozenset(u for u in cand if u > w and u in adj[w])))
        entries.extend((cl, 0.0) for cl, _ in nxt)
        if len(entries) > cap:
            raise ParameterError(f"simplex cap {cap} exceeded")
        if not nxt:
            break
        level = nxt
    return FilteredComplex.build(entries)


def rips_filtration(dist, max_dim: int, cap: int = SIMPLEX_CAP) -> FilteredComplex:
    """Full flag filtration on a finite metric: every subset of size
    <= max_dim + 1 enters at its diameter."""
    n = len(dist)
    entries = [((v,), 0.0) for v in range(n)]
    for size in range(2, max_dim + 2):
        for comb in combinations(range(n), size):
            diam = max(dist[i][j] for i, j in combinations(comb, 2))
            entries.append((comb, diam))
        if len(entries) > cap:
            raise ParameterError(f"simplex cap {cap} exceeded")
    return FilteredComplex.build(entries)


def _rank_gf2(columns) -> int:
    pivot = {}
    rank = 0
    for col in columns:
        while col:
            low = col.bit_length() - 1
            other = pivot.get(low)
            if other is None:
                pivot[low] = col
                rank += 1
                break
            col ^= other
    return rank


def _boundary_columns(c: FilteredComplex, dim: int, row_rank: dict) -> list:
    cols = []
    for verts, _, d in c.simplices:
        if d != dim:
            continue
        col = 0
        for i in range(len(verts)):
            facet = verts[:i] + verts[i + 1 :]
            col |= 1 << row_rank[facet]
        cols.append(col)
    return cols


def _dim_ranks(c: FilteredComplex, dim: int) -> dict:
    """Row index (within the given dimension, in filtration order) per simplex."""
    out = {}
    for verts, _, d in c.simplices:
        if d == dim:
            out[verts] = len(out)
    return out


def betti_numbers(c: FilteredComplex, max_dim: int, reduced: bool = False) -> BettiVector:
    """Betti numbers over GF(2) in dimensions 0..max_dim, by rank-nullity.

    Correct through dimension d only when the complex contains all its
    simplices of dimension d+1 (clique_complex/rips_filtration built with a
    deep enough cap guarantee this).
    """
    counts = [0] * (max_dim + 2)
    for _, _, d in c.simplices:
        if d <= max_dim + 1:
            counts[d] += 1
    ranks = [0] * (max_dim + 2)
    for d in range(1, max_dim + 2):
        if counts[d]:
            try:
                rows = _dim_ranks(c, d - 1)
                ranks[d] = _rank_gf2(_boundary_columns(c, d, rows))
            except KeyError as exc:
                raise ParameterError(f"complex not closed under faces: missing {exc}") from exc
    betti = []
    for d in range(max_dim + 1):
        betti.append(counts[d] - ranks[d] - ranks[d + 1])
    if reduced and counts[0]:
        betti[0] -= 1
    return BettiVector(tuple(betti), reduced)


def persistent_pairs(c: FilteredComplex, max_dim: int) -> tuple:
    """Standard reduction of the filtration boundary matrix over GF(2).

    Returns (pairs, essentials): pairs are (dim, birth, death) including
    zero-length ones, essentials are (dim, birth) for classes that never die.
    Simplices of dimension > max_dim + 1 are irrelevant to homology through
    max_dim and are skipped; dimensions are processed top-down with clearing.
    """
    top = min(c.max_dim, max_dim + 1)
    by_dim = [[] for _ in range(top + 1)]
    filt = {}
    for verts, f, d in c.simplices:
        if d <= top:
            by_dim[d].append(verts)
            filt[verts] = f
    row_rank = [{v: i for i, v in enumerate(by_dim[d])} for d in range(top + 1)]

    pairs = []
    cleared = set()
    essentials = []
    for d in range(top, 0, -1):
        rows = row_rank[d - 1]
        row_list = by_dim[d - 1]
        low_to_col = {}
        for verts in by_dim[d]:
            if verts in cleared:
                continue
            col = 0
            for i in range(len(verts)):
                facet = verts[:i] + verts[i + 1 :]
                try:
                    col |= 1 << rows[facet]
                except KeyError as exc:
                    raise ParameterError(f"complex not closed under faces: missing {exc}") from exc
            while col:
                low = col.bit_length() - 1
                other = low_to_col.get(low)
                if other is None:
                    break
                col ^= other
            if col:
                low = col.bit_length() - 1
                low_to_col[low] = col
                birth_simplex = row_list[low]
                pairs.append((d - 1, filt[birth_simplex], filt[verts]))
                cleared.add(birth_simplex)
            elif d <= max_dim:
                essentials.append((d, filt[verts]))
    for verts in by_dim[0]:
        if verts not in cleared:
            essentials.append((0, filt[verts]))
    pairs.sort()
    essentials.sort()
    return pairs, essentials


def induced_rank(c_small: FilteredComplex, c_big: FilteredComplex, dim: int) -> int:
    """Rank of the inclusion-induced map on H_dim over GF(2), via a two-level
    filtration (small simplices at 0, the rest of the big complex at 1): the
    rank is the number of dim-classes born at level 0 that never die."""
    small = {verts for verts, _, _ in c_small.simplices}
    big = {verts for verts, _, _ in c_big.simplices}
    if not small <= big:
        raise ParameterError("first complex is not a subcomplex of the second")
    two_level = FilteredComplex.build(
        (verts, 0.0 if verts in small else 1.0) for verts in big
    )
    _, essentials = persistent_pairs(two_level, dim)
    return sum(1 for d, birth in essentials if d == dim and birth == 0.0)
