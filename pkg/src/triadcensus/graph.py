"""Immutable CRS digraph with out-arc rows and undirected neighbour rows."""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import ScratchCapacityError, VertexRangeError

__all__ = [
    "CrsAdjacency",
    "Digraph",
    "build_digraph",
    "is_edge",
    "is_neighbour",
    "neighbour_set_union",
    "degree_stats",
]


@dataclass(frozen=True, eq=False)
class CrsAdjacency:
    """Row offsets plus a flat column array; each row sorted and duplicate-free."""

    row_offsets: np.ndarray
    columns: np.ndarray

    @property
    def n_rows(self):
        return self.row_offsets.shape[0] - 1

    def row(self, u):
        return self.columns[self.row_offsets[u]:self.row_offsets[u + 1]]

    def degrees(self):
        return np.diff(self.row_offsets)

    def __eq__(self, other):
        if not isinstance(other, CrsAdjacency):
            return NotImplemented
        return (np.array_equal(self.row_offsets, other.row_offsets)
                and np.array_equal(self.columns, other.columns))

    @classmethod
    def from_sorted_pairs(cls, n, src, dst):
        """Build from pairs already sorted by (src, dst) and deduplicated."""
        counts = np.bincount(src, minlength=n) if n else np.zeros(0, np.int64)
        offsets = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=offsets[1:])
        return cls(offsets, np.ascontiguousarray(dst, dtype=np.int64))


@dataclass(frozen=True, eq=False)
class Digraph:
    """A strict digraph on vertices ``0 .. n-1``.

    ``out_arcs`` holds the arcs u->v; ``neighbours`` holds the symmetric open
    neighbourhoods. Both are read-only after construction. ``dropped_loops``
    and ``dropped_duplicates`` record what sanitizing removed from the input.
    """

    n: int
    out_arcs: CrsAdjacency
    neighbours: CrsAdjacency
    dropped_loops: int = field(default=0, compare=False)
    dropped_duplicates: int = field(default=0, compare=False)

    @property
    def m(self):
        return int(self.out_arcs.row_offsets[-1])

    def arcs(self):
        """All arcs as an ``(m, 2)`` array in CRS order."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.out_arcs.degrees())
        return np.column_stack([src, self.out_arcs.columns])

    def out_degree(self, u):
        return int(self.out_arcs.row_offsets[u + 1] - self.out_arcs.row_offsets[u])

    def same_structure(self, other):
        return (self.n == other.n and self.out_arcs == other.out_arcs
                and self.neighbours == other.neighbours)

    def __repr__(self):
        return f"Digraph(n={self.n}, m={self.m})"


def _freeze(*arrays):
    for a in arrays:
        a.flags.writeable = False


def _sorted_unique_pairs(n, src, dst):
    """Sort pairs lexicographically and drop repeats via a single int64 key."""
    if src.size == 0:
        return src, dst
    keys = np.unique(src * np.int64(n) + dst)
    return keys // n, keys % n


def out_arc_crs(n, arcs):
    """Sanitize raw arcs into sorted out-arc CRS.

    Returns ``(crs, dropped_loops, dropped_duplicates)``.
    """
    arcs = np.asarray(arcs, dtype=np.int64).reshape(-1, 2)
    if n < 0:
        raise ValueError(f"vertex count must be non-negative, got {n}")
    if arcs.size:
        bad = np.flatnonzero((arcs < 0).any(axis=1) | (arcs >= n).any(axis=1))
        if bad.size:
            u, v = arcs[bad[0]]
            raise VertexRangeError(
                f"arc ({u}, {v}) at position {bad[0]} is outside vertex range [0, {n})")
    src, dst = arcs[:, 0], arcs[:, 1]
    loops = src == dst
    n_loops = int(loops.sum())
    src, dst = src[~loops], dst[~loops]
    before = src.size
    src, dst = _sorted_unique_pairs(n, src, dst)
    return CrsAdjacency.from_sorted_pairs(n, src, dst), n_loops, before - src.size


def neighbour_crs(out_arcs):
    """Symmetrize an out-arc CRS into open undirected neighbourhoods."""
    n = out_arcs.n_rows
    src = np.repeat(np.arange(n, dtype=np.int64), out_arcs.degrees())
    dst = out_arcs.columns
    both_src = np.concatenate([src, dst])
    both_dst = np.concatenate([dst, src])
    s, d = _sorted_unique_pairs(n, both_src, both_dst)
    return CrsAdjacency.from_sorted_pairs(n, s, d)


def assemble(n, out_arcs, neighbours, dropped_loops=0, dropped_duplicates=0):
    _freeze(out_arcs.row_offsets, out_arcs.columns,
            neighbours.row_offsets, neighbours.columns)
    return Digraph(n, out_arcs, neighbours, dropped_loops, dropped_duplicates)


def build_digraph(n, arcs):
    """Build a :class:`Digraph` from ``n`` and a sequence of ``(u, v)`` arcs.

    Self-loops and duplicate arcs are dropped and counted on the result.

    Raises
    ------
    VertexRangeError
        If an endpoint is negative or ``>= n``.
    """
    out, loops, dups = out_arc_crs(int(n), arcs)
    return assemble(int(n), out, neighbour_crs(out), loops, dups)


def _check_vertex(g, *vs):
    for x in vs:
        if not 0 <= x < g.n:
            raise VertexRangeError(f"vertex {x} outside [0, {g.n})")


def is_edge(g, u, v):
    """True iff the arc ``u -> v`` is present (binary search on row ``u``)."""
    _check_vertex(g, u, v)
    return bool(_kernels.row_contains(g.out_arcs.row_offsets, g.out_arcs.columns, u, v))


def is_neighbour(g, u, v):
    """True iff ``u`` and ``v`` are joined by an arc in either direction."""
    _check_vertex(g, u, v)
    return bool(_kernels.row_contains(g.neighbours.row_offsets, g.neighbours.columns, u, v))


def neighbour_set_union(g, u, v, scratch):
    """Write ``S = N(u) | N(v) - {u, v}`` sorted into ``scratch``; return ``|S|``."""
    _check_vertex(g, u, v)
    if scratch.dtype != np.int64:
        raise TypeError("scratch buffer must be int64")
    k = _kernels.union_into(g.neighbours.row_offsets, g.neighbours.columns, u, v, scratch)
    if k < 0:
        raise ScratchCapacityError(
            f"scratch of length {scratch.shape[0]} too small for S({u}, {v})")
    return int(k)


def degree_stats(g):
    """Return ``(max undirected degree, mean undirected degree, arc count)``."""
    if g.n == 0:
        return 0, 0.0, g.m
    deg = g.neighbours.degrees()
    return int(deg.max()), float(deg.sum()) / g.n, g.m
