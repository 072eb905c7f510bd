"""Triad codes, the 64 -> 16 isomorphism classifier, and census routines."""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
import math

import numpy as np

from . import _kernels
from .errors import CensusOverflowError, ConsistencyError, ScratchCapacityError
from .graph import is_edge

__all__ = [
    "ISO16",
    "NONISO64",
    "CLASS_LABELS",
    "TriadClassifier",
    "CensusArray",
    "DyadInfo",
    "derive_classifier",
    "triad_code",
    "census_sequential",
    "census_bruteforce",
    "null_count",
]

ISO16 = "iso16"
NONISO64 = "noniso64"
MODES = (ISO16, NONISO64)

UINT64_MAX = 2**64 - 1

CLASS_LABELS = (
    "003", "012", "102", "021D", "021U", "021C", "111D", "111U",
    "030T", "030C", "201", "120D", "120U", "120C", "210", "300",
)

# Arc (tail, head) over triad positions u=0, v=1, w=2, in bit-weight order.
_ARC_BITS = ((0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1))

# One member of each orientation-ambiguous class on positions A=0, B=1, C=2.
_REPRESENTATIVES = {
    "021D": ((1, 0), (1, 2)),
    "021U": ((0, 1), (2, 1)),
    "021C": ((0, 1), (1, 2)),
    "111D": ((0, 1), (1, 0), (2, 0)),
    "111U": ((0, 1), (1, 0), (0, 2)),
    "030T": ((0, 1), (0, 2), (1, 2)),
    "030C": ((0, 1), (1, 2), (2, 0)),
    "120D": ((0, 1), (1, 0), (2, 0), (2, 1)),
    "120U": ((0, 1), (1, 0), (0, 2), (1, 2)),
    "120C": ((0, 1), (1, 0), (0, 2), (2, 1)),
    "210": ((0, 1), (1, 0), (0, 2), (2, 0), (1, 2)),
}


def code_of_arcs(arcs):
    """6-bit triad code of a set of (tail, head) position pairs."""
    return sum(1 << _ARC_BITS.index(a) for a in arcs)


def arcs_of_code(code):
    return [a for bit, a in enumerate(_ARC_BITS) if code >> bit & 1]


def permute_code(code, perm):
    """Relabel positions of ``code``: position ``i`` becomes ``perm[i]``."""
    return code_of_arcs((perm[a], perm[b]) for a, b in arcs_of_code(code))


def man_label(code):
    """Mutual/asymmetric/null dyad counts as the 3-digit MAN prefix."""
    arcs = set(arcs_of_code(code))
    mutual = asym = 0
    for a, b in ((0, 1), (0, 2), (1, 2)):
        k = ((a, b) in arcs) + ((b, a) in arcs)
        mutual += k == 2
        asym += k == 1
    return f"{mutual}{asym}{3 - mutual - asym}"


@dataclass(frozen=True, eq=False)
class TriadClassifier:
    """Lookup from a triad code (0..63) to its isomorphism class (1..16).

    Attributes
    ----------
    table : ndarray of shape (64,)
        1-based class index for every code.
    class_labels : tuple of str
        MAN labels in class order.
    class_sizes : ndarray of shape (16,)
        Number of codes in each class.
    """

    table: np.ndarray
    class_labels: tuple
    class_sizes: np.ndarray

    def label(self, class_index):
        return self.class_labels[class_index - 1]

    def code_label(self, code):
        return self.class_labels[self.table[code] - 1]

    def kernel_tables(self, mode):
        """Counter-index lookups consumed by the compiled kernels.

        Returns ``(table, table_mid, labeled)``. ``table`` maps the code of
        ``(u, v, w)`` to a 0-based counter; ``table_mid`` does the same for
        ``u < w < v``, where the 64-code census needs positions v and w
        swapped so that every triple is coded in ascending vertex order.
        """
        if mode == ISO16:
            table = np.ascontiguousarray(self.table - 1, dtype=np.int64)
            return table, table, False
        if mode == NONISO64:
            table = np.arange(64, dtype=np.int64)
            table_mid = np.array([permute_code(c, (0, 2, 1)) for c in range(64)],
                                 dtype=np.int64)
            return table, table_mid, True
        raise ValueError(f"unknown census mode {mode!r}")


@lru_cache(maxsize=None)
def derive_classifier():
    """Partition the 64 triad codes into orbits under the 6 relabelings."""
    orbit_of = {}
    orbits = []
    for code in range(64):
        if code in orbit_of:
            continue
        orbit = frozenset(permute_code(code, p) for p in permutations(range(3)))
        for c in orbit:
            orbit_of[c] = len(orbits)
        orbits.append(orbit)
    if len(orbits) != 16:
        raise ConsistencyError(f"expected 16 triad orbits, found {len(orbits)}")

    by_label = {}
    for label, arcs in _REPRESENTATIVES.items():
        by_label[label] = orbit_of[code_of_arcs(arcs)]
    claimed = set(by_label.values())
    for i, orbit in enumerate(orbits):
        if i in claimed:
            continue
        label = man_label(min(orbit))
        if label in by_label:
            raise ConsistencyError(f"MAN label {label} is ambiguous")
        by_label[label] = i

    table = np.zeros(64, dtype=np.int64)
    sizes = np.zeros(16, dtype=np.int64)
    for cls, label in enumerate(CLASS_LABELS, start=1):
        orbit = orbits[by_label[label]]
        if any(man_label(c) != label[:3] for c in orbit):
            raise ConsistencyError(f"representative for {label} has wrong MAN counts")
        for c in orbit:
            table[c] = cls
        sizes[cls - 1] = len(orbit)
    table.flags.writeable = False
    sizes.flags.writeable = False
    return TriadClassifier(table, CLASS_LABELS, sizes)


@dataclass(eq=False)
class CensusArray:
    """Triad frequencies: 16 isomorphism classes or 64 raw triad codes."""

    counts: np.ndarray
    mode: str = ISO16

    def __post_init__(self):
        self.counts = np.asarray(self.counts, dtype=np.uint64)
        expected = 16 if self.mode == ISO16 else 64
        if self.mode not in MODES or self.counts.shape != (expected,):
            raise ValueError(f"mode {self.mode!r} needs {expected} counters, "
                             f"got shape {self.counts.shape}")

    @classmethod
    def zeros(cls, mode=ISO16):
        return cls(np.zeros(16 if mode == ISO16 else 64, dtype=np.uint64), mode)

    def total(self):
        return sum(int(c) for c in self.counts)

    def __len__(self):
        return self.counts.shape[0]

    def __getitem__(self, key):
        """Index by 1-based class/code number or by MAN label (iso mode)."""
        if isinstance(key, str):
            return int(self.counts[CLASS_LABELS.index(key)])
        return int(self.counts[key - 1])

    def __eq__(self, other):
        if not isinstance(other, CensusArray):
            return NotImplemented
        return self.mode == other.mode and np.array_equal(self.counts, other.counts)

    def fold(self, classifier=None):
        """Collapse a 64-code census onto the 16 isomorphism classes."""
        if self.mode == ISO16:
            return self
        classifier = classifier or derive_classifier()
        out = np.zeros(16, dtype=np.uint64)
        np.add.at(out, classifier.table - 1, self.counts)
        return CensusArray(out, ISO16)

    def labels(self, classifier=None):
        classifier = classifier or derive_classifier()
        if self.mode == ISO16:
            return list(classifier.class_labels)
        return [classifier.code_label(c) for c in range(64)]

    def as_dict(self):
        return {lbl if self.mode == ISO16 else i + 1: int(c)
                for i, (lbl, c) in enumerate(zip(self.labels(), self.counts))}

    def __repr__(self):
        return f"CensusArray(mode={self.mode!r}, counts={self.counts.tolist()})"


@dataclass(frozen=True)
class DyadInfo:
    """Arc presence for an ordered dyad, precomputed once per task."""

    edge_uv: int
    edge_vu: int

    @property
    def pre_type(self):
        return self.edge_uv + 2 * self.edge_vu

    @classmethod
    def of(cls, g, u, v):
        return cls(int(is_edge(g, u, v)), int(is_edge(g, v, u)))


def triad_code(g, u, v, w, pre, classifier=None, mode=ISO16, probe=is_edge):
    """Class index (iso16, 1..16) or code + 1 (noniso64, 1..64) of ``(u, v, w)``.

    ``pre`` supplies the u<->v arcs, so only the four arcs touching ``w`` are
    probed through ``probe``.
    """
    code = pre.pre_type
    code += 4 * probe(g, u, w)
    code += 8 * probe(g, w, u)
    code += 16 * probe(g, v, w)
    code += 32 * probe(g, w, v)
    if mode == ISO16:
        return int((classifier or derive_classifier()).table[code])
    return code + 1


def null_count(n, non_null_sum):
    """``C(n, 3) - non_null_sum`` with 64-bit range and consistency checks."""
    total = math.comb(n, 3) if n >= 3 else 0
    if total > UINT64_MAX:
        raise CensusOverflowError(
            f"C({n}, 3) = {total} does not fit in an unsigned 64-bit counter")
    if non_null_sum > total:
        raise ConsistencyError(
            f"non-null triads ({non_null_sum}) exceed C({n}, 3) = {total}")
    return total - non_null_sum


def close_census(n, counts, mode):
    """Fill the null-triad counter of a non-null census in place."""
    counts[0] = 0
    counts[0] = null_count(n, sum(int(c) for c in counts))
    return CensusArray(counts, mode)


def _graph_arrays(g):
    return (g.out_arcs.row_offsets, g.out_arcs.columns,
            g.neighbours.row_offsets, g.neighbours.columns)


def census_sequential(g, classifier=None, mode=ISO16, *, stats=None, precompute=True):
    """Subquadratic triad census of ``g``.

    Parameters
    ----------
    g : Digraph
    classifier : TriadClassifier, optional
    mode : {"iso16", "noniso64"}
    stats : ndarray of int64, optional
        If given, receives the instrumentation counters (dyads, triads, arc
        probes, non-null contributions), accumulated in place.
    precompute : bool
        Reuse the u<->v arcs when coding inner triads (4 probes per triad).
        ``False`` probes all 6 arcs and exists as a reference for the probe
        count.

    Returns
    -------
    CensusArray
    """
    classifier = classifier or derive_classifier()
    null_count(g.n, 0)
    table, table_mid, labeled = classifier.kernel_tables(mode)
    counts = np.zeros(16 if mode == ISO16 else 64, dtype=np.uint64)
    local_stats = np.zeros(_kernels.N_STATS, dtype=np.int64)
    max_deg = int(g.neighbours.degrees().max()) if g.n else 0
    scratch = np.empty(2 * max_deg, dtype=np.int64)
    rc = _kernels.census_graph(g.n, *_graph_arrays(g), table, table_mid, labeled,
                               scratch, counts, precompute, local_stats)
    if rc < 0:
        raise ScratchCapacityError("neighbour set exceeded 2 * max degree")
    if stats is not None:
        stats += local_stats
    return close_census(g.n, counts, mode)


def census_bruteforce(g, classifier=None, mode=ISO16):
    """Classify every unordered vertex triple directly. O(n^3); oracle use only."""
    classifier = classifier or derive_classifier()
    arcs = {(int(u), int(v)) for u, v in g.arcs()}
    counts = np.zeros(16 if mode == ISO16 else 64, dtype=np.uint64)
    for u, v, w in combinations(range(g.n), 3):
        code = 0
        for bit, (a, b) in enumerate(((u, v), (v, u), (u, w), (w, u), (v, w), (w, v))):
            if (a, b) in arcs:
                code |= 1 << bit
        idx = classifier.table[code] - 1 if mode == ISO16 else code
        counts[idx] += 1
    return CensusArray(counts, mode)
