"""Pajek ``.net`` and SNAP edge-list readers.

Both parsers stream line by line into growable ``array('q')`` staging buffers
and produce an :class:`EdgeListDoc`; :func:`finalize` turns that into a
0-based :class:`~triadcensus.graph.Digraph`.
"""

from array import array
from dataclasses import dataclass, field
import io
import os

import numpy as np

from .errors import EmptyGraphError, ParseError, RecordRangeError
from .graph import assemble, build_digraph, neighbour_crs, out_arc_crs

__all__ = [
    "EdgeListDoc",
    "parse_pajek",
    "parse_edgelist",
    "finalize",
    "write_pajek",
    "write_edgelist",
    "detect_format",
    "read_graph",
]


@dataclass
class EdgeListDoc:
    """Parsed arcs in external ids, before base shifting.

    ``undirected_records`` counts ``*Edges`` records, each of which has
    already been expanded into two opposite arcs.
    """

    src: array = field(default_factory=lambda: array("q"))
    dst: array = field(default_factory=lambda: array("q"))
    declared_n: int | None = None
    index_base: int = 1
    undirected_records: int = 0

    def add(self, u, v):
        self.src.append(u)
        self.dst.append(v)

    @property
    def arcs(self):
        return list(zip(self.src, self.dst))

    def __len__(self):
        return len(self.src)


def _lines(source):
    if isinstance(source, str):
        return io.StringIO(source)
    return source


def _to_int(token, lineno):
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"vertex id {token!r} is not an integer", lineno) from None


def _check_pajek_id(x, doc, lineno):
    if x < 1 or (doc.declared_n is not None and x > doc.declared_n):
        upper = doc.declared_n if doc.declared_n is not None else "inf"
        raise RecordRangeError(f"vertex id {x} outside [1, {upper}]", lineno)


def parse_pajek(source):
    """Parse Pajek text (a string or an iterable of lines).

    Supports ``*Vertices N``, ``*Arcs``, ``*Edges``, ``*Arcslist`` and
    ``*Edgeslist``. Vertex label lines, tokens after the endpoint ids,
    blank lines and ``%`` comments are ignored.
    """
    doc = EdgeListDoc(index_base=1)
    section = None
    for lineno, raw in enumerate(_lines(source), start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        if line.startswith("*"):
            word, *rest = line[1:].split()
            keyword = word.lower()
            if keyword == "vertices":
                if not rest:
                    raise ParseError("*Vertices needs a vertex count", lineno)
                n = _to_int(rest[0], lineno)
                if n < 0:
                    raise ParseError(f"negative vertex count {n}", lineno)
                doc.declared_n = n
            elif keyword not in ("arcs", "edges", "arcslist", "edgeslist"):
                raise ParseError(f"unsupported Pajek section *{word}", lineno)
            section = keyword
            continue
        if section is None:
            raise ParseError("record before any section keyword", lineno)
        if section == "vertices":
            continue
        tokens = line.split()
        if section in ("arcs", "edges"):
            if len(tokens) < 2:
                raise ParseError("expected two vertex ids", lineno)
            ids = [_to_int(tokens[0], lineno), _to_int(tokens[1], lineno)]
        else:
            ids = [_to_int(t, lineno) for t in tokens]
        for x in ids:
            _check_pajek_id(x, doc, lineno)
        u = ids[0]
        for v in ids[1:]:
            doc.add(u, v)
            if section.startswith("edges"):
                doc.add(v, u)
                doc.undirected_records += 1
    return doc


def parse_edgelist(source, index_base=None):
    """Parse a SNAP-style edge list: ``u v`` per line, ``#`` comments.

    ``index_base`` defaults to auto-detection: 0 if any id is 0, else 1.
    """
    doc = EdgeListDoc()
    min_id = None
    for lineno, raw in enumerate(_lines(source), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(f"expected 2 vertex ids, found {len(tokens)} tokens", lineno)
        u, v = _to_int(tokens[0], lineno), _to_int(tokens[1], lineno)
        if u < 0 or v < 0:
            raise RecordRangeError(f"negative vertex id in ({u}, {v})", lineno)
        if index_base is not None and min(u, v) < index_base:
            raise RecordRangeError(
                f"vertex id {min(u, v)} below index base {index_base}", lineno)
        doc.add(u, v)
        m = min(u, v)
        min_id = m if min_id is None else min(min_id, m)
    if index_base is None:
        index_base = 0 if min_id == 0 else 1
    doc.index_base = index_base
    return doc


def _shifted_arcs(doc):
    src = np.frombuffer(doc.src, dtype=np.int64) if len(doc) else np.zeros(0, np.int64)
    dst = np.frombuffer(doc.dst, dtype=np.int64) if len(doc) else np.zeros(0, np.int64)
    return np.column_stack([src - doc.index_base, dst - doc.index_base])


def _order(doc):
    if doc.declared_n is not None:
        return doc.declared_n
    if not len(doc):
        raise EmptyGraphError("document has no arcs and no declared vertex count")
    return max(max(doc.src), max(doc.dst)) - doc.index_base + 1


def finalize(doc):
    """Convert a parsed document to a 0-based :class:`Digraph`."""
    return build_digraph(_order(doc), _shifted_arcs(doc))


def finalize_phases(doc):
    """Like :func:`finalize` but returns the out-arc and neighbour build steps.

    Returns ``(build_out, build_neighbours)`` callables so a caller can time
    the two halves separately; ``build_neighbours(out)`` yields the Digraph.
    """
    n = _order(doc)

    def build_out():
        return out_arc_crs(n, _shifted_arcs(doc))

    def build_neighbours(out):
        crs, loops, dups = out
        return assemble(n, crs, neighbour_crs(crs), loops, dups)

    return build_out, build_neighbours


def write_pajek(g, stream=None):
    """Serialize ``g`` as Pajek text (1-based ids). Returns the text if no stream."""
    out = stream or io.StringIO()
    out.write(f"*Vertices {g.n}\n*Arcs\n")
    for u, v in g.arcs():
        out.write(f"{u + 1} {v + 1}\n")
    if stream is None:
        return out.getvalue()
    return None


def write_edgelist(g, stream=None, index_base=0):
    out = stream or io.StringIO()
    for u, v in g.arcs():
        out.write(f"{u + index_base} {v + index_base}\n")
    if stream is None:
        return out.getvalue()
    return None


def detect_format(path):
    """``"pajek"`` if the first meaningful line starts with ``*``, else ``"edgelist"``."""
    with open(path, "r", encoding="utf-8", errors="replace") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("%"):
                continue
            return "pajek" if line.startswith("*") else "edgelist"
    return "edgelist"


def parse_file(path, fmt="auto", index_base=None):
    """Parse ``path`` into an :class:`EdgeListDoc`."""
    path = os.fspath(path)
    if fmt == "auto":
        fmt = detect_format(path)
    with open(path, "r", encoding="utf-8") as fh:
        if fmt == "pajek":
            doc = parse_pajek(fh)
            if index_base is not None and index_base != 1:
                raise ValueError("Pajek files are always 1-based")
            return doc
        if fmt == "edgelist":
            return parse_edgelist(fh, index_base=index_base)
    raise ValueError(f"unknown graph format {fmt!r}")


def read_graph(path, fmt="auto", index_base=None):
    """Read a graph file straight into a :class:`Digraph`."""
    return finalize(parse_file(path, fmt, index_base))
