"""Seeded synthetic digraphs: uniform random G(n, p) and power-law degree."""

import io

import numpy as np

__all__ = ["random_arcs", "powerlaw_arcs", "generate_synthetic"]

_CHUNK = 1 << 20


def random_arcs(n, p, seed=None):
    """Arcs of a directed G(n, p): every ordered pair ``u != v`` kept with prob ``p``.

    Success positions among the ``n * (n - 1)`` trials are generated by
    cumulating geometric gaps, so memory is proportional to the arc count.
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    trials = n * (n - 1)
    if trials == 0 or p == 0.0:
        return np.zeros((0, 2), dtype=np.int64)
    if p == 1.0:
        pos = np.arange(trials, dtype=np.int64)
    else:
        rng = np.random.default_rng(seed)
        expected = trials * p
        chunk = int(min(_CHUNK, expected + 6 * np.sqrt(expected) + 16))
        parts = []
        last = -1
        while last < trials:
            gaps = rng.geometric(p, size=chunk).astype(np.int64)
            chunk = last + np.cumsum(gaps)
            parts.append(chunk)
            last = int(chunk[-1])
        pos = np.concatenate(parts)
        pos = pos[pos < trials]
    u = pos // (n - 1)
    r = pos % (n - 1)
    return np.column_stack([u, r + (r >= u)])


def powerlaw_arcs(n, exponent=2.5, avg_degree=8.0, seed=None):
    """Arcs whose endpoints follow a power-law weight distribution.

    Vertex ``i`` has weight ``(i + 1) ** (-1 / (exponent - 1))``; roughly
    ``n * avg_degree / 2`` arcs are drawn with both endpoints sampled
    proportionally to weight (a Chung-Lu style model). Loops and repeats are
    left in for :func:`~triadcensus.graph.build_digraph` to sanitize.
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if exponent <= 2.0:
        raise ValueError(f"exponent must exceed 2, got {exponent}")
    if avg_degree < 0:
        raise ValueError(f"avg_degree must be non-negative, got {avg_degree}")
    m = int(round(n * avg_degree / 2))
    if n < 2 or m == 0:
        return np.zeros((0, 2), dtype=np.int64)
    rng = np.random.default_rng(seed)
    w = np.arange(1, n + 1, dtype=np.float64) ** (-1.0 / (exponent - 1.0))
    w /= w.sum()
    # shuffle ids so hubs are not all at low indices
    perm = rng.permutation(n)
    src = perm[rng.choice(n, size=m, p=w)]
    dst = perm[rng.choice(n, size=m, p=w)]
    return np.column_stack([src, dst]).astype(np.int64)


def generate_synthetic(n, model="uniform", *, p=0.01, exponent=2.5, avg_degree=8.0,
                       seed=0, stream=None):
    """SNAP-style edge-list text (0-based) for a seeded synthetic digraph."""
    if model == "uniform":
        arcs = random_arcs(n, p, seed)
    elif model == "powerlaw":
        arcs = powerlaw_arcs(n, exponent, avg_degree, seed)
    else:
        raise ValueError(f"unknown model {model!r}; expected 'uniform' or 'powerlaw'")
    out = stream or io.StringIO()
    if n > 0:
        out.write(f"# Nodes: {n} Edges: {arcs.shape[0]}\n")
    if arcs.shape[0]:
        np.savetxt(out, arcs, fmt="%d", delimiter=" ")
    if stream is None:
        return out.getvalue()
    return None
