"""Input coercion and parameter checks shared by the estimator and CLI."""

import numbers

import numpy as np
import scipy.sparse as sp

from .graph import Digraph, build_digraph

__all__ = ["check_digraph", "check_digraphs", "check_choice", "check_positive_int"]


def check_digraph(X):
    """Coerce ``X`` to a :class:`Digraph`.

    Accepts a Digraph, a square adjacency matrix (dense or scipy sparse;
    nonzero entries are arcs), or an ``(n, arcs)`` pair.
    """
    if isinstance(X, Digraph):
        return X
    if isinstance(X, tuple) and len(X) == 2 and isinstance(X[0], numbers.Integral):
        return build_digraph(int(X[0]), X[1])
    if sp.issparse(X):
        if X.ndim != 2 or X.shape[0] != X.shape[1]:
            raise ValueError(f"adjacency matrix must be square, got shape {X.shape}")
        coo = sp.coo_matrix(X)
        keep = coo.data != 0
        arcs = np.column_stack([coo.row[keep], coo.col[keep]])
        return build_digraph(X.shape[0], arcs)
    A = np.asarray(X)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a Digraph or square adjacency matrix, got shape {A.shape}")
    return build_digraph(A.shape[0], np.argwhere(A != 0))


def check_digraphs(X):
    """Coerce a single graph or an iterable of graphs to a list of Digraphs."""
    if isinstance(X, (Digraph, tuple)) or sp.issparse(X) or (
            isinstance(X, np.ndarray) and X.ndim == 2):
        return [check_digraph(X)]
    return [check_digraph(x) for x in X]


def check_choice(name, value, choices):
    if value not in choices:
        raise ValueError(f"{name} must be one of {tuple(choices)}, got {value!r}")
    return value


def check_positive_int(name, value, allow_none=False):
    if value is None and allow_none:
        return None
    if not isinstance(value, numbers.Integral) or isinstance(value, bool) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return int(value)
