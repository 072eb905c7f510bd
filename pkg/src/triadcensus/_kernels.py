"""Compiled inner loops.

All kernels take raw CRS arrays (``int64`` offsets and columns) rather than
Python objects so they can run with the GIL released. Census counters are
``uint64``. Instrumentation counters live in a small ``int64`` array:

    stats[0]  dyads processed
    stats[1]  connected triads classified in the inner loop
    stats[2]  arc probes (every call to ``is_edge``)
    stats[3]  non-null contributions (dyadic + connected triads)
"""

import numpy as np
from numba import njit, types
from numba.core import cgutils
from numba.extending import intrinsic

STAT_DYADS = 0
STAT_TRIADS = 1
STAT_EDGE_PROBES = 2
STAT_CONTRIB = 3
N_STATS = 4


@intrinsic
def atomic_add(typingctx, arr, idx, val):
    """``arr[idx] += val`` as a single atomic read-modify-write."""
    if not isinstance(arr, types.Array) or not isinstance(arr.dtype, types.Integer):
        return None
    sig = types.void(arr, idx, val)

    def codegen(context, builder, signature, args):
        aryty, _, valty = signature.args
        ary = context.make_array(aryty)(context, builder, args[0])
        ptr = cgutils.get_item_pointer(context, builder, aryty, ary, [args[1]])
        value = context.cast(builder, args[2], valty, aryty.dtype)
        builder.atomic_rmw("add", ptr, value, "monotonic")
        return context.get_dummy_value()

    return sig, codegen


@njit(nogil=True, cache=True)
def row_contains(offsets, columns, u, v):
    lo = offsets[u]
    hi = offsets[u + 1]
    while lo < hi:
        mid = (lo + hi) >> 1
        c = columns[mid]
        if c < v:
            lo = mid + 1
        elif c > v:
            hi = mid
        else:
            return True
    return False


@njit(nogil=True, cache=True)
def is_edge(out_off, out_col, u, v, stats):
    stats[STAT_EDGE_PROBES] += 1
    return 1 if row_contains(out_off, out_col, u, v) else 0


@njit(nogil=True, cache=True)
def union_into(nb_off, nb_col, u, v, scratch):
    """Write ``N(u) | N(v) - {u, v}`` into ``scratch``; return its length.

    Returns -1 if ``scratch`` is too short.
    """
    i = nb_off[u]
    iend = nb_off[u + 1]
    j = nb_off[v]
    jend = nb_off[v + 1]
    cap = scratch.shape[0]
    k = 0
    while i < iend or j < jend:
        if j >= jend:
            x = nb_col[i]
            i += 1
        elif i >= iend:
            x = nb_col[j]
            j += 1
        else:
            a = nb_col[i]
            b = nb_col[j]
            if a < b:
                x = a
                i += 1
            elif b < a:
                x = b
                j += 1
            else:
                x = a
                i += 1
                j += 1
        if x != u and x != v:
            if k >= cap:
                return -1
            scratch[k] = x
            k += 1
    return k


@njit(nogil=True, cache=True)
def union_size(nb_off, nb_col, u, v):
    """``|N(u) | N(v) - {u, v}|`` without materializing the set."""
    i = nb_off[u]
    iend = nb_off[u + 1]
    j = nb_off[v]
    jend = nb_off[v + 1]
    k = 0
    while i < iend or j < jend:
        if j >= jend:
            x = nb_col[i]
            i += 1
        elif i >= iend:
            x = nb_col[j]
            j += 1
        else:
            a = nb_col[i]
            b = nb_col[j]
            if a < b:
                x = a
                i += 1
            elif b < a:
                x = b
                j += 1
            else:
                x = a
                i += 1
                j += 1
        if x != u and x != v:
            k += 1
    return k


@njit(nogil=True, cache=True)
def _bump(counts, idx, val, atomic):
    if atomic:
        atomic_add(counts, idx, np.uint64(val))
    else:
        counts[idx] += np.uint64(val)


@njit(nogil=True, cache=True)
def _lower_bound(a, size, x):
    lo = 0
    hi = size
    while lo < hi:
        mid = (lo + hi) >> 1
        if a[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo


@njit(nogil=True, cache=True)
def census_dyad(u, v, n, out_off, out_col, nb_off, nb_col, table, table_mid,
                labeled, scratch, counts, atomic, precompute, stats):
    """Count every non-null triad whose canonical dyad is ``(u, v)``.

    ``table`` maps the code of ``(u, v, w)`` to a 0-based counter index;
    ``table_mid`` is used instead when ``u < w < v``. With ``labeled`` set the
    dyadic triads are split by where ``w`` falls relative to ``u`` and ``v``
    (codes ``pre``, ``4 * pre``, ``16 * pre`` in sorted vertex order).
    Returns ``|S|``, or -1 when ``scratch`` is too short.
    """
    s = union_into(nb_off, nb_col, u, v, scratch)
    if s < 0:
        return -1
    e_uv = is_edge(out_off, out_col, u, v, stats)
    e_vu = is_edge(out_off, out_col, v, u, stats)
    pre = e_uv + 2 * e_vu
    dyadic = n - s - 2
    if labeled:
        s_below = _lower_bound(scratch, s, u)
        below = u - s_below
        mid = (v - u - 1) - (_lower_bound(scratch, s, v) - s_below)
        _bump(counts, table[pre], dyadic - below - mid, atomic)
        _bump(counts, table[4 * pre], mid, atomic)
        _bump(counts, table[16 * pre], below, atomic)
    else:
        _bump(counts, table[pre], dyadic, atomic)
    triads = 0
    for t in range(s):
        w = scratch[t]
        if v < w:
            lut = table
        elif u < w and not row_contains(nb_off, nb_col, u, w):
            lut = table_mid
        else:
            continue
        if precompute:
            code = pre
        else:
            code = is_edge(out_off, out_col, u, v, stats)
            code += 2 * is_edge(out_off, out_col, v, u, stats)
        code += 4 * is_edge(out_off, out_col, u, w, stats)
        code += 8 * is_edge(out_off, out_col, w, u, stats)
        code += 16 * is_edge(out_off, out_col, v, w, stats)
        code += 32 * is_edge(out_off, out_col, w, v, stats)
        _bump(counts, lut[code], 1, atomic)
        triads += 1
    stats[STAT_DYADS] += 1
    stats[STAT_TRIADS] += triads
    stats[STAT_CONTRIB] += dyadic + triads
    return s


@njit(nogil=True, cache=True)
def census_graph(n, out_off, out_col, nb_off, nb_col, table, table_mid, labeled,
                 scratch, counts, precompute, stats):
    """Non-null census over every canonical dyad, u ascending then v."""
    for u in range(n):
        for p in range(nb_off[u], nb_off[u + 1]):
            v = nb_col[p]
            if u < v:
                if census_dyad(u, v, n, out_off, out_col, nb_off, nb_col, table,
                               table_mid, labeled, scratch, counts, False,
                               precompute, stats) < 0:
                    return -1
    return 0


@njit(nogil=True, cache=True)
def census_tasks(tasks, start, stop, n, out_off, out_col, nb_off, nb_col, table,
                 table_mid, labeled, scratch, counts, atomic, stats):
    """Non-null census over ``tasks[start:stop]``; returns -1 on scratch overrun."""
    for t in range(start, stop):
        if census_dyad(tasks[t, 0], tasks[t, 1], n, out_off, out_col, nb_off,
                       nb_col, table, table_mid, labeled, scratch, counts,
                       atomic, True, stats) < 0:
            return -1
    return 0


@njit(nogil=True, cache=True)
def canonical_dyads(n, nb_off, nb_col):
    count = 0
    for u in range(n):
        for p in range(nb_off[u], nb_off[u + 1]):
            if nb_col[p] > u:
                count += 1
    tasks = np.empty((count, 2), dtype=np.int64)
    k = 0
    for u in range(n):
        for p in range(nb_off[u], nb_off[u + 1]):
            v = nb_col[p]
            if v > u:
                tasks[k, 0] = u
                tasks[k, 1] = v
                k += 1
    return tasks


@njit(nogil=True, cache=True)
def exact_s_sizes(tasks, nb_off, nb_col):
    out = np.empty(tasks.shape[0], dtype=np.int64)
    for t in range(tasks.shape[0]):
        out[t] = union_size(nb_off, nb_col, tasks[t, 0], tasks[t, 1])
    return out


@njit(nogil=True, cache=True)
def split_queues(workload, max_nset_size):
    """Queue offsets for check-after-append splitting with a strict ``>``."""
    k = workload.shape[0]
    offsets = np.empty(k + 1, dtype=np.int64)
    offsets[0] = 0
    q = 0
    acc = 0
    for t in range(k):
        acc += workload[t]
        if acc > max_nset_size:
            q += 1
            offsets[q] = t + 1
            acc = 0
    if offsets[q] != k:
        q += 1
        offsets[q] = k
    return offsets[: q + 1].copy()
