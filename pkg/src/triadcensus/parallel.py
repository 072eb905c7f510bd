"""Task-queue census on a thread pool, plus the timed end-to-end pipeline.

Workers are plain threads; the compiled kernels release the GIL, so queues
run concurrently. Queues are claimed dynamically from a shared counter.
"""

from dataclasses import asdict, dataclass, field
import itertools
import logging
import threading
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _kernels
from .errors import CensusOverflowError, PipelineError, ScratchCapacityError
from .ingest import finalize_phases, parse_file
from .partition import UNIFORM, plan_queues
from .triads import (ISO16, MODES, UINT64_MAX, CensusArray, close_census,
                     derive_classifier, null_count)

__all__ = [
    "LOCAL",
    "ATOMIC",
    "ExecConfig",
    "QueueStats",
    "TimingBreakdown",
    "census_parallel",
    "merge_census",
    "timed_pipeline",
]

log = logging.getLogger(__name__)

LOCAL = "local"
ATOMIC = "atomic"
MERGE_MODES = (LOCAL, ATOMIC)


@dataclass(frozen=True)
class ExecConfig:
    workers: int = 1
    merge_mode: str = LOCAL
    mode: str = ISO16

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        if self.merge_mode not in MERGE_MODES:
            raise ValueError(f"merge_mode must be one of {MERGE_MODES}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")


@dataclass
class QueueStats:
    queue: int
    worker: int
    tasks: int
    workload: int
    contributions: int
    duration: float


@dataclass
class TimingBreakdown:
    read_graph: float = 0.0
    build_neighbour_sets: float = 0.0
    build_task_queues: float = 0.0
    census_execution: float = 0.0
    total: float = 0.0

    def as_dict(self):
        return asdict(self)


def merge_census(locals_, mode=ISO16):
    """Element-wise sum of per-worker censuses, checked against 64-bit overflow."""
    locals_ = list(locals_)
    if not locals_:
        return CensusArray.zeros(mode)
    mode = locals_[0].mode
    if any(c.mode != mode for c in locals_):
        raise ValueError("cannot merge censuses of different modes")
    sums = [sum(int(c.counts[i]) for c in locals_) for i in range(len(locals_[0]))]
    if max(sums) > UINT64_MAX:
        raise CensusOverflowError("merged triad counter exceeds 64 bits")
    return CensusArray(np.array(sums, dtype=np.uint64), mode)


def census_parallel(g, plan, classifier=None, cfg=None):
    """Census over ``plan`` with ``cfg.workers`` threads.

    Returns ``(CensusArray, list[QueueStats])``. The result equals
    :func:`~triadcensus.triads.census_sequential` for any worker count,
    merge mode or claiming order.
    """
    cfg = cfg or ExecConfig()
    classifier = classifier or derive_classifier()
    null_count(g.n, 0)
    table, table_mid, labeled = classifier.kernel_tables(cfg.mode)
    width = 16 if cfg.mode == ISO16 else 64
    arrays = (g.out_arcs.row_offsets, g.out_arcs.columns,
              g.neighbours.row_offsets, g.neighbours.columns)
    tasks = plan.tasks
    offsets = plan.queue_offsets
    n_queues = plan.n_queues
    scratch_len = int(plan.queue_max_s.max()) if n_queues else 0
    atomic = cfg.merge_mode == ATOMIC
    shared = np.zeros(width, dtype=np.uint64)
    claim = itertools.count()  # next() is atomic under the GIL
    abort = threading.Event()

    def worker(wid):
        try:
            return run_queues(wid)
        except BaseException:
            abort.set()
            raise

    def run_queues(wid):
        scratch = np.empty(scratch_len, dtype=np.int64)
        counts = shared if atomic else np.zeros(width, dtype=np.uint64)
        done = []
        while not abort.is_set():
            q = next(claim)
            if q >= n_queues:
                break
            stats = np.zeros(_kernels.N_STATS, dtype=np.int64)
            t0 = time.perf_counter()
            rc = _kernels.census_tasks(tasks, offsets[q], offsets[q + 1], g.n, *arrays,
                                       table, table_mid, labeled, scratch, counts,
                                       atomic, stats)
            if rc < 0:
                raise ScratchCapacityError(
                    f"queue {q} overran its scratch buffer of {scratch_len}")
            done.append(QueueStats(q, wid, int(offsets[q + 1] - offsets[q]),
                                   int(plan.queue_workload[q]),
                                   int(stats[_kernels.STAT_CONTRIB]),
                                   time.perf_counter() - t0))
        return counts, done

    results = []
    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        futures = [pool.submit(worker, w) for w in range(cfg.workers)]
        error = None
        for f in futures:
            try:
                results.append(f.result())
            except Exception as exc:
                error = error or exc
    if error is not None:
        raise error

    queue_stats = sorted((s for _, done in results for s in done), key=lambda s: s.queue)
    if atomic:
        counts = shared
    else:
        counts = merge_census(CensusArray(c, cfg.mode) for c, _ in results).counts.copy()
    return close_census(g.n, counts, cfg.mode), queue_stats


@dataclass
class PipelineResult:
    census: CensusArray
    timing: TimingBreakdown
    queue_stats: list = field(default_factory=list)
    graph: object = None
    plan: object = None


def timed_pipeline(path, cfg=None, *, fmt="auto", index_base=None, strategy=UNIFORM,
                   queues=None, max_nset_size=None, classifier=None):
    """Read, build neighbour sets, plan, and run the census, timing each phase.

    ``queues`` defaults to 16 per worker. Errors are re-raised as
    :class:`PipelineError` tagged with the phase that failed.
    """
    cfg = cfg or ExecConfig()
    timing = TimingBreakdown()
    start = time.perf_counter()

    def phase(name, fn, *args):
        t0 = time.perf_counter()
        try:
            out = fn(*args)
        except Exception as exc:
            raise PipelineError(name, exc) from exc
        setattr(timing, name, time.perf_counter() - t0)
        return out

    def read():
        doc = parse_file(path, fmt, index_base)
        build_out, build_nb = finalize_phases(doc)
        return build_out(), build_nb

    out, build_nb = phase("read_graph", read)
    g = phase("build_neighbour_sets", build_nb, out)
    if queues is None and max_nset_size is None:
        queues = 16 * cfg.workers
    plan = phase("build_task_queues",
                 lambda: plan_queues(g, strategy, queues=queues, max_nset_size=max_nset_size))
    census, qstats = phase("census_execution", census_parallel, g, plan, classifier, cfg)
    timing.total = time.perf_counter() - start
    log.debug("pipeline %s: %s", path, timing)
    return PipelineResult(census, timing, qstats, g, plan)
