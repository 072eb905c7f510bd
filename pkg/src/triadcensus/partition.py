"""Canonical-dyad task queues and load-balancing strategies.

A plan is stored centrally in CRS form: one flat ``(k, 2)`` task array in
canonical order plus ``queue_offsets`` delimiting each queue.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels

__all__ = [
    "UNIFORM",
    "NONUNIFORM",
    "TaskQueuePlan",
    "enumerate_canonical_dyads",
    "task_workloads",
    "plan_uniform",
    "plan_nonuniform",
    "plan_queues",
    "threshold_for_queues",
    "queue_scratch_sizes",
]

UNIFORM = "uniform"
NONUNIFORM = "nonuniform"
STRATEGIES = (UNIFORM, NONUNIFORM)


@dataclass(frozen=True, eq=False)
class TaskQueuePlan:
    """Canonical dyads partitioned into contiguous queues.

    Attributes
    ----------
    tasks : ndarray of shape (k, 2)
        ``(u, v)`` with ``u < v``, in canonical enumeration order.
    queue_offsets : ndarray of shape (q + 1,)
    task_workload : ndarray of shape (k,)
        Per-task workload under the plan's strategy.
    queue_workload : ndarray of shape (q,)
    queue_max_s : ndarray of shape (q,)
        Largest exact ``|S|`` among the tasks of each queue.
    strategy : str
    max_nset_size : int
    """

    tasks: np.ndarray
    queue_offsets: np.ndarray
    task_workload: np.ndarray
    queue_workload: np.ndarray
    queue_max_s: np.ndarray
    strategy: str
    max_nset_size: int

    @property
    def n_tasks(self):
        return int(self.tasks.shape[0])

    @property
    def n_queues(self):
        return int(self.queue_offsets.shape[0] - 1)

    @property
    def total_workload(self):
        return int(self.task_workload.sum())

    def queue(self, i):
        return self.tasks[self.queue_offsets[i]:self.queue_offsets[i + 1]]

    def queue_sizes(self):
        return np.diff(self.queue_offsets)

    def summary(self):
        return {"tasks": self.n_tasks, "queues": self.n_queues,
                "total_workload": self.total_workload}


def enumerate_canonical_dyads(g):
    """``(u, v)`` for each u ascending and each ``v > u`` in ``N(u)`` ascending."""
    return _kernels.canonical_dyads(g.n, g.neighbours.row_offsets, g.neighbours.columns)


def exact_s_sizes(g, tasks):
    return _kernels.exact_s_sizes(tasks, g.neighbours.row_offsets, g.neighbours.columns)


def task_workloads(g, tasks, strategy):
    if strategy == UNIFORM:
        deg = g.neighbours.degrees()
        return deg[tasks[:, 0]] + deg[tasks[:, 1]] - 2
    if strategy == NONUNIFORM:
        return exact_s_sizes(g, tasks)
    raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")


def _segment_max(values, offsets):
    if offsets.shape[0] <= 1:
        return np.zeros(0, dtype=np.int64)
    return np.maximum.reduceat(values, offsets[:-1]).astype(np.int64)


def _build_plan(g, strategy, max_nset_size, tasks=None, workload=None):
    if max_nset_size < 1:
        raise ValueError(f"max_nset_size must be >= 1, got {max_nset_size}")
    if tasks is None:
        tasks = enumerate_canonical_dyads(g)
    if workload is None:
        workload = task_workloads(g, tasks, strategy)
    workload = np.ascontiguousarray(workload, dtype=np.int64)
    offsets = _kernels.split_queues(workload, np.int64(max_nset_size))
    queue_workload = np.add.reduceat(workload, offsets[:-1]) if tasks.shape[0] else \
        np.zeros(0, dtype=np.int64)
    s_sizes = workload if strategy == NONUNIFORM else exact_s_sizes(g, tasks)
    plan = TaskQueuePlan(tasks, offsets, workload, queue_workload.astype(np.int64),
                         _segment_max(s_sizes, offsets), strategy, int(max_nset_size))
    for a in (plan.tasks, plan.queue_offsets, plan.task_workload,
              plan.queue_workload, plan.queue_max_s):
        a.flags.writeable = False
    return plan


def plan_uniform(g, max_nset_size):
    """Queues closed once the accumulated ``|N(u)| + |N(v)| - 2`` exceeds the limit."""
    return _build_plan(g, UNIFORM, max_nset_size)


def plan_nonuniform(g, max_nset_size):
    """Queues closed once the accumulated exact ``|S|`` exceeds the limit."""
    return _build_plan(g, NONUNIFORM, max_nset_size)


def threshold_for_queues(g, strategy, target_queues, workload=None):
    """``ceil(total workload / target_queues)``, at least 1."""
    if target_queues < 1:
        raise ValueError(f"target_queues must be >= 1, got {target_queues}")
    if workload is None:
        workload = task_workloads(g, enumerate_canonical_dyads(g), strategy)
    total = int(np.sum(workload))
    return max(1, -(-total // int(target_queues)))


def plan_queues(g, strategy=UNIFORM, *, queues=None, max_nset_size=None):
    """Build a plan aiming at ``queues`` queues, or with an explicit threshold."""
    if (queues is None) == (max_nset_size is None):
        raise ValueError("give exactly one of queues or max_nset_size")
    tasks = enumerate_canonical_dyads(g)
    workload = task_workloads(g, tasks, strategy)
    if max_nset_size is None:
        max_nset_size = threshold_for_queues(g, strategy, queues, workload)
    return _build_plan(g, strategy, max_nset_size, tasks, workload)


def queue_scratch_sizes(g, plan):
    """Per-queue maximum ``|S|``: the scratch length each queue needs."""
    return _segment_max(exact_s_sizes(g, plan.tasks), plan.queue_offsets)
