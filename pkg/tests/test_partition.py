import numpy as np
import pytest

from triadcensus import (NONUNIFORM, UNIFORM, build_digraph, enumerate_canonical_dyads,
                         plan_nonuniform, plan_queues, plan_uniform, powerlaw_arcs,
                         queue_scratch_sizes, threshold_for_queues)

from conftest import brute_union, random_digraph


def trace_plan(g, max_nset_size, strategy):
    """Literal transcription of the queue-generation loop, using Python sets."""
    nb = {u: [int(x) for x in g.neighbours.row(u)] for u in range(g.n)}
    queues = [[]]
    acc = 0
    for u in range(g.n):
        for v in nb[u]:
            if u < v:
                queues[-1].append((u, v))
                if strategy == UNIFORM:
                    acc += len(nb[u]) + len(nb[v]) - 2
                else:
                    acc += len((set(nb[u]) | set(nb[v])) - {u, v})
                if acc > max_nset_size:
                    queues.append([])
                    acc = 0
    if not queues[-1]:
        queues.pop()
    return queues


def plan_as_lists(plan):
    return [[tuple(t) for t in plan.queue(i).tolist()] for i in range(plan.n_queues)]


PATH = [(0, 1), (1, 2)]
MUTUAL_TRIANGLE = [(a, b) for a in range(3) for b in range(3) if a != b]


class TestEnumerate:
    def test_path(self):
        assert enumerate_canonical_dyads(build_digraph(3, PATH)).tolist() == [[0, 1], [1, 2]]

    def test_empty(self):
        assert enumerate_canonical_dyads(build_digraph(4, [])).shape == (0, 2)

    def test_mutual_not_duplicated(self):
        assert enumerate_canonical_dyads(build_digraph(2, [(0, 1), (1, 0)])).tolist() == [[0, 1]]

    def test_counts_connected_pairs(self, rng):
        g = random_digraph(rng, 50, 0.1)
        pairs = {tuple(sorted(map(int, a))) for a in g.arcs()}
        tasks = enumerate_canonical_dyads(g)
        assert len(tasks) == len(pairs)
        assert {tuple(t) for t in tasks.tolist()} == pairs


class TestUniform:
    def test_path_single_queue(self):
        g = build_digraph(3, PATH)
        plan = plan_uniform(g, 1)
        assert plan_as_lists(plan) == trace_plan(g, 1, UNIFORM) == [[(0, 1), (1, 2)]]
        assert plan.queue_workload.tolist() == [2]

    def test_threshold_at_total_gives_one_queue(self, rng):
        g = random_digraph(rng, 40, 0.1)
        total = plan_uniform(g, 1).total_workload
        assert plan_uniform(g, total).n_queues == 1

    def test_empty(self):
        plan = plan_uniform(build_digraph(5, []), 3)
        assert plan.n_queues == 0 and plan.n_tasks == 0
        assert plan.queue_offsets.tolist() == [0]

    def test_rejects_zero_threshold(self):
        with pytest.raises(ValueError):
            plan_uniform(build_digraph(3, PATH), 0)


class TestNonuniform:
    def test_path(self):
        g = build_digraph(3, PATH)
        assert plan_as_lists(plan_nonuniform(g, 1)) == [[(0, 1), (1, 2)]]

    def test_mutual_pair(self):
        plan = plan_nonuniform(build_digraph(2, [(0, 1), (1, 0)]), 1)
        assert plan_as_lists(plan) == [[(0, 1)]]
        assert plan.task_workload.tolist() == [0]

    def test_mutual_triangle_trace(self):
        g = build_digraph(3, MUTUAL_TRIANGLE)
        plan = plan_nonuniform(g, 1)
        assert plan.task_workload.tolist() == [1, 1, 1]
        # accumulated workload first exceeds 1 after the second task
        expected = trace_plan(g, 1, NONUNIFORM)
        assert expected == [[(0, 1), (0, 2)], [(1, 2)]]
        assert plan_as_lists(plan) == expected


class TestAgainstTrace:
    @pytest.mark.parametrize("strategy", [UNIFORM, NONUNIFORM])
    def test_random_graphs(self, rng, strategy):
        for _ in range(40):
            g = random_digraph(rng, int(rng.integers(0, 40)), float(rng.choice([0.05, 0.2])))
            limit = int(rng.integers(1, 30))
            plan = plan_queues(g, strategy, max_nset_size=limit)
            assert plan_as_lists(plan) == trace_plan(g, limit, strategy)

    @pytest.mark.parametrize("strategy", [UNIFORM, NONUNIFORM])
    def test_invariants(self, rng, strategy):
        for _ in range(30):
            g = random_digraph(rng, int(rng.integers(2, 60)), 0.1)
            limit = int(rng.integers(1, 50))
            plan = plan_queues(g, strategy, max_nset_size=limit)
            off = plan.queue_offsets
            assert off[0] == 0 and off[-1] == plan.n_tasks
            assert np.all(np.diff(off) > 0)
            assert np.array_equal(np.concatenate([plan.queue(i) for i in range(plan.n_queues)]
                                                 or [np.zeros((0, 2), np.int64)]),
                                  enumerate_canonical_dyads(g))
            for q in range(plan.n_queues):
                last = plan.task_workload[off[q + 1] - 1]
                assert plan.queue_workload[q] - last <= limit
                if q < plan.n_queues - 1:
                    assert plan.queue_workload[q] > limit

    def test_estimate_dominates_exact(self, rng):
        for _ in range(20):
            g = random_digraph(rng, 50, 0.08)
            uni = plan_uniform(g, 10)
            exact = plan_nonuniform(g, 10)
            assert np.all(uni.task_workload >= exact.task_workload)
            for (u, v), s in zip(exact.tasks.tolist(), exact.task_workload.tolist()):
                assert s == len(brute_union(g, u, v))


class TestThreshold:
    def test_ceiling(self):
        g = build_digraph(3, PATH)
        assert threshold_for_queues(g, UNIFORM, 2) == 1
        assert threshold_for_queues(g, UNIFORM, 1) == 2

    def test_explicit_totals(self):
        assert threshold_for_queues(None, UNIFORM, 4, workload=np.array([100])) == 25
        assert threshold_for_queues(None, UNIFORM, 3, workload=np.array([100])) == 34

    def test_floor_for_empty(self):
        assert threshold_for_queues(build_digraph(3, []), UNIFORM, 8) == 1

    def test_plan_queues_needs_one_target(self):
        g = build_digraph(3, PATH)
        with pytest.raises(ValueError):
            plan_queues(g, UNIFORM)
        with pytest.raises(ValueError):
            plan_queues(g, UNIFORM, queues=2, max_nset_size=3)


class TestScratchSizes:
    def test_path(self):
        g = build_digraph(3, PATH)
        plan = plan_uniform(g, 100)
        assert queue_scratch_sizes(g, plan).tolist() == [1]
        assert plan.queue_max_s.tolist() == [1]

    def test_empty(self):
        g = build_digraph(3, [])
        assert queue_scratch_sizes(g, plan_uniform(g, 1)).tolist() == []

    def test_zero_s(self):
        g = build_digraph(2, [(0, 1)])
        assert queue_scratch_sizes(g, plan_uniform(g, 1)).tolist() == [0]

    def test_matches_brute_force(self, rng):
        g = random_digraph(rng, 60, 0.1)
        plan = plan_uniform(g, 40)
        expect = [max(len(brute_union(g, u, v)) for u, v in plan.queue(q).tolist())
                  for q in range(plan.n_queues)]
        assert queue_scratch_sizes(g, plan).tolist() == expect


def test_proportionality_on_powerlaw():
    n = 20_000
    g = build_digraph(n, powerlaw_arcs(n, exponent=2.5, avg_degree=6, seed=7))
    assert enumerate_canonical_dyads(g).shape[0] >= 10_000
    big = threshold_for_queues(g, UNIFORM, 50)
    q1 = plan_uniform(g, big).n_queues
    q2 = plan_uniform(g, big // 2).n_queues
    assert 1.8 <= q2 / q1 <= 2.2
