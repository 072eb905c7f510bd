import numpy as np
import pytest

from triadcensus import build_digraph


def random_digraph(rng, n, p):
    """Directed G(n, p) built from a dense Bernoulli matrix (independent of synthetic.py)."""
    mask = rng.random((n, n)) < p
    np.fill_diagonal(mask, False)
    return build_digraph(n, np.argwhere(mask))


def brute_union(g, u, v):
    """S(u, v) from Python sets over the raw arc list."""
    nb = {x: set() for x in range(g.n)}
    for a, b in g.arcs():
        nb[int(a)].add(int(b))
        nb[int(b)].add(int(a))
    return sorted((nb[u] | nb[v]) - {u, v})


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def fixtures_dir(request):
    return request.path.parent / "fixtures"


# Acceptance reporting: each test marked ``criterion(name)`` contributes to
# one summary line. A criterion passes only if all of its tests pass.
_CRITERIA = {}
_RANK = {"passed": 0, "skipped": 1, "failed": 2}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if report.when != "call" and not (report.failed or report.skipped):
        return
    entry = _CRITERIA.setdefault(mark.args[0], {"status": "passed", "notes": []})
    status = report.outcome
    if _RANK[status] > _RANK[entry["status"]]:
        entry["status"] = status
    if report.when == "call":
        entry["notes"].extend(f"{k}={v}" for k, v in item.user_properties)
    if report.skipped and isinstance(report.longrepr, tuple):
        entry["notes"].append(report.longrepr[2].removeprefix("Skipped: "))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, entry in _CRITERIA.items():
        word = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[entry["status"]]
        notes = f"  ({'; '.join(entry['notes'])})" if entry["notes"] else ""
        terminalreporter.write_line(f"{word}  {name}{notes}")
