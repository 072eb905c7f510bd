import math

import numpy as np
import pytest

from triadcensus import build_digraph, generate_synthetic, powerlaw_arcs, random_arcs
from triadcensus.cli import generate_main
from triadcensus.ingest import parse_edgelist


def test_empty():
    assert generate_synthetic(0) == ""


def test_deterministic():
    assert generate_synthetic(300, p=0.02, seed=5) == generate_synthetic(300, p=0.02, seed=5)
    assert generate_synthetic(300, "powerlaw", seed=5) == \
        generate_synthetic(300, "powerlaw", seed=5)
    assert generate_synthetic(300, p=0.02, seed=5) != generate_synthetic(300, p=0.02, seed=6)


def test_binomial_arc_count():
    n, p = 1000, 0.01
    trials = n * (n - 1)
    mean = p * trials
    sd = math.sqrt(trials * p * (1 - p))
    m = random_arcs(n, p, seed=42).shape[0]
    assert abs(m - mean) <= 3 * sd


def test_random_arcs_valid():
    arcs = random_arcs(200, 0.05, seed=1)
    assert np.all(arcs[:, 0] != arcs[:, 1])
    assert np.all((arcs >= 0) & (arcs < 200))
    assert len({tuple(a) for a in arcs.tolist()}) == arcs.shape[0]


def test_random_arcs_extremes():
    assert random_arcs(5, 0.0).shape == (0, 2)
    assert random_arcs(5, 1.0).shape == (20, 2)
    assert random_arcs(1, 0.5).shape == (0, 2)


def test_uniform_success_positions_are_uniform():
    # each ordered pair should be chosen with frequency ~p over many seeds
    n, p, reps = 6, 0.3, 3000
    hits = np.zeros((n, n))
    for s in range(reps):
        a = random_arcs(n, p, seed=s)
        hits[a[:, 0], a[:, 1]] += 1
    off = hits[~np.eye(n, dtype=bool)] / reps
    assert np.all(np.abs(off - p) < 4 * math.sqrt(p * (1 - p) / reps))


def test_powerlaw_has_heavy_tail():
    n = 5000
    g = build_digraph(n, powerlaw_arcs(n, 2.3, 8, seed=3))
    deg = g.neighbours.degrees()
    assert deg.max() > 20 * deg.mean()


@pytest.mark.parametrize("kwargs", [dict(p=1.5), dict(p=-0.1)])
def test_invalid_parameters(kwargs):
    with pytest.raises(ValueError):
        generate_synthetic(10, **kwargs)


def test_invalid_model_and_exponent():
    with pytest.raises(ValueError):
        generate_synthetic(10, "smallworld")
    with pytest.raises(ValueError):
        powerlaw_arcs(10, exponent=1.5)


def test_output_parses_as_edgelist():
    text = generate_synthetic(50, p=0.1, seed=2)
    doc = parse_edgelist(text, index_base=0)
    assert len(doc) == random_arcs(50, 0.1, seed=2).shape[0]


def test_generate_cli(tmp_path, capsys):
    out = tmp_path / "g.txt"
    generate_main(["-n", "100", "-p", "0.05", "--seed", "9", "-o", str(out)])
    assert out.read_text() == generate_synthetic(100, p=0.05, seed=9)
    with pytest.raises(SystemExit) as exc:
        generate_main(["-n", "10", "-p", "2"])
    assert exc.value.code == 2
