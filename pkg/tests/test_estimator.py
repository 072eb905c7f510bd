import numpy as np
import pytest
import scipy.sparse as sp
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import StandardScaler

from triadcensus import TriadCensus, build_digraph, census_sequential

from conftest import random_digraph


def test_get_set_params_and_clone():
    est = TriadCensus(mode="noniso64", execution="par", workers=3)
    params = est.get_params()
    assert params["workers"] == 3 and params["mode"] == "noniso64"
    other = clone(est).set_params(workers=2)
    assert other.workers == 2 and est.workers == 3


def test_single_graph_row(rng):
    g = random_digraph(rng, 30, 0.1)
    X = TriadCensus().fit_transform(g)
    assert X.shape == (1, 16)
    assert X[0].tolist() == census_sequential(g).counts.tolist()


def test_many_graphs_and_par(rng):
    graphs = [random_digraph(rng, int(rng.integers(3, 50)), 0.1) for _ in range(5)]
    seq = TriadCensus().fit(graphs).transform(graphs)
    par = TriadCensus(execution="par", workers=2, merge="atomic").fit(graphs).transform(graphs)
    assert np.array_equal(seq, par)


def test_adjacency_inputs():
    A = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    dense = TriadCensus().fit_transform(A)
    sparse = TriadCensus().fit_transform(sp.csr_matrix(A))
    assert np.array_equal(dense, sparse)
    assert dense[0, 9] == 1


def test_tuple_input():
    X = TriadCensus().fit_transform((4, [(0, 1)]))
    assert X[0, 0] == 2 and X[0, 1] == 2


def test_normalize(rng):
    graphs = [random_digraph(rng, 20, 0.2) for _ in range(3)]
    X = TriadCensus(normalize=True).fit_transform(graphs)
    assert np.allclose(X.sum(axis=1), 1.0)


def test_pipeline(rng):
    graphs = [random_digraph(rng, 25, p) for p in (0.05, 0.1, 0.2, 0.3)]
    Z = make_pipeline(TriadCensus(normalize=True), StandardScaler()).fit_transform(graphs)
    assert Z.shape == (4, 16)


def test_feature_names():
    est = TriadCensus().fit(build_digraph(3, []))
    names = est.get_feature_names_out()
    assert names[0] == "triad_003" and names[-1] == "triad_300"
    est64 = TriadCensus(mode="noniso64").fit(build_digraph(3, []))
    assert len(est64.get_feature_names_out()) == 64


def test_not_fitted():
    with pytest.raises(NotFittedError):
        TriadCensus().transform(build_digraph(3, []))


@pytest.mark.parametrize("bad", [dict(mode="x"), dict(workers=0), dict(strategy="greedy"),
                                 dict(merge="lock"), dict(queues=0), dict(execution="gpu")])
def test_param_validation(bad):
    with pytest.raises(ValueError):
        TriadCensus(**bad).fit(build_digraph(3, []))


def test_non_square_rejected():
    with pytest.raises(ValueError):
        TriadCensus().fit(np.zeros((2, 3)))
