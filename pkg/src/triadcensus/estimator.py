"""scikit-learn transformer mapping digraphs to triad-census feature vectors."""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .parallel import MERGE_MODES, ExecConfig, census_parallel
from .partition import STRATEGIES, plan_queues
from .triads import ISO16, MODES, census_sequential, derive_classifier
from .validation import check_choice, check_digraphs, check_positive_int


class TriadCensus(TransformerMixin, BaseEstimator):
    """Triad census as a stateless transformer.

    Each input graph becomes one row of triad counts, 16 columns in
    ``"iso16"`` mode or 64 in ``"noniso64"`` mode.

    Parameters
    ----------
    mode : {"iso16", "noniso64"}, default="iso16"
    execution : {"seq", "par"}, default="seq"
        ``"par"`` runs the task-queue census on a thread pool.
    strategy : {"uniform", "nonuniform"}, default="uniform"
        Load-balancing strategy for ``execution="par"``.
    workers : int, default=1
    queues : int or None, default=None
        Target queue count; defaults to ``16 * workers``.
    merge : {"local", "atomic"}, default="local"
    normalize : bool, default=False
        Divide each row by ``C(n, 3)`` to get triad frequencies.

    Attributes
    ----------
    classifier_ : TriadClassifier
    n_features_out_ : int
    census_ : CensusArray
        Census of the last graph seen by :meth:`fit`.

    Examples
    --------
    >>> import numpy as np
    >>> A = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    >>> int(TriadCensus().fit_transform(A)[0, 9])
    1
    """

    def __init__(self, mode=ISO16, execution="seq", strategy="uniform", workers=1,
                 queues=None, merge="local", normalize=False):
        self.mode = mode
        self.execution = execution
        self.strategy = strategy
        self.workers = workers
        self.queues = queues
        self.merge = merge
        self.normalize = normalize

    def _validate_params(self):
        check_choice("mode", self.mode, MODES)
        check_choice("execution", self.execution, ("seq", "par"))
        check_choice("strategy", self.strategy, STRATEGIES)
        check_choice("merge", self.merge, MERGE_MODES)
        check_positive_int("workers", self.workers)
        check_positive_int("queues", self.queues, allow_none=True)

    def _census(self, g):
        if self.execution == "seq":
            return census_sequential(g, self.classifier_, self.mode)
        cfg = ExecConfig(self.workers, self.merge, self.mode)
        plan = plan_queues(g, self.strategy, queues=self.queues or 16 * self.workers)
        census, _ = census_parallel(g, plan, self.classifier_, cfg)
        return census

    def fit(self, X, y=None):
        self._validate_params()
        self.classifier_ = derive_classifier()
        self.n_features_out_ = 16 if self.mode == ISO16 else 64
        graphs = check_digraphs(X)
        self.census_ = self._census(graphs[-1]) if graphs else None
        return self

    def transform(self, X):
        check_is_fitted(self, "classifier_")
        graphs = check_digraphs(X)
        rows = []
        for g in graphs:
            counts = self._census(g).counts
            if self.normalize:
                total = counts.sum(dtype=np.float64)
                rows.append(counts / total if total else counts.astype(np.float64))
            else:
                rows.append(counts)
        dtype = np.float64 if self.normalize else np.uint64
        return np.array(rows, dtype=dtype).reshape(len(graphs), self.n_features_out_)

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "classifier_")
        if self.mode == ISO16:
            return np.array([f"triad_{lbl}" for lbl in self.classifier_.class_labels],
                            dtype=object)
        return np.array([f"code_{c:02d}_{self.classifier_.code_label(c)}"
                         for c in range(64)], dtype=object)
