"""scikit-learn shaped wrappers over the functional core.

Rows of parameter matrices are ``(n, k, s)`` or ``(n, k, s, r)``; a missing
``r`` defaults to 2.  Graph inputs are :class:`Graph` objects or graph6 text.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils import check_array
from sklearn.utils.validation import check_is_fitted

from . import graph6
from .cache import ResultCache
from .constructions import derive_params, theorem_value
from .graph import Graph
from .invariants import block_count, circumference, count_cliques, matching_number
from .search import SearchOptions, SearchRecord, extremal_search


def check_param_rows(X, min_k: int = 3) -> np.ndarray:
    """Integer matrix of shape ``(m, 4)`` from rows of 3 or 4 parameters."""
    arr = check_array(X, dtype=np.int64, ensure_2d=True)
    if arr.shape[1] == 3:
        arr = np.hstack([arr, np.full((arr.shape[0], 1), 2, np.int64)])
    if arr.shape[1] != 4:
        raise ValueError(f"expected 3 or 4 columns (n, k, s[, r]), got {arr.shape[1]}")
    if (arr[:, 1] < min_k).any():
        raise ValueError(f"k must be at least {min_k}")
    if (arr < 0).any():
        raise ValueError("parameters must be non-negative")
    return arr


def check_graphs(X: Iterable[Graph | str]) -> list[Graph]:
    """Accept graphs or graph6 strings, in any iterable."""
    if isinstance(X, (str, Graph)):
        raise ValueError("expected a collection of graphs, got a single graph")
    out = []
    for item in X:
        if isinstance(item, Graph):
            out.append(item)
        elif isinstance(item, (str, bytes)):
            out.append(graph6.decode(item.decode() if isinstance(item, bytes) else item))
        else:
            raise ValueError(f"cannot interpret {type(item).__name__} as a graph")
    return out


class GraphInvariants(TransformerMixin, BaseEstimator):
    """Maps each graph to ``[order, edges, K_r counts..., nu, circumference, blocks]``."""

    def __init__(self, r_values: Sequence[int] = (2, 3)):
        self.r_values = r_values

    def fit(self, X, y=None):
        check_graphs(X)
        self.r_values_ = tuple(int(r) for r in self.r_values)
        if any(r < 0 for r in self.r_values_):
            raise ValueError("clique sizes must be non-negative")
        self.n_features_out_ = 5 + len(self.r_values_)
        return self

    def transform(self, X):
        check_is_fitted(self, "r_values_")
        rows = []
        for g in check_graphs(X):
            rows.append([g.order, g.edge_count]
                        + [count_cliques(g, r) for r in self.r_values_]
                        + [matching_number(g), circumference(g), block_count(g)])
        return np.array(rows, dtype=np.int64).reshape(-1, self.n_features_out_)

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "r_values_")
        names = ["order", "edges"] + [f"K{r}" for r in self.r_values_]
        return np.array(names + ["nu", "circumference", "blocks"], dtype=object)


class TheoremValue(BaseEstimator):
    """Predicts the largest family count named for each parameter row."""

    def fit(self, X, y=None):
        check_param_rows(X, min_k=5)
        self.is_fitted_ = True
        return self

    def predict(self, X):
        check_is_fitted(self, "is_fitted_")
        rows = check_param_rows(X, min_k=5)
        return np.array([theorem_value(derive_params(*map(int, row))) for row in rows], dtype=np.int64)


class ExtremalSearch(BaseEstimator):
    """Runs exact searches for each parameter row; ``records_`` keeps the results.

    ``predict`` answers from the fitted records and searches rows it has not seen.
    """

    def __init__(self, canonical_dedup: bool | None = None, jobs: int = 1, split_depth: int = 12,
                 seed_incumbent: bool = True, max_order: int = 10, cache_path: str | None = None):
        self.canonical_dedup = canonical_dedup
        self.jobs = jobs
        self.split_depth = split_depth
        self.seed_incumbent = seed_incumbent
        self.max_order = max_order
        self.cache_path = cache_path

    def _options(self) -> SearchOptions:
        return SearchOptions(self.canonical_dedup, self.jobs, self.split_depth,
                             self.seed_incumbent, self.max_order)

    def _lookup(self, row: tuple[int, int, int, int]) -> SearchRecord:
        rec = self.records_.get(row)
        if rec is None and self._cache is not None:
            rec = self._cache.get(row)
        if rec is None:
            rec = extremal_search(row, self._options())
            if self._cache is not None:
                self._cache.put(rec)
        self.records_[row] = rec
        return rec

    def fit(self, X, y=None):
        rows = check_param_rows(X)
        self._cache = ResultCache(self.cache_path) if self.cache_path else None
        self.records_: dict[tuple[int, int, int, int], SearchRecord] = {}
        for row in rows:
            self._lookup(tuple(int(v) for v in row))
        return self

    def predict(self, X):
        check_is_fitted(self, "records_")
        rows = check_param_rows(X)
        return np.array([self._lookup(tuple(int(v) for v in row)).value for row in rows], dtype=np.int64)

    def score(self, X, y=None):
        """Fraction of rows whose value reaches the theorem value (rows with ``k >= 5``)."""
        rows = check_param_rows(X, min_k=5)
        values = self.predict(rows)
        targets = TheoremValue().fit(rows).predict(rows)
        return float(np.mean(values >= targets))
