"""Exact extremal numbers for small ``n`` by branch-and-bound over edge subsets.

Freeness is preserved under edge deletion and clique counts only grow under
edge addition, so a maximiser can be found among edge-maximal free graphs.
The search decides the ``C(n,2)`` pairs in lexicographic order (include before
exclude), drops an include as soon as it creates a long cycle or a large
matching, and drops an exclude when even keeping every undecided pair could
not beat the incumbent.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

from . import _kernels, graph6
from .canonical import canonical_code
from .constructions import (
    Family,
    FamilyParams,
    applicable_families,
    build_construction,
    formula_clique_count,
    matching_turan_value,
    theorem_value,
)
from .errors import CacheIntegrityError, CapacityError, ParameterError, PreconditionError
from .graph import Graph, clique, independent, join, union
from .invariants import count_cliques, is_free

DEFAULT_MAX_ORDER = 10
HARD_MAX_ORDER = 12
DEFAULT_SPLIT_DEPTH = 12
DEDUP_FROM_ORDER = 8


@dataclass(frozen=True)
class SearchOptions:
    """Tuning knobs; none of them changes the value found.

    ``canonical_dedup=None`` turns isomorph rejection on for ``n >= 8``.
    ``seed_incumbent`` starts from the best of a few verified-free graphs
    (complete split graphs, disjoint cliques, the applicable constructions);
    switch it off to make the search independent of those candidates.
    """

    canonical_dedup: bool | None = None
    jobs: int = 1
    split_depth: int = DEFAULT_SPLIT_DEPTH
    seed_incumbent: bool = True
    max_order: int = DEFAULT_MAX_ORDER

    def dedup_for(self, n: int) -> bool:
        return n >= DEDUP_FROM_ORDER if self.canonical_dedup is None else self.canonical_dedup


@dataclass(frozen=True)
class SearchRecord:
    params: FamilyParams
    value: int
    witness: str
    nodes_explored: int
    maximal_graphs_seen: int
    wall_time: float = field(compare=False)
    theorem_gap: int | None

    def to_dict(self) -> dict:
        return {
            "params": self.params.as_dict(),
            "value": self.value,
            "witness": self.witness,
            "nodes_explored": self.nodes_explored,
            "maximal_graphs_seen": self.maximal_graphs_seen,
            "wall_time": self.wall_time,
            "theorem_gap": self.theorem_gap,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SearchRecord":
        p = data["params"]
        return cls(
            FamilyParams(int(p["n"]), int(p["k"]), int(p["s"]), int(p["r"])),
            int(data["value"]),
            str(data["witness"]),
            int(data["nodes_explored"]),
            int(data["maximal_graphs_seen"]),
            float(data["wall_time"]),
            None if data["theorem_gap"] is None else int(data["theorem_gap"]),
        )

    @property
    def key(self) -> tuple[int, int, int, int]:
        p = self.params
        return (p.n, p.k, p.s, p.r)

    def verify(self) -> None:
        """Raise :class:`CacheIntegrityError` unless the witness backs the value."""
        p = self.params
        try:
            g = graph6.decode(self.witness)
        except ValueError as exc:
            raise CacheIntegrityError(f"witness for {self.key} does not decode: {exc}") from None
        if g.order != p.n:
            raise CacheIntegrityError(f"witness for {self.key} has order {g.order}")
        if not is_free(g, p.k, p.s):
            raise CacheIntegrityError(f"witness for {self.key} is not free")
        if count_cliques(g, p.r) != self.value:
            raise CacheIntegrityError(f"witness for {self.key} does not attain {self.value}")


def search_params(n: int, k: int, s: int, r: int = 2, max_order: int = DEFAULT_MAX_ORDER) -> FamilyParams:
    """Validate a search tuple; unlike the constructions, ``k >= 3`` suffices."""
    cap = min(max_order, HARD_MAX_ORDER)
    if max_order > HARD_MAX_ORDER:
        raise CapacityError(f"order cap {max_order} exceeds the hard limit {HARD_MAX_ORDER}")
    if n < 1:
        raise ParameterError(f"n must be at least 1, got n={n}")
    if n > cap:
        raise CapacityError(f"n={n} exceeds the search cap {cap}")
    if k < 3:
        raise ParameterError(f"k must be at least 3, got k={k}")
    if s < 0:
        raise ParameterError(f"s must be non-negative, got s={s}")
    if r < 2:
        raise ParameterError(f"r must be at least 2, got r={r}")
    return FamilyParams(n, k, s, r)


def theorem_gap(params: FamilyParams, value: int) -> int | None:
    """``value - theorem_value``; ``None`` where no theorem value is defined (``k < 5``, ``s < 1``)."""
    if params.k < 5 or params.s < 1:
        return None
    return value - theorem_value(params)


def seed_candidates(params: FamilyParams) -> list[Graph]:
    """Simple free graphs used as the starting incumbent."""
    n = params.n
    out = []
    for j in range(n + 1):
        out.append(join(clique(j), independent(n - j)))
        out.append(union(clique(j), independent(n - j)))
    if params.k >= 5 and params.s >= 1:
        for fam in applicable_families(params):
            out.append(build_construction(fam, params))
    return [g for g in out if is_free(g, params.k, params.s)]


def _best_seed(params: FamilyParams) -> tuple[int, Graph | None]:
    best, arg = -1, None
    for g in seed_candidates(params):
        c = count_cliques(g, params.r)
        if c > best:
            best, arg = c, g
    return best, arg


def split_point(n: int, split_depth: int) -> tuple[int, int]:
    """Smallest depth ``>= split_depth`` at which whole rows are decided.

    Returns ``(depth, rows)``: after ``depth`` decisions every pair touching
    vertices ``0..rows-1`` is fixed.
    """
    m = n * (n - 1) // 2
    depth = 0
    for j in range(n):
        if depth >= split_depth:
            return depth, j
        depth += n - 1 - j
    return m, n


def _rows(g: Graph) -> np.ndarray:
    return np.array(g.adjacency, dtype=np.int64)


@dataclass
class _Task:
    G: np.ndarray
    P: np.ndarray
    nu: int
    ub: int


def _run_subtask(n, k, s, r, best, eu, ev, start, task: _Task):
    empty = np.zeros((0, n), np.int64)
    none = np.zeros(0, np.int64)
    witness = np.zeros(n, np.int64)
    got, nodes, _, improved, maximal = _kernels.explore(
        n, k, s, r, best, eu, ev, start, eu.shape[0], task.G, task.P, task.nu, task.ub,
        empty, empty, none, none, witness)
    return int(got), int(nodes), bool(improved), int(maximal), witness


def extremal_search(params: FamilyParams | Sequence[int], options: SearchOptions | None = None,
                    **overrides) -> SearchRecord:
    """Exact ``ex(n, K_r, {C_{>=k}, M_{s+1}})`` with a witness graph.

    ``overrides`` replace fields of ``options`` (``jobs=4``, ``canonical_dedup=False``...).
    Node counts depend only on ``(params, canonical_dedup, split_depth,
    seed_incumbent)``; every subtask starts from the same incumbent, so the
    number of worker threads never changes them.
    """
    opts = options or SearchOptions()
    if overrides:
        opts = SearchOptions(**{**opts.__dict__, **overrides})
    if opts.jobs < 1:
        raise ParameterError(f"jobs must be at least 1, got {opts.jobs}")
    if opts.split_depth < 0:
        raise ParameterError(f"split_depth must be non-negative, got {opts.split_depth}")
    if isinstance(params, FamilyParams):
        params = search_params(params.n, params.k, params.s, params.r, opts.max_order)
    else:
        params = search_params(*params, max_order=opts.max_order)
    n, k, s, r = params.n, params.k, params.s, params.r
    t0 = time.perf_counter()

    pairs = list(combinations(range(n), 2))
    m = len(pairs)
    eu = np.array([u for u, _ in pairs], np.int64)
    ev = np.array([v for _, v in pairs], np.int64)
    full = clique(n)
    P0 = _rows(full)
    G0 = np.zeros(n, np.int64)
    ub0 = comb(n, r)

    best, best_graph = _best_seed(params) if opts.seed_incumbent else (-1, None)
    incumbent = best

    depth, rows = split_point(n, opts.split_depth)
    nodes = 0
    maximal = 0
    if depth >= m:
        tasks = [_Task(G0, P0, 0, ub0)]
        depth = 0
    else:
        empty = np.zeros((0, n), np.int64)
        none = np.zeros(0, np.int64)
        scratch = np.zeros(n, np.int64)
        _, nodes, count, _, _ = _kernels.explore(
            n, k, s, r, incumbent, eu, ev, 0, depth, G0, P0, 0, ub0, empty, empty, none, none, scratch)
        fG = np.zeros((count, n), np.int64)
        fP = np.zeros((count, n), np.int64)
        fnu = np.zeros(count, np.int64)
        fub = np.zeros(count, np.int64)
        _kernels.explore(n, k, s, r, incumbent, eu, ev, 0, depth, G0, P0, 0, ub0, fG, fP, fnu, fub, scratch)
        nodes = int(nodes)
        tasks = [_Task(fG[i], fP[i], int(fnu[i]), int(fub[i])) for i in range(count)]
        if opts.dedup_for(n):
            colors = [1] * rows + [0] * (n - rows)
            seen = set()
            kept = []
            for task in tasks:
                code = canonical_code(Graph._trusted(tuple(int(x) for x in task.G)), colors)
                if code not in seen:
                    seen.add(code)
                    kept.append(task)
            tasks = kept

    def run(task: _Task):
        return _run_subtask(n, k, s, r, incumbent, eu, ev, depth, task)

    if opts.jobs == 1 or len(tasks) <= 1:
        results = [run(t) for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=opts.jobs) as pool:
            results = list(pool.map(run, tasks))

    for got, sub_nodes, improved, sub_max, witness in results:
        nodes += sub_nodes
        maximal += sub_max
        if improved and got > best:
            best = got
            best_graph = Graph._trusted(tuple(int(x) for x in witness))
    if best_graph is None:
        raise PreconditionError(f"search found no graph for {(n, k, s, r)}")
    value = count_cliques(best_graph, r)
    if value != best:
        raise AssertionError(f"witness count {value} disagrees with search value {best}")
    return SearchRecord(params, value, graph6.encode(best_graph), nodes, maximal,
                        time.perf_counter() - t0, theorem_gap(params, value))


# -- batch driver ------------------------------------------------------------


@dataclass(frozen=True)
class SweepRow:
    n: int
    k: int
    s: int
    r: int
    value: int
    theorem_value: int | None
    theorem_gap: int | None
    matching_value: int | None
    cached: bool

    COLUMNS = ("n", "k", "s", "r", "value", "theorem_value", "theorem_gap", "matching_value", "cached")

    def as_tuple(self) -> tuple:
        return tuple(getattr(self, c) for c in self.COLUMNS)


@dataclass
class SweepResult:
    records: list[SearchRecord]
    table: list[SweepRow]
    explored: int = 0


def grid(ns: Iterable[int], ks: Iterable[int] | None = None, ss: Iterable[int] = (2,),
         rs: Iterable[int] = (2,), k_offset: int | None = None) -> list[tuple[int, int, int, int]]:
    """Cartesian product of the ranges; ``k_offset`` ties ``k`` to ``n + k_offset``."""
    out = []
    for n in ns:
        klist = [n + k_offset] if k_offset is not None else list(ks or ())
        for k in klist:
            for s in ss:
                for r in rs:
                    out.append((n, k, s, r))
    return out


def comparison_row(rec: SearchRecord, cached: bool) -> SweepRow:
    p = rec.params
    tv = None if rec.theorem_gap is None else rec.value - rec.theorem_gap
    mv = None
    if p.k > p.n and p.n >= 2 * p.s + 1:
        mv = matching_turan_value(p.n, p.s, p.r)
    return SweepRow(p.n, p.k, p.s, p.r, rec.value, tv, rec.theorem_gap, mv, cached)


def sweep(tuples: Iterable[tuple[int, int, int, int]], options: SearchOptions | None = None,
          cache=None) -> SweepResult:
    """Run (or reuse from ``cache``) one search per ``(n, k, s, r)``."""
    opts = options or SearchOptions()
    records, table, explored = [], [], 0
    for n, k, s, r in tuples:
        params = search_params(n, k, s, r, opts.max_order)
        rec = cache.get((n, k, s, r)) if cache is not None else None
        hit = rec is not None
        if not hit:
            rec = extremal_search(params, opts)
            explored += rec.nodes_explored
            if cache is not None:
                cache.put(rec)
        records.append(rec)
        table.append(comparison_row(rec, hit))
    return SweepResult(records, table, explored)


def lower_bounds(params: FamilyParams) -> dict[Family, int]:
    """Formula counts of every applicable family (``k >= 5`` only)."""
    if params.k < 5 or params.s < 1:
        return {}
    return {f: formula_clique_count(f, params) for f in applicable_families(params)}
