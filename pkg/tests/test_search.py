import json
from functools import lru_cache

import networkx as nx
import pytest

from extremal_lab import graph6
from extremal_lab.cache import ResultCache, default_cache_path
from extremal_lab.constructions import FamilyParams, matching_turan_value, theorem_value
from extremal_lab.errors import CacheIntegrityError, CapacityError, ParameterError
from extremal_lab.invariants import count_cliques, is_free
from extremal_lab.search import (
    SearchOptions,
    SearchRecord,
    extremal_search,
    grid,
    lower_bounds,
    search_params,
    split_point,
    sweep,
)


@lru_cache(maxsize=None)
def atlas_profiles(n):
    """(circumference, matching number, K2..K7 counts) of every graph on n vertices, up to isomorphism."""
    out = []
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() != n:
            continue
        circ = max((len(c) for c in nx.simple_cycles(h) if len(c) >= 3), default=0)
        nu = len(nx.max_weight_matching(h, maxcardinality=True))
        counts = [0] * 8
        for c in nx.enumerate_all_cliques(h):
            counts[len(c)] += 1
        out.append((circ, nu, counts))
    return out


def oracle(n, k, s, r):
    return max(c[r] for circ, nu, c in atlas_profiles(n) if circ < k and nu <= s)


ORACLE_GRID = [(n, k, s, r) for n in range(1, 7) for k in range(3, n + 2) for s in range(0, 4) for r in (2, 3, 4)
               if s <= n // 2]


@pytest.mark.parametrize("n, k, s, r", ORACLE_GRID)
def test_search_matches_exhaustive_oracle(n, k, s, r):
    rec = extremal_search((n, k, s, r), seed_incumbent=False)
    assert rec.value == oracle(n, k, s, r)
    rec.verify()


@pytest.mark.parametrize("n, k, s, r", [(7, 5, 2, 2), (7, 4, 3, 3), (7, 6, 3, 2), (7, 8, 2, 3), (7, 3, 3, 2)])
def test_search_matches_oracle_order_seven(n, k, s, r):
    assert extremal_search((n, k, s, r)).value == oracle(n, k, s, r)


def test_search_examples():
    assert extremal_search((5, 6, 2, 2)).value == 10
    assert extremal_search((3, 3, 1, 2)).value == 2
    rec = extremal_search((6, 5, 2, 2))
    assert rec.value == 9
    g = graph6.decode(rec.witness)
    assert g.order == 6 and is_free(g, 5, 2) and count_cliques(g, 2) == 9
    assert rec.theorem_gap == 9 - theorem_value(FamilyParams(6, 5, 2, 2))


def test_capacity_and_parameter_errors():
    with pytest.raises(CapacityError):
        extremal_search((11, 5, 2, 2))
    with pytest.raises(CapacityError):
        search_params(5, 5, 2, 2, max_order=13)
    with pytest.raises(ParameterError):
        extremal_search((5, 2, 2, 2))
    with pytest.raises(ParameterError):
        extremal_search((5, 5, 2, 1))
    with pytest.raises(ParameterError):
        extremal_search((5, 5, 2, 2), jobs=0)
    assert search_params(11, 5, 2, 2, max_order=12).n == 11


def test_split_point_is_a_row_boundary():
    for n in range(2, 13):
        for want in (0, 5, 12, 30):
            depth, rows = split_point(n, want)
            assert depth == sum(n - 1 - i for i in range(rows))
            assert depth >= min(want, n * (n - 1) // 2)


@pytest.mark.parametrize("n, k, s, r", [(8, 5, 2, 2), (8, 6, 3, 3), (8, 9, 3, 2)])
def test_dedup_and_jobs_never_change_value(n, k, s, r):
    runs = {}
    for dedup in (False, True):
        for jobs in (1, 3):
            runs[dedup, jobs] = extremal_search((n, k, s, r), canonical_dedup=dedup, jobs=jobs, split_depth=8)
    assert len({rec.value for rec in runs.values()}) == 1
    for dedup in (False, True):
        assert runs[dedup, 1].nodes_explored == runs[dedup, 3].nodes_explored
        assert runs[dedup, 1] == runs[dedup, 3]
    assert runs[True, 1].nodes_explored <= runs[False, 1].nodes_explored


def test_seeding_never_changes_value():
    for t in [(8, 5, 3, 2), (8, 7, 2, 3), (7, 6, 2, 2)]:
        assert extremal_search(t).value == extremal_search(t, seed_incumbent=False).value


def test_record_roundtrip_and_verify():
    rec = extremal_search((6, 5, 2, 2))
    again = SearchRecord.from_dict(json.loads(json.dumps(rec.to_dict())))
    assert again == rec and again.key == (6, 5, 2, 2)
    bad = SearchRecord.from_dict({**rec.to_dict(), "value": rec.value + 1})
    with pytest.raises(CacheIntegrityError):
        bad.verify()
    with pytest.raises(CacheIntegrityError):
        SearchRecord.from_dict({**rec.to_dict(), "witness": "~~"}).verify()


def test_sweep_with_k_past_n_matches_matching_formula():
    tuples = grid(range(5, 9), ss=(1, 2, 3), rs=(2, 3), k_offset=1)
    result = sweep(tuples)
    for row in result.table:
        if row.n >= 2 * row.s + 1:
            assert row.value == row.matching_value == matching_turan_value(row.n, row.s, row.r)


def test_sweep_cache_hits_skip_search(tmp_path):
    cache = ResultCache(tmp_path / "c.jsonl")
    tuples = grid([6, 7], ks=[5, 6], ss=[2], rs=[2, 3])
    first = sweep(tuples, cache=cache)
    assert first.explored > 0 and not any(r.cached for r in first.table)
    reopened = ResultCache(tmp_path / "c.jsonl")
    assert len(reopened) == len(tuples)
    second = sweep(tuples, cache=reopened)
    assert second.explored == 0 and all(r.cached for r in second.table)
    assert [r.value for r in second.table] == [r.value for r in first.table]
    assert second.records == first.records


def test_cache_reports_corrupt_lines(tmp_path):
    path = tmp_path / "c.jsonl"
    cache = ResultCache(path)
    rec = extremal_search((6, 5, 2, 2))
    cache.put(rec)
    forged = {**rec.to_dict(), "params": {"n": 6, "k": 5, "s": 2, "r": 3}}
    with path.open("a") as fh:
        fh.write("{not json\n")
        fh.write(json.dumps(forged) + "\n")
    loaded = ResultCache(path)
    assert (6, 5, 2, 2) in loaded and (6, 5, 2, 3) not in loaded
    assert [c.lineno for c in loaded.corrupt] == [2, 3]
    assert "unparseable" in loaded.corrupt[0].reason
    with pytest.raises(CacheIntegrityError, match="c.jsonl:3"):
        ResultCache(path, strict=True)


def test_cache_rejects_bad_records(tmp_path):
    cache = ResultCache(tmp_path / "c.jsonl")
    rec = extremal_search((5, 5, 2, 2))
    with pytest.raises(CacheIntegrityError):
        cache.put(SearchRecord.from_dict({**rec.to_dict(), "value": 1}))
    assert len(cache) == 0


def test_default_cache_path_follows_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("EXTREMAL_LAB_CACHE", str(tmp_path / "x.jsonl"))
    assert default_cache_path() == tmp_path / "x.jsonl"


def test_lower_bounds_never_exceed_search():
    for t in [(8, 5, 2, 2), (9, 5, 3, 2), (8, 6, 3, 3)]:
        value = extremal_search(t).value
        bounds = lower_bounds(search_params(*t))
        assert bounds and max(bounds.values()) <= value
    assert lower_bounds(search_params(6, 4, 2, 2)) == {}


def test_options_dedup_default():
    assert not SearchOptions().dedup_for(7) and SearchOptions().dedup_for(8)
    assert SearchOptions(canonical_dedup=True).dedup_for(3)
