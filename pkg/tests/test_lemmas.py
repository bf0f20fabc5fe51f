import random

import pytest
from hypothesis import given, settings, strategies as st

from extremal_lab import graph6
from extremal_lab.constructions import Family, applicable_families, build_construction, derive_params
from extremal_lab.errors import PreconditionError
from extremal_lab.generators import (
    random_block_tree,
    random_connected,
    random_free_graph,
    random_instances,
    random_two_connected,
)
from extremal_lab.graph import Graph, clique, cycle, independent, join, path, union
from extremal_lab.invariants import block_cut_decompose, is_free, matching_number
from extremal_lab.lemmas import (
    BinomResult,
    LemmaRecord,
    PhiPotential,
    StabilityPartition,
    binom_inequality_check,
    block_cut_star_of,
    blocks_of,
    check_graph,
    contraction_closure_check,
    dirac_kopylov_check,
    exceptional_edges,
    near_perfect_matching_excluding,
    phi_potential,
    random_check,
    run_lemma_checks,
    stability_decompose,
    stability_expected,
)


def chain_of_cycles(sizes):
    edges, order = [], 0
    for i, size in enumerate(sizes):
        verts = list(range(order, order + size)) if i == 0 else [order - 1] + list(range(order, order + size - 1))
        order = verts[-1] + 1
        edges += [(verts[j], verts[(j + 1) % size]) for j in range(size)]
    return Graph.from_edges(order, edges)


# -- binomial inequality


def test_binom_examples():
    assert binom_inequality_check(2, 2, 3, 1, 2) is BinomResult.HOLDS_STRICTLY
    assert binom_inequality_check(2, 2, 2, 2, 2) is BinomResult.HOLDS
    assert binom_inequality_check(3, 5, 4, 1, 0) is BinomResult.PRECONDITION_FAILED
    assert binom_inequality_check(1, 1, 1, 1, 1) is BinomResult.PRECONDITION_FAILED
    assert binom_inequality_check(2, 1, 3, 0, 2) is BinomResult.HOLDS_STRICTLY
    assert binom_inequality_check(2, 1, 2, 0, 1) is BinomResult.HOLDS_STRICTLY
    assert binom_inequality_check(2, 3, 4, 1, 3) is BinomResult.PRECONDITION_FAILED


@given(st.integers(2, 8), st.integers(0, 40), st.integers(0, 40), st.integers(0, 40))
def test_binom_property(r, x, w, z):
    y = w + z - x
    result = binom_inequality_check(r, w, x, y, z)
    if y < 0 or x < w or x < z or x < r:
        assert result is BinomResult.PRECONDITION_FAILED
    elif x > w and x > z:
        assert result is BinomResult.HOLDS_STRICTLY
    else:
        assert result is BinomResult.HOLDS


# -- near-perfect matchings and stars


def test_near_perfect_examples():
    k3 = clique(3)
    for v in range(3):
        m = near_perfect_matching_excluding(k3, block_cut_decompose(k3), v)
        assert len(m) == 1 and m.covered == 0b111 & ~(1 << v)
    bow = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)])
    m = near_perfect_matching_excluding(bow, block_cut_decompose(bow), 0)
    assert len(m) == 2 and m.covered == 0b11110
    g = chain_of_cycles([5, 5, 5])
    assert g.order == 13
    m = near_perfect_matching_excluding(g, block_cut_decompose(g), 1)
    assert m.is_valid_for(g) and len(m) == 6 and m.covered == g.vertex_mask & ~(1 << 1)


def test_near_perfect_preconditions_name_the_block():
    p3 = path(3)
    with pytest.raises(PreconditionError, match="not strict"):
        near_perfect_matching_excluding(p3, block_cut_decompose(p3), 0)
    c4 = cycle(4)
    with pytest.raises(PreconditionError, match=r"block \[0, 1, 2, 3\] has even order"):
        near_perfect_matching_excluding(c4, block_cut_decompose(c4), 0)
    theta = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 2)])
    with pytest.raises(PreconditionError, match=r"block \[0, 1, 2, 3, 4\] is not Hamiltonian"):
        near_perfect_matching_excluding(theta, block_cut_decompose(theta), 0)


def test_star_examples():
    bow = block_cut_star_of([clique(3), clique(3)])
    assert bow.order == 5 and matching_number(bow) == 2 and bow.degree(0) == 4
    assert block_cut_star_of([clique(2)]) == clique(2)
    g = block_cut_star_of([cycle(4), cycle(5)])
    assert g.order == 8 and matching_number(g) == 4
    with pytest.raises(PreconditionError):
        block_cut_star_of([independent(2)])


@settings(max_examples=40)
@given(st.integers(0, 10 ** 6))
def test_near_perfect_on_generated_trees(seed):
    g = random_block_tree(seed)
    tree = block_cut_decompose(g)
    for v in range(g.order):
        m = near_perfect_matching_excluding(g, tree, v)
        assert m.is_valid_for(g)
        assert m.covered == g.vertex_mask & ~(1 << v)


@settings(max_examples=40)
@given(st.integers(0, 10 ** 6))
def test_star_matching_bound(seed):
    g = random_block_tree(seed, odd_only=False)
    assert matching_number(g) >= matching_number(block_cut_star_of(blocks_of(g)))


# -- path and cycle lemmas


def test_dirac_kopylov_examples():
    rep = dirac_kopylov_check(cycle(5))
    assert rep.passed and len(rep.path) == 5 and rep.kopylov.status == "pass"
    rep = dirac_kopylov_check(clique(4))
    assert rep.passed and len(rep.path) == 4
    rep = dirac_kopylov_check(path(4))
    assert rep.dirac.status == "pass" and rep.kopylov.status == "skipped"
    rep = dirac_kopylov_check(union(clique(3), clique(3)))
    assert rep.dirac.status == "skipped" and rep.passed


@settings(max_examples=40)
@given(st.integers(0, 10 ** 6))
def test_dirac_kopylov_on_generated_graphs(seed):
    assert dirac_kopylov_check(random_connected(seed)).passed
    rep = dirac_kopylov_check(random_two_connected(seed))
    assert rep.passed and rep.kopylov.status == "pass"


# -- contraction


def test_contraction_examples():
    assert contraction_closure_check(cycle(4), 5, 2).passed
    assert contraction_closure_check(clique(4), 5, 2).passed
    with pytest.raises(PreconditionError):
        contraction_closure_check(clique(5), 5, 2)


@settings(max_examples=30)
@given(st.integers(0, 10 ** 6), st.sampled_from([5, 6, 7]), st.sampled_from([2, 3, 4]))
def test_contraction_on_generated_free_graphs(seed, k, s):
    rep = contraction_closure_check(random_free_graph(seed, k, s), k, s)
    assert rep.passed and not rep.violations


# -- stability partition


def test_stability_g1_example():
    params = derive_params(10, 5, 3)
    g = build_construction("G1", params)
    part = stability_decompose(g, 3)
    assert part.X == {0, 1} and part.Y == {2, 3, 4, 5, 6} and part.Z == {7, 8, 9}
    assert part.t0 == 3 and not part.violations(g)
    assert phi_potential(g, part) == PhiPotential(17, 9, 6)
    assert exceptional_edges(g, part) == []


def test_stability_trivial_examples():
    assert stability_decompose(independent(6), 3) is None
    for p in (3, 4, 5):
        m = 6
        g = join(clique(p - 1), independent(m))
        part = stability_decompose(g, p)
        assert part.X == set(range(p - 1)) and part.Y == set(range(p - 1, p - 1 + m)) and not part.Z
        a = p - 1
        tri = phi_potential(g, part, "triple")
        assert tri.key() == (a * (a - 1) // 2 + a * m, a * (a - 1) * (a - 2) // 6 + a * (a - 1) // 2 * m, m)
        quad = phi_potential(g, part, "quadruple")
        assert quad.key() == tri.key() + (0,)
        assert exceptional_edges(g, part) == []
    with pytest.raises(PreconditionError):
        stability_decompose(clique(3), 2)


def test_stability_prefers_largest_y_then_least_x():
    # two disjoint copies of K_2 v I_m: the larger Y wins
    g = union(join(clique(2), independent(2)), join(clique(2), independent(3)))
    part = stability_decompose(g, 3)
    assert part is None  # the K2 v I2 side leaves degree-2 vertices in Z
    g = union(join(clique(2), independent(3)), join(clique(2), independent(3)))
    assert stability_decompose(g, 3) is None
    g = join(clique(2), union(clique(3), independent(2)))
    # Y = the two isolated vertices of the inner union; Z = the K3 with degree 4
    part = stability_decompose(g, 3)
    assert part.X == {0, 1} and part.Y == {5, 6} and part.Z == {2, 3, 4}


def test_g6_has_one_exceptional_edge():
    for n, k, s in [(12, 8, 5), (20, 6, 3), (25, 8, 4)]:
        params = derive_params(n, k, s)
        g = build_construction("G6", params)
        part = stability_decompose(g, params.p)
        assert len(exceptional_edges(g, part)) == 1


def test_phi_and_exceptional_reject_invalid_partitions():
    g = build_construction("G1", derive_params(10, 5, 3))
    bad = StabilityPartition(frozenset({0, 2}), frozenset(), frozenset(set(range(10)) - {0, 2}))
    assert bad.violations(g)
    with pytest.raises(PreconditionError):
        phi_potential(g, bad)
    with pytest.raises(PreconditionError):
        exceptional_edges(g, bad)
    with pytest.raises(PreconditionError):
        phi_potential(g, stability_decompose(g, 3), "pair")


def test_phi_ordering():
    assert PhiPotential(3, 1, 2) < PhiPotential(3, 2, 0)
    assert PhiPotential(3, 1, 2, 1) > PhiPotential(3, 1, 2, 0)
    with pytest.raises(TypeError):
        PhiPotential(3, 1, 2) < PhiPotential(3, 1, 2, 0)


STABILITY_GRID = [(n, k, s) for k in range(5, 12) for s in range(2, 9) for n in range(2 * s + 2, 31, 3)]


@pytest.mark.parametrize("n, k, s", STABILITY_GRID)
def test_stability_on_constructions(n, k, s):
    params = derive_params(n, k, s)
    for fam in applicable_families(params):
        if fam is Family.STAR:
            continue
        g = build_construction(fam, params)
        part = stability_decompose(g, params.p)
        if not stability_expected(fam, params):
            assert part is None
            continue
        assert part is not None and not part.violations(g)
        assert len(part.X) == params.p - 1
        ymask = sum(1 << y for y in part.Y)
        xmask = sum(1 << x for x in part.X)
        assert all(g.neighbors(y) == xmask for y in part.Y)
        assert all(g.neighbors(y) & ymask == 0 for y in part.Y)


def test_stability_invariant_under_relabelling():
    rng = random.Random(3)
    params = derive_params(20, 7, 5)
    g = build_construction("G1", params)
    base = stability_decompose(g, params.p)
    for _ in range(10):
        perm = list(range(g.order))
        rng.shuffle(perm)
        part = stability_decompose(g.relabel(perm), params.p)
        assert (len(part.X), len(part.Y), part.t0) == (len(base.X), len(base.Y), base.t0)


# -- generators


def test_generators_are_deterministic():
    assert random_block_tree(42) == random_block_tree(42)
    a, b = random_instances("block_tree", 42), random_instances("block_tree", 42)
    assert a.graph == b.graph and a.tree == b.tree and a.tree.is_strict
    assert random_free_graph(5, 5, 3) == random_free_graph(5, 5, 3)


def test_generator_contracts():
    for seed in range(30):
        assert is_free(random_instances("free_graph", seed, k=5, s=3, n=10).graph, 5, 3)
        g = random_instances("two_connected", seed, n=8).graph
        assert len(block_cut_decompose(g).blocks) == 1
        t = random_instances("block_tree", seed).tree
        assert t.is_strict and len(t.blocks) <= 6
        assert all(len(b) % 2 == 1 and 3 <= len(b) <= 9 for b in t.blocks)
        assert random_instances("connected", seed).graph.is_connected()


def test_generator_bound_errors():
    with pytest.raises(PreconditionError):
        random_instances("tree", 1)
    with pytest.raises(PreconditionError):
        random_two_connected(1, n=2)
    with pytest.raises(PreconditionError):
        random_block_tree(1, sizes=(4, 4))
    with pytest.raises(Exception):
        random_connected(1, n=65)


# -- records


def test_record_lines_roundtrip():
    rec = LemmaRecord("star", 12, "Bw", True, "nu=1;nu_star=1")
    line = rec.to_line()
    assert line == "star\t12\tBw\tpass\tnu=1;nu_star=1"
    assert LemmaRecord.from_line(line) == rec
    assert LemmaRecord.from_line("binom\t-\t-\tfail\tx").seed is None
    with pytest.raises(ValueError):
        LemmaRecord.from_line("star\t1\tBw\tmaybe\tx")


def test_run_lemma_checks_all_pass():
    for lemma in ("dirac-kopylov", "binom", "near-perfect", "star", "contraction", "stability"):
        recs = list(run_lemma_checks(lemma, 15, seed=100))
        assert len(recs) == 15 and all(r.passed for r in recs), lemma
        assert [r.seed for r in recs] == list(range(100, 115))
        assert random_check(lemma, 104) == recs[4]


def test_check_graph_dispatch():
    g = graph6.decode("D~{")
    assert check_graph("dirac-kopylov", g).passed
    assert check_graph("contraction", g, k=6, s=2).passed
    with pytest.raises(PreconditionError):
        check_graph("binom", g)
    with pytest.raises(PreconditionError):
        check_graph("nope", g)


def test_random_binom_trials_meet_preconditions():
    for seed in range(300):
        rec = random_check("binom", seed)
        assert rec.passed and not rec.witness.endswith("precondition_failed"), rec
