from math import comb

import pytest
from hypothesis import given, strategies as st

from extremal_lab.constructions import (
    Family,
    FamilyParams,
    applicable_families,
    build_construction,
    construction_id,
    derive_params,
    formula_clique_count,
    matching_turan_value,
    minimum_order,
    parse_construction_id,
    theorem_evaluation,
    theorem_value,
)
from extremal_lab.errors import ParameterError
from extremal_lab.graph import clique, independent, join, replicate, union
from extremal_lab.invariants import circumference, count_cliques, is_free, matching_number


def test_derive_params_examples():
    p = derive_params(10, 5, 3)
    assert (p.p, p.parity, p.a, p.b) == (3, "odd", 1, 0)
    p = derive_params(20, 10, 7)
    assert (p.p, p.parity, p.c, p.d, p.q, p.t) == (5, "even", 0, 3, 1, 0)
    p = derive_params(20, 9, 4)
    assert p.p == 5 and p.star_branch and p.a is None
    with pytest.raises(ParameterError):
        derive_params(10, 4, 3)
    with pytest.raises(ParameterError):
        derive_params(10, 5, 0)


@given(st.integers(5, 30), st.integers(1, 40))
def test_decomposition_identities(k, s):
    p = derive_params(50, k, s)
    assert p.p >= 3
    if s < p.p:
        assert p.star_branch
        return
    rest = s - p.p + 1
    if p.parity == "odd":
        assert rest == p.a * (p.p - 2) + p.b and 0 <= p.b <= p.p - 3
    else:
        assert rest == p.c * (p.p - 1) + p.d and 0 <= p.d <= p.p - 2
        assert rest == p.q * (p.p - 2) + p.t and 0 <= p.t <= p.p - 3


def test_g1_example():
    params = derive_params(10, 5, 3)
    g = build_construction("G1", params)
    assert (g.order, g.edge_count) == (10, 17)
    assert formula_clique_count("G1", params, 2) == 17
    assert formula_clique_count("G1", params, 3) == 9
    assert count_cliques(g, 3) == 9
    assert (matching_number(g), circumference(g)) == (3, 4)


def test_g3_with_t_zero_layout():
    params = derive_params(20, 8, 6)  # p = 4, s-p+1 = 3 = 1*2 + 1 -> t = 1
    assert params.t == 1
    params = derive_params(20, 8, 5)  # s-p+1 = 2 = 1*2 + 0
    assert (params.q, params.t) == (1, 0)
    expected = join(clique(1), union(join(clique(2), independent(20 - 4 + 1 - 5)), replicate(1, clique(5))))
    assert build_construction("G3", params) == expected


def test_g6_example():
    params = derive_params(12, 8, 5)
    assert (params.p, params.c, params.d) == (4, 0, 2)
    g = build_construction("G6", params)
    expected = join(clique(1), join(clique(2), union(clique(2), independent(7))))
    assert g == expected
    assert g.order == 12 and is_free(g, 8, 5)


def test_star_examples():
    params = derive_params(20, 9, 4)
    assert formula_clique_count("STAR", params) == comb(4, 2) + 16 * 4 == 70
    with pytest.raises(ParameterError, match="p > s"):
        build_construction("STAR", derive_params(20, 5, 4))


def test_parameter_errors_name_the_constraint():
    with pytest.raises(ParameterError, match="odd k"):
        build_construction("G1", derive_params(20, 6, 4))
    with pytest.raises(ParameterError, match="b <= p-3"):
        build_construction("G2", derive_params(20, 5, 3))
    with pytest.raises(ParameterError, match="n >= 11"):
        build_construction("G1", derive_params(6, 5, 5))
    with pytest.raises(ParameterError, match="unknown family"):
        Family.parse("G7")


def test_minimum_order_is_tight():
    params = derive_params(40, 10, 9)
    for fam in applicable_families(params):
        lo = minimum_order(fam, params)
        assert build_construction(fam, params.with_n(lo)).order == lo
        if lo > 1:
            with pytest.raises(ParameterError):
                build_construction(fam, params.with_n(lo - 1))


def test_ids_roundtrip():
    params = derive_params(10, 5, 3)
    text = construction_id("g1", params)
    assert text == "G1[n=10,k=5,s=3]"
    assert parse_construction_id(text) == (Family.G1, params)
    with pytest.raises(ParameterError):
        parse_construction_id("G1(n=10)")


def test_theorem_examples():
    assert theorem_value(derive_params(10, 5, 3)) == 17
    ev = theorem_evaluation(derive_params(10, 5, 3))
    assert ev.branch.startswith("odd: b <") and ev.families == (Family.G1,)
    assert theorem_value(derive_params(20, 9, 4)) == 70
    # s-p+1 = 1 = 0*(p-1) + 1, so d = 1 = p-2: families G3, G4, G6
    ev = theorem_evaluation(derive_params(30, 6, 3))
    assert ev.branch == "even: d = p-2"
    assert ev.families == (Family.G3, Family.G4, Family.G6)
    assert ev.value == max(ev.values.values()) == 58


def test_theorem_below_threshold_excludes_family():
    ev = theorem_evaluation(derive_params(9, 8, 6))
    assert ev.below_threshold
    assert set(ev.excluded) | set(ev.values) == set(ev.families)
    with pytest.raises(ParameterError):
        theorem_value(FamilyParams(30, 4, 3))


def test_matching_turan_examples():
    assert matching_turan_value(7, 2, 2) == 11
    assert matching_turan_value(7, 3, 2) == 21
    assert matching_turan_value(9, 2, 3) == 10
    with pytest.raises(ParameterError):
        matching_turan_value(6, 3, 2)


GRID = [(k, s) for k in range(5, 11) for s in range((k - 1) // 2 + 1, (k - 1) // 2 + 6)]


@pytest.mark.parametrize("k, s", GRID)
def test_constructions_are_free_and_formulas_exact(k, s):
    base = derive_params(40, k, s)
    for fam in applicable_families(base):
        lo = minimum_order(fam, base)
        for n in (lo, lo + 10):
            params = base.with_n(n)
            g = build_construction(fam, params)
            assert g.order == n
            assert is_free(g, k, s), (fam, n, k, s)
            if n <= 40:
                for r in range(2, 7):
                    assert formula_clique_count(fam, params, r) == count_cliques(g, r)


@pytest.mark.parametrize("k, s", GRID)
def test_matching_numbers_of_layouts(k, s):
    params = derive_params(40, k, s)
    fams = applicable_families(params)
    if Family.G1 in fams:
        assert matching_number(build_construction(Family.G1, params)) == s - params.b
    if Family.G2 in fams:
        assert matching_number(build_construction(Family.G2, params)) == s
    if Family.G6 in fams:
        assert matching_number(build_construction(Family.G6, params)) == s + 1 - params.d


@given(st.integers(5, 12), st.integers(1, 8), st.integers(2, 5), st.integers(1, 45))
def test_theorem_value_monotone_in_n(k, s, r, n):
    a = theorem_value(derive_params(n, k, s, r))
    b = theorem_value(derive_params(n + 1, k, s, r))
    assert b >= a
