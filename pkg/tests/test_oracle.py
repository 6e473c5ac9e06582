import dataclasses

import pytest
from hypothesis import given

from mec.algorithms import algorithm1, kk_greedy
from mec.bounds import lower_bound, rank_weights
from mec.graph import ColoringSolution, WeightedGraph, path_graph, star_graph, validate_solution, validate_tree
from mec.oracle import OracleBudgetExceeded, check_certificate, default_budget, exact_mec

from oracles import count_matching_partitions, naive_opt
from strategies import graphs, trees

PATH = path_graph([100, 1, 1, 100])


def test_examples():
    c = exact_mec(WeightedGraph(2, ((0, 1, 9),)))
    assert (c.opt, c.s_star) == (9, 1)
    c = exact_mec(star_graph([7, 5, 2]))
    assert (c.opt, c.s_star) == (14, 3)
    c = exact_mec(PATH)
    assert (c.opt, c.s_star) == (102, 3)
    assert [sorted(x) for x in c.solution.classes] == [[0, 3], [1], [2]]
    assert c.weights == (100, 1, 1)


def test_empty():
    c = exact_mec(WeightedGraph(3))
    assert c.opt == 0 and c.s_star == 0


def test_check_certificate():
    rep = check_certificate(star_graph([7, 5, 2]), exact_mec(star_graph([7, 5, 2])))
    assert rep.ok
    c = exact_mec(PATH)
    prof = rank_weights(PATH)
    assert prof.y == (100, 1)
    rep = check_certificate(PATH, c, prof)
    assert rep.ok and lower_bound(PATH) == 101


def test_check_certificate_tampered():
    c = exact_mec(PATH)
    bad = ColoringSolution.from_classes(PATH, [[0, 1, 3], [2]])
    rep = check_certificate(PATH, dataclasses.replace(c, solution=bad, opt=bad.total, s_star=2))
    assert not rep.valid and not rep.ok


def test_budget_exceeded_carries_incumbent():
    g = PATH
    with pytest.raises(OracleBudgetExceeded) as info:
        exact_mec(g, budget=1)
    best = info.value.best
    assert validate_solution(g, best) is None
    assert best.total <= kk_greedy(g)[0].total
    with pytest.raises(ValueError):
        exact_mec(g, budget=0)


def test_env_budget(monkeypatch):
    monkeypatch.setenv("MEC_ORACLE_BUDGET", "123")
    assert default_budget() == 123
    monkeypatch.delenv("MEC_ORACLE_BUDGET")
    assert default_budget() == 50_000_000


@given(graphs(max_n=7, max_m=6))
def test_enumeration_complete(g):
    c = exact_mec(g, prune=False)
    assert c.leaves == count_matching_partitions(g.edges)


@given(graphs(max_n=7, max_m=6, max_w=6))
def test_matches_naive(g):
    assert exact_mec(g).opt == naive_opt(g.edges)


@given(graphs(max_n=8, max_m=9))
def test_certificate_general_graphs(g):
    c = exact_mec(g)
    assert validate_solution(g, c.solution) is None
    assert check_certificate(g, c).ok
    assert c.s_star >= g.max_degree
    assert list(c.weights) == sorted(c.weights, reverse=True)
    assert lower_bound(g) <= c.opt <= kk_greedy(g)[0].total
    if g.m:
        assert kk_greedy(g)[0].total <= 2 * c.opt - c.weights[0]


@given(trees(max_n=10))
def test_sandwich_trees(g):
    c = exact_mec(g)
    for r in range(g.n):
        assert c.opt <= algorithm1(validate_tree(g, r))[0].total
    assert lower_bound(g) <= c.opt


@given(trees(max_n=9))
def test_deterministic_and_unpruned_agree(g):
    a, b = exact_mec(g), exact_mec(g)
    assert a == b
    assert exact_mec(g, prune=False).opt == a.opt


@given(graphs(max_n=7, max_m=7))
def test_class_cap_heuristic_is_opt_at_two_delta(g):
    # never worse than unrestricted; here it happens to reach OPT too
    capped = exact_mec(g, class_cap=max(1, 2 * g.max_degree - 1))
    assert capped.opt >= exact_mec(g).opt
    assert validate_solution(g, capped.solution) is None
