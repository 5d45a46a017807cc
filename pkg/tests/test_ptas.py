import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graph, line_graph
from evds.domination import brute_force_opt_evds, exact_evds, is_evds, matching_size
from evds.errors import BoundViolation, InfeasibleError
from evds.geometry import edge_neighborhood
from evds.instances import random_small_instance
from evds.ptas import (
    CollectionEntry,
    PtasParams,
    SeparatedCollection,
    default_r_cap,
    expand_neighborhood,
    ptas_evds,
    verify_separation,
)

# subgraph-oracle counterexample to summing local optima: one collection entry
# whose S leaves out one edge, yet S alone needs more edges than the whole graph
LOCAL_SUM_COUNTEREXAMPLE = [
    [2.12, 0.512], [1.14, 1.64], [2.178, 1.586], [0.404, 2.297], [2.243, 1.999],
    [2.027, 1.26], [1.798, 2.762], [2.696, 0.516], [1.763, 2.399],
]


def adjacent_pool(g, s):
    return set(s) | {f for e in s for f in edge_neighborhood(g, e)}


def test_params():
    p = PtasParams(0.5)
    assert p.rho == 1.5
    assert p.r_cap == max(16, math.ceil(16 * math.log(2)) + 8)
    assert default_r_cap(2.0) == 16
    assert default_r_cap(0.1) == math.ceil(80 * math.log(10)) + 8
    for bad in (0, -1, math.inf, math.nan):
        with pytest.raises(ValueError):
            PtasParams(bad)


def test_expand_isolated_edge():
    g = line_graph(3)
    x = expand_neighborhood(g, {1}, 1, PtasParams(0.5))
    assert (x.r1, x.S, x.Q) == (0, {1}, {1})


@pytest.mark.parametrize("eps, r1, s", [(0.1, 1, {0, 1, 2}), (1.0, 0, {1}), (3.0, 0, {1})])
def test_expand_middle_of_three(eps, r1, s):
    g = line_graph(3)
    x = expand_neighborhood(g, range(3), 1, PtasParams(eps))
    assert x.r1 == r1 and x.S == s and x.Q == {0, 1, 2}


def test_expand_errors():
    g = line_graph(3)
    with pytest.raises(ValueError):
        expand_neighborhood(g, {0}, 2, PtasParams(1.0))


def test_expand_respects_cap():
    # long path: matching keeps growing by 2 per 4 hops, so rho near 1 never settles early
    g = line_graph(60)
    with pytest.raises(BoundViolation):
        expand_neighborhood(g, range(g.m), 0, PtasParams(0.01, r_cap=2))


def test_ptas_single_edge():
    g = graph([(0, 0), (0.5, 0)])
    res = ptas_evds(g, PtasParams(1.0))
    assert res.solution.edges == {0} and res.collection.k == 1


def test_ptas_two_far_components():
    g = graph([(0, 0), (0.5, 0), (10, 0), (10.5, 0)])
    res = ptas_evds(g, PtasParams(0.5))
    assert res.collection.k == 2
    assert res.solution.edges == {0, 1}
    assert verify_separation(g, res.collection)


def test_ptas_isolated_vertex():
    with pytest.raises(InfeasibleError):
        ptas_evds(graph([(0, 0), (0.5, 0), (5, 5)]), PtasParams(1.0))


def test_verify_separation_examples():
    g = line_graph(8)
    one = SeparatedCollection([CollectionEntry(0, 0, frozenset({0}), frozenset({0}))])
    assert verify_separation(g, one)
    shared = SeparatedCollection(
        [CollectionEntry(0, 0, frozenset({0, 1}), frozenset()), CollectionEntry(1, 0, frozenset({1}), frozenset())]
    )
    assert not verify_separation(g, shared)
    far = SeparatedCollection(
        [CollectionEntry(0, 0, frozenset({0}), frozenset()), CollectionEntry(5, 0, frozenset({5}), frozenset())]
    )
    assert verify_separation(g, far)
    close = SeparatedCollection(
        [CollectionEntry(0, 0, frozenset({0}), frozenset()), CollectionEntry(4, 0, frozenset({4}), frozenset())]
    )
    assert not verify_separation(g, close)


def test_collection_json_round_trip():
    g = random_small_instance(np.random.default_rng(5))
    c = ptas_evds(g, PtasParams(1.0)).collection
    assert SeparatedCollection.from_json(c.to_json()).entries == c.entries


@pytest.mark.parametrize("seed", range(30))
def test_twenty_points_in_a_square(seed):
    r = np.random.default_rng(seed)
    while True:
        g = graph(r.uniform(0, 3, (20, 2)))
        if not g.isolated_vertices():
            break
    res = ptas_evds(g, PtasParams(1.0))
    assert is_evds(g, res.solution)
    assert verify_separation(g, res.collection)
    assert len(res.solution) <= 2 * len(exact_evds(g))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([0.5, 1.0, 2.0]))
def test_structural_invariants(seed, eps):
    g = random_small_instance(np.random.default_rng(seed))
    params = PtasParams(eps)
    res = ptas_evds(g, params)
    entries = res.collection.entries
    # Q sets partition the edge set, each S sits inside its Q
    assert set().union(*(e.Q for e in entries)) == set(range(g.m))
    assert sum(len(e.Q) for e in entries) == g.m
    for i, e in enumerate(entries):
        assert e.S <= e.Q
        assert all(not (e.S & prev.Q) for prev in entries[:i])
        assert e.r1 <= params.r_cap
        assert matching_size(g, e.Q) <= params.rho * matching_size(g, e.S)
    assert verify_separation(g, res.collection)
    assert is_evds(g, res.solution)
    opt = len(exact_evds(g))
    assert len(res.solution) <= (1 + eps) * opt
    local = sum(len(brute_force_opt_evds(g, e.S, pool=adjacent_pool(g, e.S))) for e in entries)
    assert local <= opt


def test_local_sum_fails_for_the_subgraph_reading():
    g = graph(LOCAL_SUM_COUNTEREXAMPLE)
    res = ptas_evds(g, PtasParams(1.0))
    (entry,) = res.collection.entries
    assert entry.S == frozenset(range(11)) and g.m == 12
    opt = exact_evds(g)
    assert sorted(opt.edges) == [0, 4]
    # with candidates limited to S the local optimum exceeds the global one
    assert len(brute_force_opt_evds(g, entry.S)) == 3
    # letting candidates include edges adjacent to S restores the bound
    assert len(brute_force_opt_evds(g, entry.S, pool=adjacent_pool(g, entry.S))) <= 2
