from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from rigikit import graphs as G
from rigikit.graphs import Graph
from rigikit.rigidity import (
    GenericConfiguration, PreconditionError, RankOracle, almost_cone_conditions, bridges,
    graphic_rank, in_some_circuit, is_circuit, is_independent, is_minimally_rigid, is_rigid,
    maxwell_bound, rank_d, rigidity_matrix,
)
from rigikit.ffield import field_rank


def subsets(edges):
    for r in range(len(edges) + 1):
        yield from combinations(edges, r)


def test_rigidity_matrix_shape_and_rank():
    g = G.complete(4)
    cfg = GenericConfiguration(2, 4, seed=1)
    m = rigidity_matrix(g, cfg)
    assert (m.rows, m.cols) == (6, 8)
    assert field_rank(m) == 5


def test_configuration_is_seeded():
    a = GenericConfiguration(3, 6, seed=5)
    assert a.coords == GenericConfiguration(3, 6, seed=5).coords
    assert a.coords != GenericConfiguration(3, 6, seed=6).coords


@pytest.mark.parametrize("backend", ["field", "rational"])
def test_complete_graph_ranks(backend):
    for d in (1, 2, 3):
        for n in range(1, 8):
            o = RankOracle(n, d, backend=backend)
            r = o.rank(G.complete(n).edges) if n > 1 else 0
            want = maxwell_bound(n, d) if n >= d + 1 else n * (n - 1) // 2
            assert r == want


def test_d1_agrees_with_graphic_rank_on_all_subsets_of_k5():
    o = RankOracle(5, 1)
    for s in subsets(G.complete(5).edges):
        assert o.rank(s) == graphic_rank(s)


@given(st.integers(2, 8), st.data())
def test_d1_agrees_with_graphic_rank_random(n, data):
    pool = G.complete_edges(range(n))
    s = data.draw(st.lists(st.sampled_from(pool), unique=True))
    o = RankOracle(n, 1, seed=data.draw(st.integers(0, 10**6)))
    assert o.rank(s) == graphic_rank(s)
    assert RankOracle(n, 1, backend="graphic").rank(s) == graphic_rank(s)


@st.composite
def two_subsets(draw):
    n = draw(st.integers(3, 8))
    d = draw(st.integers(1, 3))
    pool = G.complete_edges(range(n))
    a = draw(st.sets(st.sampled_from(pool)))
    b = draw(st.sets(st.sampled_from(pool)))
    return n, d, frozenset(a), frozenset(b)


@given(two_subsets())
def test_rank_is_monotone_submodular_and_bounded(args):
    n, d, a, b = args
    o = RankOracle(n, d)
    ra, rb = o.rank(a), o.rank(b)
    assert 0 <= ra <= len(a)
    assert o.rank(a | b) + o.rank(a & b) <= ra + rb
    assert o.rank(a & b) <= ra <= o.rank(a | b)


@given(two_subsets())
def test_field_and_rational_backends_agree(args):
    n, d, a, _ = args
    assert RankOracle(n, d).rank(a) == RankOracle(n, d, backend="rational", seed=99).rank(a)


def test_rank_is_memoized():
    o = RankOracle(5, 2)
    s = G.complete(5).edges
    o.rank(s)
    q = o.queries
    o.rank(list(reversed(s)))
    assert o.queries == q


def test_out_of_range_edge_rejected():
    with pytest.raises(ValueError):
        RankOracle(3, 2).rank([(0, 3)])
    with pytest.raises(ValueError):
        RankOracle(3, 0)
    with pytest.raises(ValueError):
        RankOracle(3, 2, backend="nope")


def test_trials_take_maximum():
    o = RankOracle(6, 3, trials=3)
    assert o.rank(G.complete(6).edges) == 12


def test_spanned_matches_rank_definition():
    g = G.banana(3)
    o = RankOracle.for_graph(g, 3)
    cand = G.complete_edges(range(8))
    fast = set(o.spanned(g.edges, cand))
    r = o.rank(g.edges)
    slow = {e for e in cand if o.rank(set(g.edges) | {e}) == r}
    assert fast == slow


def test_laman_and_circuit_predicates():
    k4 = G.complete(4)
    o = RankOracle.for_graph(k4, 2)
    assert is_circuit(o, k4) and is_rigid(o, k4) and not is_independent(o, k4)
    k4e = k4.remove_edges([(0, 1)])
    assert is_minimally_rigid(o, k4e)
    assert not is_rigid(o, Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)]))
    with pytest.raises(PreconditionError):
        is_circuit(o, [])
    # K_{3,3} in the plane is minimally rigid, K_{3,4} is a circuit
    k34 = G.complete_bipartite(3, 4)
    o = RankOracle.for_graph(k34, 2)
    assert is_circuit(o, k34)
    assert is_minimally_rigid(o, G.complete_bipartite(3, 3))


def test_isolated_vertices_block_rigidity():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2)])
    o = RankOracle.for_graph(g, 2)
    assert not is_rigid(o, g)
    assert is_rigid(o, g.edges)


def test_bridges_and_circuit_membership():
    g = G.cycle(3).add_edges([(2, 3)])
    o = RankOracle.for_graph(g, 1)
    assert bridges(o, g) == {(2, 3)}
    assert in_some_circuit(o, g, 0) and not in_some_circuit(o, g, 3)
    assert rank_d(o, g) == 3


@pytest.mark.parametrize("d", [1, 2, 3])
def test_extension_graphs_are_minimally_rigid(d):
    rng = random.Random(7 + d)
    for _ in range(20):
        g = G.random_extension_graph(d, rng.randint(d + 1, d + 8), rng)
        assert is_minimally_rigid(RankOracle.for_graph(g, d), g)


def test_almost_cone_conditions_report_keys():
    g = G.complete(5)
    c = almost_cone_conditions(RankOracle.for_graph(g, 3), g, [0])
    assert c == {"t": 1, "rigid": True, "edge_count": True, "independent_minus_S": True,
                 "each_in_circuit": True}
