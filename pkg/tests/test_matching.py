from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from rigikit import graphs as G
from rigikit.matching import (
    PairFamily, dl_bound, is_matching, k67_matching_instance, matching_number, union_of,
)
from rigikit.rigidity import RankOracle


def brute_nu(oracle, fam):
    for s in range(len(fam), -1, -1):
        for sub in combinations(fam.pairs, s):
            if is_matching(oracle, sub):
                return s
    return 0


@st.composite
def small_families(draw):
    n = draw(st.integers(3, 6))
    d = draw(st.integers(1, 2))
    pool = G.complete_edges(range(n))
    edges = draw(st.lists(st.sampled_from(pool), unique=True, min_size=2, max_size=12))
    pairs = tuple((edges[i], edges[i + 1]) for i in range(0, len(edges) - 1, 2))
    return n, d, PairFamily(pairs)


@given(small_families())
def test_matching_number_matches_brute_force(args):
    n, d, fam = args
    o = RankOracle(n, d)
    res = matching_number(o, fam)
    assert res.nu == brute_nu(o, fam)
    assert is_matching(o, res.witness) and len(res.witness) == res.nu
    # the refutation counter covers every strictly larger sub-family
    from math import comb
    assert res.refuted == sum(comb(len(fam), s) for s in range(res.nu + 1, len(fam) + 1))


@given(small_families())
def test_dl_bound_is_an_upper_bound(args):
    n, d, fam = args
    o = RankOracle(n, d)
    nu = matching_number(o, fam).nu
    whole = dl_bound(o, fam, frozenset(), [fam.pairs])
    singles = dl_bound(o, fam, frozenset(), [[p] for p in fam.pairs])
    assert nu <= whole.value and nu <= singles.value


def test_dl_bound_validates_inputs():
    o = RankOracle(4, 2)
    fam = PairFamily((((0, 1), (1, 2)), ((2, 3), (0, 3))))
    with pytest.raises(ValueError):
        dl_bound(o, fam, frozenset(), [fam.pairs[:1]])
    with pytest.raises(ValueError):
        # K_4 minus an edge spans the missing edge in the plane, so it is not a flat
        dl_bound(o, fam, frozenset(G.complete(4).edges[1:]), [fam.pairs])
    cert = dl_bound(o, fam, frozenset(), [fam.pairs])
    assert cert.to_dict()["value"] == cert.value


def test_pair_family_round_trip_and_validation():
    fam = PairFamily((((1, 0), (2, 1)),))
    assert fam.pairs == (((0, 1), (1, 2)),)
    assert PairFamily.loads('{"pairs": [[[0, 1], [1, 2]]]}') == fam
    assert PairFamily.from_dict(fam.to_dict()) == fam
    with pytest.raises(ValueError):
        PairFamily((((0, 1), (1, 0)),))
    assert union_of(fam.pairs) == {(0, 1), (1, 2)}


def test_k67_instance_shape():
    g, fam, d = k67_matching_instance(2)
    assert (g.n, g.m, len(fam), d) == (13, 42, 21, 4)
    assert fam.ground() == g.edge_set()
    with pytest.raises(ValueError):
        k67_matching_instance(1)


def test_search_guard():
    g, fam, d = k67_matching_instance(3)
    with pytest.raises(ValueError):
        matching_number(RankOracle.for_graph(g, d), fam)
