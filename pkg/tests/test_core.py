from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings

from conftest import hypergraphs
from oracles import naive_shadow
from shadowlab.construct import clique, low_degree_extremal, prop16_family, shifted
from shadowlab.core import (
    Hypergraph,
    ShadowLabError,
    components,
    degree,
    degrees,
    edge_mask,
    format_ratio,
    link,
    mask_edge,
    max_degree,
    parse_ratio,
    shadow,
    shadow_ratio,
    union,
)


class TestHypergraph:
    def test_edges_are_normalised_to_colex(self):
        h = Hypergraph(3, 5, [(3, 4, 5), (2, 1, 3), (1, 2, 4)])
        assert h.edges == ((1, 2, 3), (1, 2, 4), (3, 4, 5))
        assert h == Hypergraph(3, 5, [(1, 2, 4), (3, 4, 5), (1, 2, 3)])

    @pytest.mark.parametrize(
        "k,n,edges",
        [
            (3, 5, [(1, 2)]),
            (2, 3, [(1, 4)]),
            (2, 3, [(0, 1)]),
            (2, 3, [(1, 2), (2, 1)]),
            (2, 3, [(1, 1)]),
            (-1, 3, []),
        ],
    )
    def test_invalid(self, k, n, edges):
        with pytest.raises(ShadowLabError):
            Hypergraph(k, n, edges)

    def test_mask_round_trip(self):
        for e in combinations(range(1, 9), 3):
            assert mask_edge(edge_mask(e)) == e

    def test_contains(self):
        h = Hypergraph(2, 4, [(1, 2), (3, 4)])
        assert (2, 1) in h and (1, 3) not in h

    def test_ratio_format(self):
        assert format_ratio(Fraction(10, 10)) == "1/1"
        assert parse_ratio("14/16") == Fraction(7, 8)
        assert parse_ratio("3") == 3
        with pytest.raises(ShadowLabError):
            parse_ratio("x/2")


class TestShadow:
    def test_clique(self):
        assert shadow(clique(3, 5)) == clique(2, 5)

    def test_single_edge(self):
        assert shadow(Hypergraph(3, 3, [(1, 2, 3)])).edges == ((1, 2), (1, 3), (2, 3))

    def test_shifted_17(self):
        assert len(shadow(shifted(3, 17))) == 15

    def test_empty_family(self):
        s = shadow(Hypergraph(3, 4))
        assert s.k == 2 and len(s) == 0

    def test_zero_uniform_rejected(self):
        with pytest.raises(ShadowLabError):
            shadow(Hypergraph(0, 2, [()]))

    @given(hypergraphs())
    def test_matches_naive(self, h):
        assert {frozenset(e) for e in shadow(h)} == naive_shadow(h.edges, h.k)

    @given(hypergraphs(k_min=2))
    def test_two_step_and_size_bound(self, h):
        s = shadow(h)
        assert len(shadow(s)) == len(naive_shadow(naive_shadow(h.edges, h.k), h.k - 1))
        assert len(s) <= h.k * len(h)
        pairs_shared = any(len(set(a) & set(b)) == h.k - 1 for a, b in combinations(h.edges, 2))
        assert (len(s) == h.k * len(h)) == (not pairs_shared)


class TestRatioAndDegree:
    def test_clique_ratio(self):
        assert shadow_ratio(clique(3, 5)) == Fraction(3, 5 - 3 + 1) == 1

    def test_single_edge_ratio(self):
        assert shadow_ratio(Hypergraph(3, 3, [(1, 2, 3)])) == 3

    def test_prop16_ratio(self):
        assert shadow_ratio(prop16_family(3, 4)) == Fraction(7, 8)

    def test_empty_ratio(self):
        with pytest.raises(ShadowLabError, match="ratio undefined for empty family"):
            shadow_ratio(Hypergraph(2, 3))

    def test_degrees(self):
        assert degree(clique(3, 5), 1) == 6
        assert degree(Hypergraph(3, 4, [(1, 2, 3)]), 4) == 0
        h = prop16_family(3, 4)
        assert (degree(h, 6), degree(h, 5), degree(h, 1)) == (6, 6, 9)
        with pytest.raises(ShadowLabError):
            degree(h, 7)
        with pytest.raises(ShadowLabError):
            degree(h, 0)

    def test_max_degree(self):
        assert max_degree(clique(3, 6)) == 10
        minus = Hypergraph(3, 6, [e for e in clique(3, 6) if e not in {(1, 2, 3), (4, 5, 6)}])
        assert max_degree(minus) == 9
        assert max_degree(Hypergraph(3, 6)) == 0

    @given(hypergraphs())
    def test_handshake(self, h):
        assert sum(degrees(h)) == h.k * len(h)


class TestLink:
    def test_clique_link(self):
        assert link(clique(3, 5), 5) == Hypergraph(2, 5, clique(2, 4).edges)

    def test_small(self):
        assert link(Hypergraph(3, 5, [(1, 2, 3), (1, 4, 5)]), 1).edges == ((2, 3), (4, 5))

    def test_prop16_link(self):
        assert link(prop16_family(3, 4), 6).edges == clique(2, 4).edges

    def test_rejects_k1(self):
        with pytest.raises(ShadowLabError):
            link(Hypergraph(1, 3, [(1,)]), 1)

    @given(hypergraphs(k_min=2))
    def test_link_bijection(self, h):
        s = shadow(h)
        for v in range(1, h.n + 1):
            lv = link(h, v)
            assert len(lv) == degree(h, v)
            assert len(shadow(lv)) == degree(s, v)

    @given(hypergraphs(k_min=2, min_edges=1))
    def test_min_link_ratio_bound(self, h):
        alpha = min(shadow_ratio(link(h, v)) for v in range(1, h.n + 1) if degree(h, v))
        assert shadow_ratio(h) >= Fraction(h.k, h.k - 1) * alpha

    @given(hypergraphs(k_min=2))
    def test_shadow_double_count(self, h):
        s = shadow(h)
        assert sum(degrees(s)) == (h.k - 1) * len(s)


class TestComponents:
    def test_two_components(self):
        parts = components(Hypergraph(3, 6, [(1, 2, 3), (1, 2, 4), (4, 5, 6)]))
        assert [p.edges for p in parts] == [((1, 2, 3), (1, 2, 4)), ((4, 5, 6),)]

    def test_clique_connected(self):
        assert len(components(clique(3, 5))) == 1

    def test_low_degree_blocks(self):
        # m = 7, d = 2: q = 3 full blocks and one partial block
        assert len(components(low_degree_extremal(3, 2, 7))) == 4

    @given(hypergraphs())
    def test_partition_and_disjoint_shadows(self, h):
        parts = components(h)
        if parts:
            assert union(parts) == h
        else:
            assert len(h) == 0
        assert sum(len(p) for p in parts) == len(h)
        if h.k >= 1:
            shadows = [set(shadow(p).masks) for p in parts]
            assert sum(map(len, shadows)) == len(shadow(h))
            assert set().union(*shadows) == set(shadow(h).masks)

    @given(hypergraphs(k_min=2, k_max=4))
    @settings(max_examples=200)
    def test_low_degree_components_are_small(self, h):
        d = max_degree(h)
        if 0 < d < h.k:
            assert all(len(p) <= d for p in components(h))

    def test_components_are_maximal(self):
        h = Hypergraph(2, 5, [(1, 2), (2, 3), (4, 5)])
        assert [len(p) for p in components(h)] == [2, 1]
