from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import hypergraphs
from shadowlab.bounds import (
    REGIME_ORDER,
    best_bound,
    bound_graph,
    bound_long_interval,
    bound_lovasz,
    bound_low_degree,
    bound_low_degree_ratio,
    bound_short_interval,
    long_interval_degree,
    lovasz_point,
    short_interval_window,
)
from shadowlab.construct import clique, clique_minus_matchings, low_degree_extremal, prop16_family, shifted
from shadowlab.core import ShadowLabError, max_degree, shadow_ratio
from shadowlab.kknum import binom, invert_binomial, long_interval_terms, real_binomial


class TestGraph:
    def test_examples(self):
        assert bound_graph(3) == Fraction(2, 3)
        assert bound_graph(1) == 2
        assert bound_graph(Fraction(5, 2)) == Fraction(4, 5)

    def test_regular_graph_is_tight(self):
        # the 3-cube graph: 8 vertices, 12 edges, 3-regular
        from shadowlab.core import Hypergraph

        cube = Hypergraph(2, 8, [(a + 1, b + 1) for a in range(8) for b in range(a + 1, 8) if bin(a ^ b).count("1") == 1])
        assert max_degree(cube) == 3 and shadow_ratio(cube) == bound_graph(3)

    def test_rejects_small_d(self):
        with pytest.raises(ShadowLabError):
            bound_graph(Fraction(1, 2))


class TestLowDegree:
    def test_examples(self):
        assert bound_low_degree(3, 2, 5) == 13
        assert bound_low_degree(5, 1, 7) == 35
        assert bound_low_degree(4, 3, 3) == 9
        assert bound_low_degree_ratio(3, 2) == Fraction(5, 2)
        assert bound_low_degree_ratio(3, 1) == 3
        assert bound_low_degree_ratio(5, 4) == Fraction(7, 2)

    def test_rejects_high_degree(self):
        with pytest.raises(ShadowLabError, match="use high-degree regimes"):
            bound_low_degree(3, 3, 4)
        with pytest.raises(ShadowLabError, match="use high-degree regimes"):
            bound_low_degree_ratio(3, 3)

    def test_ratio_tight_at_m_equal_d(self):
        assert shadow_ratio(low_degree_extremal(3, 2, 2)) == Fraction(5, 2)

    def test_rational_d_uses_floor(self):
        assert bound_low_degree(3, Fraction(5, 2), 5) == bound_low_degree(3, 2, 5)

    @pytest.mark.parametrize("k", range(2, 6))
    def test_ratio_below_every_size(self, k):
        for d in range(1, k):
            for m in range(1, 30):
                assert Fraction(bound_low_degree(k, d, m), m) >= bound_low_degree_ratio(k, d)


class TestLovasz:
    def test_exact_points(self):
        assert bound_lovasz(3, 6) == 1
        assert bound_lovasz(3, 10) == Fraction(3, 4)
        assert shadow_ratio(clique(3, 5)) == bound_lovasz(3, 6)
        assert shadow_ratio(clique(3, 6)) == bound_lovasz(3, 10)

    def test_bracketed_point(self):
        x = lovasz_point(3, 7)
        assert 4 < x < 5
        assert real_binomial(x, 2) >= 7
        q = invert_binomial(7, 2)
        assert bound_lovasz(3, 7) == Fraction(3) / (q.x + q.eps - 1)

    def test_needs_k3(self):
        with pytest.raises(ShadowLabError):
            bound_lovasz(2, 3)


class TestLongInterval:
    @pytest.mark.parametrize(
        "k,t,threshold,bound", [(3, 3, 4, Fraction(3, 2)), (3, 4, 7, Fraction(1)), (4, 4, 5, Fraction(2))]
    )
    def test_examples(self, k, t, threshold, bound):
        assert bound_long_interval(k, t) == (threshold, bound)

    def test_errors(self):
        with pytest.raises(ShadowLabError):
            bound_long_interval(3, 2)

    @pytest.mark.parametrize("k,t", [(k, t) for k in range(3, 6) for t in range(k, 9)])
    def test_clique_tightness(self, k, t):
        h = clique(k, t + 1)
        threshold, bound = bound_long_interval(k, t)
        assert max_degree(h) <= threshold
        assert shadow_ratio(h) == bound

    @pytest.mark.parametrize("k,t", [(k, t) for k in range(3, 6) for t in range(k, 12)])
    def test_threshold_matches_cascade_terms(self, k, t):
        assert long_interval_degree(k, t) == sum(long_interval_terms(t, k - 1))
        assert long_interval_degree(k, t) >= binom(t, k - 1)

    @pytest.mark.parametrize("k,t", [(k, t) for k in range(3, 6) for t in range(k, 9)])
    def test_dominates_lovasz_on_interval(self, k, t):
        threshold, bound = bound_long_interval(k, t)
        for d in range(binom(t, k - 1), threshold + 1):
            lov = bound_lovasz(k, d)
            assert bound >= lov
            if d == binom(t, k - 1):
                assert bound == lov


class TestShortInterval:
    def test_examples(self):
        assert bound_short_interval(3, 4, 9) == Fraction(5, 6)
        assert bound_short_interval(3, 4, 8) == Fraction(15, 16)
        assert short_interval_window(3, 4) == (8, 10)
        with pytest.raises(ShadowLabError, match="short-interval hypothesis violated"):
            bound_short_interval(3, 4, 10)
        with pytest.raises(ShadowLabError, match="short-interval hypothesis violated"):
            bound_short_interval(3, 4, 7)

    def test_matching_constructions(self):
        assert shadow_ratio(clique_minus_matchings(3, 6, 1)) == bound_short_interval(3, 4, 9)
        assert shadow_ratio(clique_minus_matchings(3, 6, 2)) == bound_short_interval(3, 4, 8)

    @pytest.mark.parametrize("k,t", [(k, t) for k in range(3, 6) for t in range(k, 10)])
    def test_forms_agree_on_window(self, k, t):
        lo, hi = short_interval_window(k, t)
        d = lo
        while d < hi:
            bound_short_interval(k, t, d)
            d += Fraction(1, 3)

    @pytest.mark.parametrize("k,t", [(3, 4), (3, 7), (4, 6), (3, 10)])
    def test_matching_constructions_general(self, k, t):
        if (t + 2) % k:
            pytest.skip("needs k | t+2")
        lo, hi = short_interval_window(k, t)
        for d in range(int(lo) + (lo.denominator != 1), hi):
            h = clique_minus_matchings(k, t + 2, hi - d)
            assert max_degree(h) == d
            assert shadow_ratio(h) == bound_short_interval(k, t, d)


class TestBest:
    def test_examples(self):
        r = best_bound(3, 6)
        assert r.best.value == 1 and r.best.regime == "long-interval" and r.best.t == 4
        assert any(b.regime == "lovasz" and b.value == 1 for b in r.bounds)
        assert best_bound(3, 2).best.value == Fraction(5, 2)
        assert best_bound(3, 2).best.regime == "low-degree"
        r = best_bound(3, 9)
        assert (r.best.value, r.best.regime, r.best.t) == (Fraction(5, 6), "short-interval", 4)
        lov = next(b for b in r.bounds if b.regime == "lovasz")
        assert lov.value < r.best.value
        assert best_bound(2, 3).best.value == Fraction(2, 3)

    def test_fallback_note(self):
        # for k = 3 the sharp windows cover every integer d; for k = 4 they leave gaps (d = 6, 7, ...)
        assert all(best_bound(3, d).best.regime != "lovasz" for d in range(1, 60))
        reports = [best_bound(4, d) for d in range(1, 60)]
        flagged = [r for r in reports if r.best.regime == "lovasz"]
        assert flagged and all(r.notes for r in flagged)
        assert all(not r.notes for r in reports if r.best.regime != "lovasz")

    def test_json(self):
        obj = best_bound(3, 9).to_json()
        assert obj["d"] == "9/1" and obj["best"]["value"] == "5/6" and obj["best"]["theorem"] == "thm1.7"
        for entry in obj["bounds"]:
            assert set(entry) >= {"regime", "value", "theorem"}
            assert entry["regime"] in REGIME_ORDER
            num, den = entry["value"].split("/")
            assert int(den) > 0 and int(num) >= 0

    def test_all_applicable_regimes_reported(self):
        regimes = {b.regime for b in best_bound(3, 2).bounds}
        assert {"low-degree", "lovasz", "long-interval"} <= regimes

    def test_rational_degree(self):
        r = best_bound(3, Fraction(17, 2))
        assert r.best.value >= best_bound(3, 9).best.value

    def test_errors(self):
        with pytest.raises(ShadowLabError):
            best_bound(1, 3)
        with pytest.raises(ShadowLabError):
            best_bound(3, 0)


def named_families():
    for k in range(2, 6):
        for m in range(1, 60, 3):
            yield shifted(k, m)
        for n in range(k, 9):
            yield clique(k, n)
        for d in range(1, k):
            for m in range(1, 12):
                yield low_degree_extremal(k, d, m)
    for k, n in [(2, 4), (2, 6), (3, 6), (3, 9), (4, 8)]:
        for s in range(k):
            yield clique_minus_matchings(k, n, s)
    for k in range(3, 6):
        for t in range(k, 9):
            yield prop16_family(k, t)


class TestSoundness:
    def test_named_families(self):
        for h in named_families():
            assert shadow_ratio(h) >= best_bound(h.k, max_degree(h)).best.value

    @given(hypergraphs(k_min=2, k_max=5, n_max=9, min_edges=1))
    @settings(max_examples=300, deadline=None)
    def test_random(self, h):
        assert shadow_ratio(h) >= best_bound(h.k, max_degree(h)).best.value

    @pytest.mark.parametrize("k,t", [(k, t) for k in range(3, 6) for t in range(k, 9)])
    def test_prop16_strict(self, k, t):
        h = prop16_family(k, t)
        c = -(-(t + 2) // k)
        assert shadow_ratio(h) < Fraction(k, t - k + 2)
        assert max_degree(h) <= binom(t, k - 1) + binom(t + 1 - c, k - 2)
        # and it sits past the long interval
        assert max_degree(h) > long_interval_degree(k, t)
