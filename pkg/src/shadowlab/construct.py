"""Generators for the concrete families: colex initial segments, cliques,
low-degree extremal unions, cliques minus perfect matchings, and the shifted
family that beats the clique just past the long interval.
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .core import Hypergraph, ShadowLabError, edge_mask, shadow
from .kknum import max_binomial_top, binom, ceil_div


def colex_compare(a: Sequence[int], b: Sequence[int]) -> int:
    """-1, 0 or 1 as ``a`` precedes, equals or follows ``b`` in colex order."""
    if len(a) != len(b):
        raise ShadowLabError("colex comparison of sets of different sizes")
    ma, mb = edge_mask(a), edge_mask(b)
    return (ma > mb) - (ma < mb)


def colex_rank(edge: Sequence[int]) -> int:
    return sum(binom(v - 1, i) for i, v in enumerate(sorted(edge), start=1))


def colex_unrank(rank: int, k: int) -> tuple[int, ...]:
    if rank < 0:
        raise ShadowLabError(f"rank must be nonnegative, got {rank}")
    out = []
    for i in range(k, 0, -1):
        c = max_binomial_top(rank, i)
        rank -= binom(c, i)
        out.append(c + 1)
    return tuple(reversed(out))


def colex_edges(k: int, n: int) -> list[tuple[int, ...]]:
    """All k-subsets of [n] in colex order."""
    return sorted(combinations(range(1, n + 1), k), key=edge_mask)


def shifted(k: int, m: int) -> Hypergraph:
    """The first ``m`` k-subsets of the positive integers in colex order."""
    if k < 1:
        raise ShadowLabError(f"uniformity must be positive, got {k}")
    if m < 0:
        raise ShadowLabError(f"size must be nonnegative, got {m}")
    edges = []
    for e in _colex_stream(k):
        if len(edges) == m:
            break
        edges.append(e)
    n = max(k, edges[-1][-1] if edges else k)
    return Hypergraph(k, n, edges)


def _colex_stream(k: int):
    top = k
    while True:
        for rest in colex_edges(k - 1, top - 1):
            yield rest + (top,)
        top += 1


def clique(k: int, n: int) -> Hypergraph:
    if not 1 <= k <= n:
        raise ShadowLabError(f"clique needs 1 <= k <= n, got k={k}, n={n}")
    return Hypergraph(k, n, combinations(range(1, n + 1), k))


def low_degree_extremal(k: int, d: int, m: int) -> Hypergraph:
    """q blocks of d edges plus one block of r edges, m = qd + r.

    Each block lives on its own fresh (k+1)-set and uses the colex-first
    edges of that set.  Any two k-subsets of a (k+1)-set meet in k-1
    vertices, so a block of size t has shadow kt - C(t, 2).
    """
    if d < 1 or m < 1:
        raise ShadowLabError("need d >= 1 and m >= 1")
    if d >= k:
        raise ShadowLabError("low-degree construction requires d < k")
    q, r = divmod(m, d)
    sizes = [d] * q + ([r] if r else [])
    block = colex_edges(k, k + 1)
    edges = []
    for j, size in enumerate(sizes):
        offset = j * (k + 1)
        edges.extend(tuple(v + offset for v in e) for e in block[:size])
    return Hypergraph(k, len(sizes) * (k + 1), edges)


def _perfect_matching(n: int, available: set[int], by_vertex: dict[int, list[int]]):
    """Backtracking search for a perfect matching inside ``available``.

    Always covers the smallest uncovered vertex next, trying its edges in
    colex order, so the result is the colex-greedy matching when one exists.
    """
    full = (1 << n) - 1
    chosen: list[int] = []

    def extend(covered: int) -> bool:
        if covered == full:
            return True
        low = (~covered & (covered + 1)).bit_length()
        for mask in by_vertex[low]:
            if mask & covered or mask not in available:
                continue
            chosen.append(mask)
            if extend(covered | mask):
                return True
            chosen.pop()
        return False

    return list(chosen) if extend(0) else None


def clique_minus_matchings(k: int, n: int, s: int) -> Hypergraph:
    """C([n], k) with ``s`` pairwise edge-disjoint perfect matchings removed."""
    if not 1 <= k <= n:
        raise ShadowLabError(f"need 1 <= k <= n, got k={k}, n={n}")
    if n % k:
        raise ShadowLabError(f"perfect matchings need k | n, got k={k}, n={n}")
    if s < 0:
        raise ShadowLabError("number of matchings must be nonnegative")
    if s > binom(n - 1, k - 1):
        raise ShadowLabError("could not pack s disjoint perfect matchings")
    full = clique(k, n)
    available = set(full.masks)
    by_vertex = {v: [m for m in full.masks if m >> (v - 1) & 1] for v in range(1, n + 1)}
    for _ in range(s):
        matching = _perfect_matching(n, available, by_vertex)
        if matching is None:
            raise ShadowLabError("could not pack s disjoint perfect matchings")
        available.difference_update(matching)
    h = Hypergraph.from_masks(k, n, available)
    if k >= 1 and len(shadow(h)) != binom(n, k - 1):
        raise ShadowLabError(f"removing {s} matchings leaves some (k-1)-set uncovered")
    return h


def prop16_parameters(k: int, t: int) -> dict[str, int]:
    """Closed-form size, shadow size and degree classes of the family."""
    if k < 3 or t < k:
        raise ShadowLabError(f"need t >= k >= 3, got k={k}, t={t}")
    c = ceil_div(t + 2, k)
    base = t + 2 - c
    return {
        "cutoff": base,
        "size": binom(t + 1, k) + binom(base, k - 1),
        "shadow": binom(t + 1, k - 1) + binom(base, k - 2),
        "max_degree": binom(t, k - 1) + binom(t + 1 - c, k - 2),
        "degree_top": binom(base, k - 1),
        "degree_middle": binom(t, k - 1),
        "degree_low": binom(t, k - 1) + binom(t + 1 - c, k - 2),
    }


def prop16_family(k: int, t: int) -> Hypergraph:
    """C([t+1], k) together with {E + (t+2) : E in C([t+2-ceil((t+2)/k)], k-1)}.

    This is also the colex initial segment of the same size; the two
    constructions are compared on every call.
    """
    p = prop16_parameters(k, t)
    top = t + 2
    edges = list(combinations(range(1, t + 2), k))
    edges += [e + (top,) for e in combinations(range(1, p["cutoff"] + 1), k - 1)]
    h = Hypergraph(k, top, edges)
    colex = shifted(k, p["size"])
    if colex.masks != h.masks:
        raise AssertionError(f"prop16 family disagrees with its colex segment at k={k}, t={t}")
    return h

