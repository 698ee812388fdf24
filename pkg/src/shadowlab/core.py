"""Uniform hypergraphs and their primitive operations.

Edges are stored as integer bit masks over the vertex set ``[n]`` (bit
``v - 1`` stands for vertex ``v``).  Python integers have no width limit, so
the same representation serves every ``n``; for equal-size edges, comparing
masks as integers is exactly the colexicographic order.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence


class ShadowLabError(ValueError):
    """Domain error raised when an operation's precondition fails."""


Ratio = Fraction
Edge = tuple[int, ...]


def edge_mask(edge: Iterable[int]) -> int:
    mask = 0
    for v in edge:
        mask |= 1 << (v - 1)
    return mask


def mask_edge(mask: int) -> Edge:
    """Vertices of ``mask`` in increasing order."""
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def format_ratio(r: Fraction) -> str:
    return f"{r.numerator}/{r.denominator}"


def parse_ratio(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ShadowLabError(f"not a rational number: {text!r}") from exc


@dataclass(frozen=True)
class Hypergraph:
    """A duplicate-free family of ``k``-subsets of ``[n]``.

    ``edges`` accepts any iterable of vertex collections; it is normalised to
    a tuple of increasing vertex tuples sorted in colex order, so two
    hypergraphs compare equal exactly when they have the same edge set.
    """

    k: int
    n: int
    edges: tuple[Edge, ...] = field(default=())
    masks: tuple[int, ...] = field(init=False, repr=False, compare=False, default=())

    def __post_init__(self):
        if self.k < 0:
            raise ShadowLabError(f"uniformity must be nonnegative, got {self.k}")
        if self.n < 0:
            raise ShadowLabError(f"universe size must be nonnegative, got {self.n}")
        masks = set()
        for raw in self.edges:
            e = tuple(raw)
            if len(e) != self.k:
                raise ShadowLabError(f"edge {e} does not have {self.k} vertices")
            if any(b <= a for a, b in zip(e, e[1:])):
                e = tuple(sorted(e))
                if len(set(e)) != len(e):
                    raise ShadowLabError(f"edge {tuple(raw)} repeats a vertex")
            if e and (e[0] < 1 or e[-1] > self.n):
                raise ShadowLabError(f"edge {e} leaves the vertex range [1, {self.n}]")
            mask = edge_mask(e)
            if mask in masks:
                raise ShadowLabError(f"duplicate edge {e}")
            masks.add(mask)
        ordered = sorted(masks)
        object.__setattr__(self, "edges", tuple(mask_edge(m) for m in ordered))
        object.__setattr__(self, "masks", tuple(ordered))

    @classmethod
    def from_masks(cls, k: int, n: int, masks: Iterable[int]) -> "Hypergraph":
        return cls(k, n, [mask_edge(m) for m in masks])

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    def __contains__(self, edge) -> bool:
        return edge_mask(edge) in self.mask_set

    @cached_property
    def mask_set(self) -> frozenset[int]:
        return frozenset(self.masks)

    @property
    def m(self) -> int:
        return len(self.edges)


def shadow(h: Hypergraph) -> Hypergraph:
    if h.k == 0:
        raise ShadowLabError("shadow of a 0-uniform family is undefined")
    facets = set()
    for mask in h.masks:
        rest = mask
        while rest:
            bit = rest & -rest
            facets.add(mask ^ bit)
            rest ^= bit
    return Hypergraph.from_masks(h.k - 1, h.n, facets)


def shadow_size(h: Hypergraph) -> int:
    return len(shadow(h))


def shadow_ratio(h: Hypergraph) -> Fraction:
    if not h.edges:
        raise ShadowLabError("ratio undefined for empty family")
    return Fraction(len(shadow(h)), len(h))


def _check_vertex(h: Hypergraph, v: int) -> None:
    if not 1 <= v <= h.n:
        raise ShadowLabError(f"vertex {v} outside [1, {h.n}]")


def degree(h: Hypergraph, v: int) -> int:
    _check_vertex(h, v)
    bit = 1 << (v - 1)
    return sum(1 for mask in h.masks if mask & bit)


def degrees(h: Hypergraph) -> list[int]:
    """Degree of every vertex; entry ``i`` belongs to vertex ``i + 1``."""
    out = [0] * h.n
    for e in h.edges:
        for v in e:
            out[v - 1] += 1
    return out


def max_degree(h: Hypergraph) -> int:
    return max(degrees(h), default=0)


def link(h: Hypergraph, v: int) -> Hypergraph:
    """Edges through ``v`` with ``v`` deleted, as a (k-1)-uniform family."""
    _check_vertex(h, v)
    if h.k < 2:
        raise ShadowLabError("link needs uniformity at least 2")
    bit = 1 << (v - 1)
    return Hypergraph.from_masks(h.k - 1, h.n, (m ^ bit for m in h.masks if m & bit))


def components(h: Hypergraph) -> list[Hypergraph]:
    """Split ``h`` into classes of edges chained by (k-1)-intersections.

    Union-find over edges, joined through a facet index, so two edges are
    merged exactly when they share a (k-1)-subset.  Components come out
    ordered by their colex-smallest edge.
    """
    masks = h.masks
    parent = list(range(len(masks)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    if h.k >= 1:
        owner: dict[int, int] = {}
        for i, mask in enumerate(masks):
            rest = mask
            while rest:
                bit = rest & -rest
                rest ^= bit
                facet = mask ^ bit
                j = owner.setdefault(facet, i)
                if j != i:
                    ri, rj = find(i), find(j)
                    if ri != rj:
                        parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = defaultdict(list)
    for i, mask in enumerate(masks):
        groups[find(i)].append(mask)
    return [Hypergraph.from_masks(h.k, h.n, groups[r]) for r in sorted(groups)]


def union(parts: Sequence[Hypergraph]) -> Hypergraph:
    """Edge-disjoint union of same-uniformity families on a common universe."""
    if not parts:
        raise ShadowLabError("union of no families")
    k = parts[0].k
    n = max(p.n for p in parts)
    masks: list[int] = []
    for p in parts:
        if p.k != k:
            raise ShadowLabError("union of families with different uniformity")
        masks.extend(p.masks)
    return Hypergraph.from_masks(k, n, masks)
