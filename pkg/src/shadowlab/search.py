"""Exhaustive search over k-uniform families with a degree cap.

The search is an orderly generation over candidate edges in colex order: a
node is a family ``F`` given by the increasing list of its edge ranks, and its
children add one edge of larger rank.  A family is kept only if no vertex
relabeling in a fixed set ``P`` maps it to a family with a lexicographically
larger inclusion vector.  If ``F`` passes that test so does ``F`` minus its
last edge (for any ``P``), so each isomorphism class is still reached through
its fully canonical representative.  Symmetry modes pick ``P``:

``none``
    no filtering; all subfamilies are visited.
``first_edge_canonical``
    the first edge is forced to be ``{1..k}`` and ``P`` is the set of vertex
    transpositions.  Cheap, incomplete reduction, usable for any ``n``.
``full_canonical``
    ``P`` is the whole symmetric group, so every isomorphism class is visited
    exactly once.  Restricted to ``n_max <= 7``.

Pruning compares a lower bound with the incumbent strictly, so every optimal
family in the filtered space is visited and the reported witness (smallest by
objective, then size, then colex edge list) does not depend on the incumbent
or on how the work was split between processes.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

from .bounds import best_bound, bound_long_interval, bound_short_interval
from .core import Hypergraph, ShadowLabError, degrees, shadow, shadow_ratio
from .kknum import binom

OBJECTIVES = ("min_ratio", "min_shadow")
SYMMETRIES = ("none", "first_edge_canonical", "full_canonical")
DEFAULT_BUDGET = 2**30
FULL_CANONICAL_MAX_N = 7


@dataclass(frozen=True)
class SearchSpec:
    k: int
    n_max: int
    d: int
    m: int | None = None
    objective: str = "min_ratio"
    symmetry: str = "first_edge_canonical"

    def __post_init__(self):
        if self.k < 1:
            raise ShadowLabError(f"k must be positive, got {self.k}")
        if self.n_max < self.k:
            raise ShadowLabError(f"need n_max >= k, got n_max={self.n_max}, k={self.k}")
        if self.d < 1:
            raise ShadowLabError(f"degree cap must be at least 1, got {self.d}")
        if self.objective not in OBJECTIVES:
            raise ShadowLabError(f"objective must be one of {OBJECTIVES}")
        if self.symmetry not in SYMMETRIES:
            raise ShadowLabError(f"symmetry must be one of {SYMMETRIES}")
        if self.symmetry == "full_canonical" and self.n_max > FULL_CANONICAL_MAX_N:
            raise ShadowLabError(f"full_canonical is limited to n_max <= {FULL_CANONICAL_MAX_N}")
        if self.m is not None and not 1 <= self.m <= binom(self.n_max, self.k):
            raise ShadowLabError(f"size m={self.m} outside [1, C({self.n_max}, {self.k})]")
        if self.objective == "min_shadow" and self.m is None:
            raise ShadowLabError("min_shadow needs an exact size m")


@dataclass(frozen=True)
class SearchResult:
    spec: SearchSpec
    witness: Hypergraph | None
    value: Fraction | int | None
    nodes_explored: int
    pruned: int
    exhaustive: bool
    audited: int = 0
    optimal_degree_sequences: tuple[tuple[int, ...], ...] = field(default=())

    @property
    def feasible(self) -> bool:
        return self.witness is not None


class _BudgetExceeded(Exception):
    pass


class _Context:
    """Immutable candidate tables shared by every node of one search."""

    def __init__(self, spec: SearchSpec):
        self.spec = spec
        k, n = spec.k, spec.n_max
        self.cands = sorted(sum(1 << v for v in c) for c in combinations(range(n), k))
        self.E = len(self.cands)
        self.rank = {mask: i for i, mask in enumerate(self.cands)}
        facet_ids: dict[int, int] = {}
        self.cand_facets = []
        self.cand_verts = []
        for mask in self.cands:
            verts = [v for v in range(n) if mask >> v & 1]
            self.cand_verts.append(verts)
            self.cand_facets.append(
                [facet_ids.setdefault(mask ^ (1 << v), len(facet_ids)) for v in verts]
            )
        self.n_facets = len(facet_ids)
        self.transpositions = [(1 << u) | (1 << v) for u, v in combinations(range(n), 2)]
        self.weights = None
        if spec.symmetry == "full_canonical":
            self.weights = _permutation_weights(k, n)


@lru_cache(maxsize=8)
def _permutation_weights(k: int, n: int) -> np.ndarray:
    """``W[i, p] = 2**(E-1-rank(p(edge i)))`` for every permutation ``p``.

    The inclusion vector of a family, read as an E-bit integer, is then the
    sum of its rows; E <= 35 for n <= 7, so int64 is exact.
    """
    cands = sorted(sum(1 << v for v in c) for c in combinations(range(n), k))
    rank = {mask: i for i, mask in enumerate(cands)}
    E = len(cands)
    perms = list(permutations(range(n)))
    table = np.empty((E, len(perms)), dtype=np.int64)
    for col, p in enumerate(perms):
        for i, mask in enumerate(cands):
            image = 0
            for v in range(n):
                if mask >> v & 1:
                    image |= 1 << p[v]
            table[i, col] = 1 << (E - 1 - rank[image])
    table.flags.writeable = False
    return table


class _Searcher:
    def __init__(self, ctx: _Context, budget: int, shared=None, audit_every: int = 100):
        self.ctx = ctx
        spec = ctx.spec
        self.k, self.n, self.d, self.m = spec.k, spec.n_max, spec.d, spec.m
        self.ratio_mode = spec.objective == "min_ratio"
        self.budget = budget
        self.shared = shared
        self.audit_every = audit_every

        self.chosen: list[int] = []
        self.chosen_set: set[int] = set()
        self.deg = [0] * self.n
        self.saturated = 0
        self.facet_count = [0] * ctx.n_facets
        self.sigma = 0
        self.perm_sums: list[np.ndarray] = []
        if ctx.weights is not None:
            self.perm_sums.append(np.zeros(ctx.weights.shape[1], dtype=np.int64))
        self.value_bits = 0

        self.nodes = 0
        self.pruned = 0
        self.audited = 0
        self.evaluated = 0
        # incumbent: objective as (num, den) plus tie-break key
        self.best_num: int | None = None
        self.best_den = 1
        self.best_key: tuple | None = None
        self.best_edges: tuple[int, ...] | None = None
        self.degseqs: set[tuple[int, ...]] = set()

    # -- state updates -------------------------------------------------
    def push(self, i: int) -> None:
        ctx = self.ctx
        self.chosen.append(i)
        self.chosen_set.add(ctx.cands[i])
        for v in ctx.cand_verts[i]:
            self.deg[v] += 1
            if self.deg[v] == self.d:
                self.saturated |= 1 << v
        fc = self.facet_count
        for f in ctx.cand_facets[i]:
            if fc[f] == 0:
                self.sigma += 1
            fc[f] += 1
        if ctx.weights is not None:
            self.perm_sums.append(self.perm_sums[-1] + ctx.weights[i])
        self.value_bits |= 1 << (ctx.E - 1 - i)

    def pop(self) -> None:
        ctx = self.ctx
        i = self.chosen.pop()
        self.chosen_set.discard(ctx.cands[i])
        for v in ctx.cand_verts[i]:
            if self.deg[v] == self.d:
                self.saturated &= ~(1 << v)
            self.deg[v] -= 1
        fc = self.facet_count
        for f in ctx.cand_facets[i]:
            fc[f] -= 1
            if fc[f] == 0:
                self.sigma -= 1
        if ctx.weights is not None:
            self.perm_sums.pop()
        self.value_bits &= ~(1 << (ctx.E - 1 - i))

    # -- symmetry ------------------------------------------------------
    def canonical(self) -> bool:
        ctx = self.ctx
        if ctx.weights is not None:
            return int(self.perm_sums[-1].max()) <= self.value_bits
        if ctx.spec.symmetry == "none":
            return True
        rank = ctx.rank
        fam = self.chosen_set
        masks = [ctx.cands[i] for i in self.chosen]
        E = ctx.E
        for both in ctx.transpositions:
            added = removed = E
            for e in masks:
                x = e & both
                if x == 0 or x == both:
                    continue
                f = e ^ both
                if f in fam:
                    continue
                rf, re = rank[f], rank[e]
                if rf < added:
                    added = rf
                if re < removed:
                    removed = re
            if added < removed:
                return False
        return True

    # -- objective -----------------------------------------------------
    def current_key(self):
        s = len(self.chosen)
        if self.ratio_mode:
            g = math.gcd(self.sigma, s)
            return (self.sigma // g, s // g)
        return (self.sigma, 1)

    def refresh_incumbent(self) -> None:
        if self.shared is None:
            return
        num, den = self.shared[0], self.shared[1]
        if num >= 0 and (self.best_num is None or num * self.best_den < self.best_num * den):
            # only the value is shared; ties are still resolved locally
            self.best_num, self.best_den = num, den
            self.best_key = None
            self.best_edges = None
            self.degseqs = set()

    def publish(self) -> None:
        if self.shared is None:
            return
        with self.shared.get_lock():
            num, den = self.shared[0], self.shared[1]
            if num < 0 or self.best_num * den < num * self.best_den:
                self.shared[0], self.shared[1] = self.best_num, self.best_den

    def evaluate(self) -> None:
        s = len(self.chosen)
        if s == 0 or (self.m is not None and s != self.m):
            return
        self.evaluated += 1
        if self.audit_every and self.evaluated % self.audit_every == 0:
            self.audit()
        num, den = self.current_key()
        if self.best_num is not None:
            lhs, rhs = num * self.best_den, self.best_num * den
            if lhs > rhs:
                return
        else:
            lhs, rhs = 0, 1
        key = (s, tuple(self.chosen))
        degseq = tuple(sorted(self.deg, reverse=True))
        if self.best_num is None or lhs < rhs:
            self.best_num, self.best_den = num, den
            self.best_key, self.best_edges = key, tuple(self.chosen)
            self.degseqs = {degseq}
            self.publish()
            return
        self.degseqs.add(degseq)
        if self.best_key is None or key < self.best_key:
            self.best_key, self.best_edges = key, tuple(self.chosen)

    def audit(self) -> None:
        self.audited += 1
        h = Hypergraph.from_masks(self.k, self.n, (self.ctx.cands[i] for i in self.chosen))
        if len(shadow(h)) != self.sigma:
            raise RuntimeError(f"incremental shadow {self.sigma} != recomputed {len(shadow(h))}")

    # -- traversal -----------------------------------------------------
    def admissible(self) -> list[int]:
        start = self.chosen[-1] + 1 if self.chosen else 0
        sat = self.saturated
        cands = self.ctx.cands
        return [i for i in range(start, self.ctx.E) if not cands[i] & sat]

    def children_pruned(self, adm: list[int]) -> bool:
        s = len(self.chosen)
        room = min(len(adm), (self.n * self.d - self.k * s) // self.k)
        if self.m is not None:
            room = min(room, self.m - s)
            if s + room < self.m:
                return True
        if room <= 0:
            return True
        if self.best_num is None:
            return False
        if self.ratio_mode:
            # descendants keep at least sigma facets over at most s + room edges
            return self.sigma * self.best_den > self.best_num * (s + room)
        return self.sigma > self.best_num

    def dfs(self, stop_depth: int | None = None, frontier: list | None = None) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetExceeded
        if self.shared is not None and self.nodes % 256 == 0:
            self.refresh_incumbent()
        self.evaluate()
        if stop_depth is not None and len(self.chosen) == stop_depth:
            frontier.append(tuple(self.chosen))
            return
        adm = self.admissible()
        if self.children_pruned(adm):
            self.pruned += 1
            return
        if not self.chosen and self.ctx.spec.symmetry == "first_edge_canonical":
            adm = adm[:1]
        for i in adm:
            self.push(i)
            if self.canonical():
                self.dfs(stop_depth, frontier)
            else:
                self.pruned += 1
            self.pop()

    def run_subtree(self, path: tuple[int, ...]) -> None:
        for i in path:
            self.push(i)
        self.nodes -= 1  # the subtree root was already counted by the splitter
        self.dfs()

    def outcome(self):
        return {
            "num": self.best_num,
            "den": self.best_den,
            "key": self.best_key,
            "edges": self.best_edges,
            "degseqs": self.degseqs,
            "nodes": self.nodes,
            "pruned": self.pruned,
            "audited": self.audited,
        }


_WORKER: dict = {}


def _worker_init(spec, budget, shared, audit_every):
    _WORKER["ctx"] = _Context(spec)
    _WORKER["args"] = (budget, shared, audit_every)


def _worker_run(path):
    budget, shared, audit_every = _WORKER["args"]
    searcher = _Searcher(_WORKER["ctx"], budget, shared, audit_every)
    exhaustive = True
    try:
        searcher.run_subtree(path)
    except _BudgetExceeded:
        exhaustive = False
    out = searcher.outcome()
    out["exhaustive"] = exhaustive
    return out


def _merge(parts: list[dict]):
    best = None
    for p in parts:
        if p["num"] is None or p["key"] is None:
            continue
        if best is None:
            best = dict(p, degseqs=set(p["degseqs"]))
            continue
        lhs, rhs = p["num"] * best["den"], best["num"] * p["den"]
        if lhs < rhs:
            best = dict(p, degseqs=set(p["degseqs"]))
        elif lhs == rhs:
            best["degseqs"] |= p["degseqs"]
            if p["key"] < best["key"]:
                best["key"], best["edges"] = p["key"], p["edges"]
    return best


def _resolve_threads(threads: int | None) -> int:
    env = os.environ.get("SHADOWLAB_THREADS")
    if env:
        threads = int(env)
    return max(1, threads or 1)


def run_search(
    spec: SearchSpec,
    *,
    budget: int = DEFAULT_BUDGET,
    threads: int | None = 1,
    split_depth: int = 2,
    audit_every: int = 100,
) -> SearchResult:
    """Run the search described by ``spec``.

    With more than one worker the tree is cut at ``split_depth`` and the
    subtrees are solved in separate processes that share only the incumbent
    value.  Budget exhaustion gives a partial result with
    ``exhaustive=False``; only exhaustive results are thread-count invariant.
    """
    threads = _resolve_threads(threads)
    ctx = _Context(spec)
    top = _Searcher(ctx, budget, None, audit_every)
    parts: list[dict] = []
    exhaustive = True
    try:
        if threads == 1:
            top.dfs()
        else:
            frontier: list[tuple[int, ...]] = []
            top.dfs(stop_depth=split_depth, frontier=frontier)
            import multiprocessing as mp

            shared = mp.Array("q", [-1, 1])
            if top.best_num is not None:
                shared[0], shared[1] = top.best_num, top.best_den
            with ProcessPoolExecutor(
                threads, initializer=_worker_init, initargs=(spec, budget, shared, audit_every)
            ) as pool:
                parts = list(pool.map(_worker_run, frontier))
    except _BudgetExceeded:
        exhaustive = False
    parts.insert(0, top.outcome())
    exhaustive = exhaustive and all(p.get("exhaustive", True) for p in parts)
    best = _merge(parts)
    nodes = sum(p["nodes"] for p in parts)
    pruned = sum(p["pruned"] for p in parts)
    audited = sum(p["audited"] for p in parts)
    if best is None:
        return SearchResult(spec, None, None, nodes, pruned, exhaustive, audited)
    witness = Hypergraph.from_masks(spec.k, spec.n_max, (ctx.cands[i] for i in best["edges"]))
    sigma = len(shadow(witness))
    if spec.objective == "min_ratio":
        value = shadow_ratio(witness)
        if value != Fraction(best["num"], best["den"]):
            raise RuntimeError("witness ratio disagrees with the search objective")
    else:
        value = sigma
        if value != best["num"]:
            raise RuntimeError("witness shadow disagrees with the search objective")
    return SearchResult(
        spec,
        witness,
        value,
        nodes,
        pruned,
        exhaustive,
        audited + 1,
        tuple(sorted(best["degseqs"], reverse=True)),
    )


def enumerate_min_ratio(spec: SearchSpec, **kwargs) -> SearchResult:
    if spec.objective != "min_ratio":
        raise ShadowLabError("enumerate_min_ratio needs objective 'min_ratio'")
    return run_search(spec, **kwargs)


def enumerate_min_shadow(spec: SearchSpec, **kwargs) -> SearchResult:
    if spec.objective != "min_shadow":
        raise ShadowLabError("enumerate_min_shadow needs objective 'min_shadow'")
    return run_search(spec, **kwargs)


def iter_families(k: int, n_max: int, d: int, symmetry: str = "full_canonical"):
    """Yield every family the search would visit, without objective pruning.

    Under ``full_canonical`` this is one family per isomorphism class with
    maximum degree at most ``d`` (the empty family included).
    """
    spec = SearchSpec(k, n_max, d, symmetry=symmetry)
    searcher = _Searcher(_Context(spec), DEFAULT_BUDGET, audit_every=0)
    cands = searcher.ctx.cands

    def walk():
        yield Hypergraph.from_masks(k, n_max, (cands[i] for i in searcher.chosen))
        adm = searcher.admissible()
        if not searcher.chosen and symmetry == "first_edge_canonical":
            adm = adm[:1]
        for i in adm:
            searcher.push(i)
            if searcher.canonical():
                yield from walk()
            searcher.pop()

    yield from walk()


# -- isomorphism -----------------------------------------------------------


def canonical_form(h: Hypergraph) -> Hypergraph:
    """The relabeling of ``h`` whose colex inclusion vector is largest.

    Labels are placed in order 1, 2, ...; after label ``j`` is placed, the
    edges whose largest label is ``j`` are fixed, and they form the next block
    of the inclusion vector.  Branches are cut as soon as their prefix falls
    below the best one, and twin vertices (swappable without changing ``h``)
    are tried only once.
    """
    n, k = h.n, h.k
    fam = set(h.masks)

    def swapped(u: int, v: int) -> set[int]:
        both = (1 << u) | (1 << v)
        return {e ^ both if (e & both) and (e & both) != both else e for e in fam}

    twin_rep = list(range(n))
    for u, v in combinations(range(n), 2):
        if twin_rep[v] == v and swapped(u, v) == fam:
            twin_rep[v] = twin_rep[u]

    best: list[int] = []
    best_order: list[int] = []

    def block(order: list[int], j: int) -> int:
        # bits for the edges {S + [j]} with S running over (k-1)-subsets of
        # labels < j in colex order, first subset most significant
        pre = order[j]
        subsets = sorted(combinations(range(j), k - 1), key=lambda s: sum(1 << x for x in s))
        out = 0
        for s in subsets:
            out <<= 1
            mask = 1 << pre
            for x in s:
                mask |= 1 << order[x]
            if mask in fam:
                out |= 1
        return out

    def extend(order: list[int], prefix: list[int], used: int) -> None:
        nonlocal best, best_order
        j = len(order)
        if j == n:
            if prefix > best:
                best, best_order = list(prefix), list(order)
            return
        tried = set()
        for v in range(n):
            if used >> v & 1 or twin_rep[v] in tried:
                continue
            tried.add(twin_rep[v])
            order.append(v)
            prefix.append(block(order, j))
            if prefix >= best[: len(prefix)]:
                extend(order, prefix, used | 1 << v)
            prefix.pop()
            order.pop()

    extend([], [], 0)
    label = {v: i for i, v in enumerate(best_order)}
    edges = [tuple(sorted(label[v - 1] + 1 for v in e)) for e in h.edges]
    return Hypergraph(k, n, edges)


def isomorphic(a: Hypergraph, b: Hypergraph) -> bool:
    """Isomorphism up to relabeling; isolated vertices are ignored."""
    if a.k != b.k or len(a) != len(b):
        return False
    n = max(a.n, b.n)
    return canonical_form(Hypergraph(a.k, n, a.edges)) == canonical_form(Hypergraph(b.k, n, b.edges))


# -- certification ---------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    k: int
    d: int
    t: int | None
    regime: str
    claimed: Fraction
    minimum: Fraction | None
    witness: Hypergraph | None
    sound: bool
    attained: bool
    exhaustive: bool
    result: SearchResult


def certify_bound(
    k: int,
    d: int,
    t: int | None,
    n_max: int,
    *,
    symmetry: str | None = None,
    **kwargs,
) -> Certificate:
    """Search for the least shadow ratio under degree cap ``d`` and compare.

    With ``t`` given, the claimed bound is the long- or short-interval bound
    at that ``t`` (whichever applies to ``d``); otherwise the best bound of
    :func:`best_bound`.  A claim above the search minimum is reported with
    ``sound=False`` and the offending witness.
    """
    if t is None:
        entry = best_bound(k, d).best
        regime, claimed = entry.regime, entry.value
    else:
        threshold, value = bound_long_interval(k, t)
        if d <= threshold:
            regime, claimed = "long-interval", value
        else:
            regime, claimed = "short-interval", bound_short_interval(k, t, d)
    if symmetry is None:
        symmetry = "full_canonical" if n_max <= FULL_CANONICAL_MAX_N else "first_edge_canonical"
    result = enumerate_min_ratio(SearchSpec(k, n_max, d, symmetry=symmetry), **kwargs)
    minimum = result.value
    sound = minimum is None or minimum >= claimed
    attained = minimum is not None and minimum == claimed
    return Certificate(
        k, d, t, regime, claimed, minimum, result.witness, sound, attained, result.exhaustive, result
    )


def degree_sequence(h: Hypergraph) -> tuple[int, ...]:
    return tuple(sorted(degrees(h), reverse=True))
