"""Instance generators: random labeled trees, the first-fit worst case, and
an oracle-backed search for trees where even the best-of-both is expensive.
"""
from __future__ import annotations

import heapq
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .algorithms import algorithm1, kk_greedy
from .graph import ColoringSolution, WeightedGraph, serialize_instance, validate_tree
from .oracle import OptimalCertificate, OracleBudgetExceeded, exact_mec


@dataclass(frozen=True)
class GeneratorSpec:
    family: str  # RANDOM_TREE | ALG1_WORST | COMBINED_SEARCH
    n: int = 2
    wmin: int = 1
    wmax: int = 1
    C: int = 2
    eps: int = 1
    seed: int = 0


def prufer_decode(seq: Sequence[int], n: int) -> list[tuple[int, int]]:
    """Edges of the labeled tree on ``n`` vertices with Prüfer sequence ``seq``."""
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return edges


def gen_random_tree(n: int, wmin: int, wmax: int, seed: int) -> WeightedGraph:
    """Uniform random labeled tree (Prüfer decoding) with uniform integer weights."""
    if n < 2:
        raise ValueError("need n >= 2")
    if not 1 <= wmin <= wmax:
        raise ValueError(f"need 1 <= wmin <= wmax, got {wmin}, {wmax}")
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    return WeightedGraph(n, tuple((u, v, rng.randint(wmin, wmax)) for u, v in prufer_decode(seq, n)))


def gen_alg1_worst(C: int, eps: int) -> WeightedGraph:
    """Path C, eps, eps, C. First-fit from vertex 0 pays 2C, optimum is C + 2 eps."""
    if not C > eps >= 1:
        raise ValueError(f"need C > eps >= 1, got C={C}, eps={eps}")
    return WeightedGraph(5, ((0, 1, C), (1, 2, eps), (2, 3, eps), (3, 4, C)))


def labeled_trees(n: int) -> Iterator[tuple[int, ...]]:
    """Every labeled tree on ``n`` vertices as a parent array rooted at 0.

    ``parent[v]`` for ``v = 1..n-1``; all ``n**(n-2)`` trees appear once.
    """
    if n == 1:
        yield ()
        return
    for parent in itertools.product(range(n), repeat=n - 1):
        par = (None,) + parent
        ok = True
        for v in range(1, n):
            if par[v] == v:
                ok = False
                break
        if not ok:
            continue
        # acyclic iff every vertex reaches 0
        reaches = [False] * n
        reaches[0] = True
        for v in range(1, n):
            path = []
            x = v
            while not reaches[x] and len(path) <= n:
                path.append(x)
                x = par[x]
            if not reaches[x]:
                ok = False
                break
            for y in path:
                reaches[y] = True
        if ok:
            yield parent


def tree_from_parents(parent: Sequence[int], weights: Sequence[int]) -> WeightedGraph:
    """Edge ``v-1`` joins ``parent[v-1]`` and ``v``."""
    return WeightedGraph(
        len(parent) + 1, tuple((p, v + 1, w) for v, (p, w) in enumerate(zip(parent, weights)))
    )


def min_alg1_over_roots(g: WeightedGraph) -> tuple[ColoringSolution, int]:
    best = None
    for r in range(g.n):
        sol, _ = algorithm1(validate_tree(g, r))
        if best is None or sol.total < best[0].total:
            best = (sol, r)
    return best


@dataclass
class SearchResult:
    graph: WeightedGraph
    ratio: Fraction
    alg1: ColoringSolution
    alg1_root: int
    kk: ColoringSolution
    certificate: OptimalCertificate
    evaluated: int
    nodes_used: int
    budget_exhausted: bool = False
    history: list = field(default_factory=list)

    def to_json(self) -> dict:
        def sol(s: ColoringSolution) -> dict:
            return {
                "classes": [sorted(c) for c in s.classes],
                "class_weights": list(s.class_weights),
                "total": s.total,
            }

        g = self.graph
        return {
            "instance": serialize_instance(g),
            "n": g.n,
            "edges": [list(e) for e in g.edges],
            "ratio": float(self.ratio),
            "ratio_exact": f"{self.ratio.numerator}/{self.ratio.denominator}",
            "alg1": dict(sol(self.alg1), root=self.alg1_root),
            "kk": sol(self.kk),
            "optimal": sol(self.certificate.solution),
            "opt": self.certificate.opt,
            "evaluated": self.evaluated,
            "oracle_nodes": self.nodes_used,
            "budget_exhausted": self.budget_exhausted,
        }


def _key(ratio: Fraction, g: WeightedGraph):
    # larger ratio wins; among equal ratios the smaller, then lexicographically
    # smaller encoding, so the winner does not depend on visiting order
    return (ratio, -g.m, tuple(-x for e in g.edges for x in e))


def search_combined_worst(
    max_edges: int,
    weight_levels: Sequence[int],
    budget: int,
    seed: int = 0,
    samples: int = 2000,
    climb_steps: int = 2000,
    restarts: int = 8,
) -> SearchResult:
    """Look for a tree maximizing min(best-root first-fit, greedy) / OPT.

    Random labeled trees with weights drawn from ``weight_levels`` are
    sampled first, then the ``restarts`` best samples are hill-climbed by
    changing one weight, moving a leaf, or adding/removing a leaf. ``budget`` caps the total number of oracle
    nodes across the whole search; when it runs out the best instance seen
    so far is returned with ``budget_exhausted`` set.
    """
    levels = sorted(set(weight_levels))
    if not levels:
        raise ValueError("weight_levels must be non-empty")
    if max_edges < 1:
        raise ValueError("max_edges must be >= 1")
    rng = random.Random(seed)
    remaining = budget
    evaluated = 0
    best: Optional[SearchResult] = None
    exhausted = False

    def evaluate(g: WeightedGraph) -> Optional[SearchResult]:
        nonlocal remaining, evaluated, exhausted
        if remaining <= 0:
            exhausted = True
            return None
        try:
            cert = exact_mec(g, remaining)
        except OracleBudgetExceeded:
            remaining = 0
            exhausted = True
            return None
        remaining -= cert.nodes_explored
        evaluated += 1
        a1, root = min_alg1_over_roots(g)
        kk, _ = kk_greedy(g)
        ratio = Fraction(min(a1.total, kk.total), cert.opt)
        if ratio > Fraction(3, 2):
            raise TheoremViolation(g, ratio)
        return SearchResult(g, ratio, a1, root, kk, cert, 0, 0)

    def consider(res: Optional[SearchResult]) -> bool:
        nonlocal best
        if res is None:
            return False
        if best is None or _key(res.ratio, res.graph) > _key(best.ratio, best.graph):
            best = res
            return True
        return False

    def random_tree() -> WeightedGraph:
        m = rng.randint(1, max_edges)
        n = m + 1
        seq = [rng.randrange(n) for _ in range(n - 2)]
        return WeightedGraph(n, tuple((u, v, rng.choice(levels)) for u, v in prufer_decode(seq, n)))

    pool: list[SearchResult] = []
    for _ in range(samples):
        if exhausted:
            break
        res = evaluate(random_tree())
        if res is not None:
            consider(res)
            pool.append(res)
    pool.sort(key=lambda r: _key(r.ratio, r.graph), reverse=True)
    starts = pool[:restarts]

    for start in starts:
        cur = start
        for _ in range(climb_steps // max(len(starts), 1)):
            if exhausted:
                break
            res = evaluate(_mutate(cur.graph, levels, max_edges, rng))
            # equal ratios are accepted to drift across plateaus
            if res is not None and res.ratio >= cur.ratio:
                cur = res
                consider(res)

    if best is None:
        g = WeightedGraph(2, ((0, 1, levels[0]),))
        a1, root = min_alg1_over_roots(g)
        kk, _ = kk_greedy(g)
        # nothing evaluated: a single edge is trivially optimal
        best = SearchResult(g, Fraction(1), a1, root, kk, OptimalCertificate(kk, kk.total, 1, 0), 0, 0)
    best.evaluated = evaluated
    best.nodes_used = budget - max(remaining, 0)
    best.budget_exhausted = exhausted
    return best


def _mutate(g: WeightedGraph, levels: list[int], max_edges: int, rng: random.Random) -> WeightedGraph:
    edges = [list(e) for e in g.edges]
    n = g.n
    move = rng.random()
    if move < 0.5 or len(levels) == 1 and move < 0.8:
        e = rng.randrange(len(edges))
        edges[e][2] = rng.choice(levels)
    elif move < 0.8 and n > 2:
        # detach a leaf and hang it elsewhere
        deg = [0] * n
        for u, v, _ in edges:
            deg[u] += 1
            deg[v] += 1
        leaf_edges = [i for i, (u, v, _) in enumerate(edges) if deg[u] == 1 or deg[v] == 1]
        i = rng.choice(leaf_edges)
        u, v, w = edges[i]
        leaf, other = (u, v) if deg[u] == 1 else (v, u)
        target = rng.choice([x for x in range(n) if x not in (leaf, other)])
        edges[i] = [target, leaf, w]
    elif n - 1 < max_edges:
        edges.append([rng.randrange(n), n, rng.choice(levels)])
        n += 1
    elif n > 2:
        # drop a leaf (relabel the last vertex into its slot)
        deg = [0] * n
        for u, v, _ in edges:
            deg[u] += 1
            deg[v] += 1
        leaves = [x for x in range(n) if deg[x] == 1]
        leaf = rng.choice(leaves)
        edges = [e for e in edges if leaf not in e[:2]]
        last = n - 1
        if leaf != last:
            edges = [[leaf if x == last else x for x in e[:2]] + [e[2]] for e in edges]
        n -= 1
    return WeightedGraph(n, tuple(tuple(e) for e in edges))


class TheoremViolation(RuntimeError):
    """A tree where the best of both algorithms exceeds 3/2 times optimal."""

    def __init__(self, graph: WeightedGraph, ratio: Fraction):
        self.graph = graph
        self.ratio = ratio
        super().__init__(f"combined ratio {ratio} > 3/2 on instance:\n{serialize_instance(graph)}")
