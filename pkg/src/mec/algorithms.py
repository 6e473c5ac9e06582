"""First-fit approximation algorithms for max edge coloring.

``algorithm1`` is the tree-specific pre-order first-fit, ``kk_greedy`` the
descending-weight first-fit that works on any graph, and ``best_of`` runs
both on a tree and keeps the cheaper coloring.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal

from .graph import ColoringSolution, TreeView, WeightedGraph

Tag = Literal["ALG1", "KK", "BEST"]


@dataclass(frozen=True)
class Step:
    edge: int
    cls: int
    inspected: int  # classes rejected before the one chosen


@dataclass(frozen=True)
class AlgorithmTrace:
    tag: Tag
    steps: tuple[Step, ...]


def _first_fit(g: WeightedGraph, order: Iterable[int]) -> tuple[list[list[int]], list[Step]]:
    edges = g.edges
    masks: list[int] = []  # vertex bitmask per class
    classes: list[list[int]] = []
    steps = []
    for e in order:
        u, v, _ = edges[e]
        bits = (1 << u) | (1 << v)
        for k, mask in enumerate(masks):
            if not mask & bits:
                masks[k] = mask | bits
                classes[k].append(e)
                break
        else:
            k = len(masks)
            masks.append(bits)
            classes.append([e])
        steps.append(Step(e, k, k))
    return classes, steps


def algorithm1(t: TreeView) -> tuple[ColoringSolution, AlgorithmTrace]:
    """Pre-order first-fit on a rooted tree.

    Each vertex, in pre-order, pushes the edges to its children (heaviest
    first) into the lowest-indexed class that is still a matching with
    them. Produces exactly Δ classes.
    """
    order = [e for v in t.preorder for e in t.children_edges[v]]
    classes, steps = _first_fit(t.graph, order)
    return ColoringSolution.from_classes(t.graph, classes), AlgorithmTrace("ALG1", tuple(steps))


def kk_order(g: WeightedGraph) -> list[int]:
    return sorted(range(g.m), key=lambda e: (-g.edges[e][2], e))


def kk_greedy(g: WeightedGraph) -> tuple[ColoringSolution, AlgorithmTrace]:
    """Greedy first-fit over all edges by non-increasing weight."""
    classes, steps = _first_fit(g, kk_order(g))
    return ColoringSolution.from_classes(g, classes), AlgorithmTrace("KK", tuple(steps))


def best_of(t: TreeView) -> tuple[ColoringSolution, Tag]:
    """Cheaper of ``algorithm1`` and ``kk_greedy``; a tie goes to ALG1."""
    a1, _ = algorithm1(t)
    kk, _ = kk_greedy(t.graph)
    if kk.total < a1.total:
        return kk, "KK"
    return a1, "ALG1"
