"""Rank profile and the optimal-cost lower bound it yields."""
from __future__ import annotations

from dataclasses import dataclass

from .graph import WeightedGraph, sorted_incidence


@dataclass(frozen=True)
class RankProfile:
    y: tuple[int, ...]

    @property
    def delta(self) -> int:
        return len(self.y)


def rank_weights(g: WeightedGraph) -> RankProfile:
    """y[i] is the heaviest edge ranked i+1 in any vertex's E_u ordering.

    Only vertices of degree > i have a rank-(i+1) edge, so they alone
    contribute to y[i].
    """
    y = [0] * g.max_degree
    for u in range(g.n):
        for i, e in enumerate(sorted_incidence(g, u)):
            w = g.edges[e][2]
            if w > y[i]:
                y[i] = w
    return RankProfile(tuple(y))


def lower_bound(g: WeightedGraph) -> int:
    """Sum of the rank profile.

    Any coloring needs at least Δ classes, and sorted by non-increasing
    weight its i-th class weighs at least y_i, so OPT >= y_1 + ... + y_Δ.
    """
    return sum(rank_weights(g).y)
