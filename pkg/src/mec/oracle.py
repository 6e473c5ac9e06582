"""Exact max edge coloring by branch and bound, for small instances.

Edges are assigned one at a time, heaviest first, each either to an
already open class it fits in or to a fresh class whose index is one past
the current count (restricted growth, so every partition into matchings
is reached exactly once). Because edges arrive by non-increasing weight,
the edge that opens a class fixes that class's weight, and the committed
cost of a partial assignment is exact.

Pruning bound at a node with ``s`` open classes: a vertex ``v`` of degree
``d > s`` still needs ``d - s`` classes that do not exist yet. Each of them
weighs at least the edge of ``v`` placed in it, and ``v``'s unplaced edges
are its lightest, so the extra cost is at least the sum of the ``d - s``
lightest weights at ``v``. The maximum of that over all vertices never
overestimates, so cutting when ``committed + extra >= incumbent`` keeps
every strictly better completion.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional

from .algorithms import algorithm1, kk_greedy, kk_order
from .bounds import RankProfile, rank_weights
from .graph import (
    ColoringSolution,
    NotATree,
    WeightedGraph,
    validate_solution,
    validate_tree,
)

DEFAULT_BUDGET = 50_000_000


def default_budget() -> int:
    return int(os.environ.get("MEC_ORACLE_BUDGET", DEFAULT_BUDGET))


class OracleBudgetExceeded(RuntimeError):
    """Node budget ran out; ``best`` is the incumbent, not known to be optimal."""

    def __init__(self, best: ColoringSolution, nodes: int, budget: int):
        self.best = best
        self.nodes = nodes
        self.budget = budget
        super().__init__(f"oracle budget of {budget} nodes exceeded (best found: {best.total})")


class _OutOfBudget(Exception):
    pass


@dataclass(frozen=True)
class OptimalCertificate:
    solution: ColoringSolution  # classes by non-increasing weight
    opt: int
    s_star: int
    nodes_explored: int
    leaves: int = 0

    @property
    def weights(self) -> tuple[int, ...]:
        return self.solution.class_weights


def _vertex_bounds(g: WeightedGraph) -> list[int]:
    """extra[s] for s = 0..Δ (zero past Δ)."""
    per_vertex = []
    for inc in g.incidence:
        ws = sorted(g.edges[e][2] for e in inc)  # ascending
        prefix = [0]
        for w in ws:
            prefix.append(prefix[-1] + w)
        per_vertex.append(prefix)
    delta = g.max_degree
    extra = []
    for s in range(delta + 1):
        extra.append(max((p[len(p) - 1 - s] for p in per_vertex if len(p) - 1 > s), default=0))
    return extra


def _seed(g: WeightedGraph) -> ColoringSolution:
    best, _ = kk_greedy(g)
    try:
        t = validate_tree(g, 0)
    except NotATree:
        return best
    a1, _ = algorithm1(t)
    return a1 if a1.total <= best.total else best


def exact_mec(
    g: WeightedGraph,
    budget: Optional[int] = None,
    *,
    prune: bool = True,
    class_cap: Optional[int] = None,
) -> OptimalCertificate:
    """Optimal coloring of ``g`` within ``budget`` search nodes.

    ``prune=False`` walks every partition of the edges into matchings (used
    to cross-check the enumeration itself). ``class_cap`` limits the number
    of classes; it is a heuristic and off by default.
    """
    if budget is None:
        budget = default_budget()
    if budget <= 0:
        raise ValueError("budget must be positive")
    m = g.m
    seed = _seed(g)
    if m == 0:
        return OptimalCertificate(seed, 0, 0, 1, 1)

    order = kk_order(g)
    ebits = [(1 << g.edges[e][0]) | (1 << g.edges[e][1]) for e in order]
    ews = [g.edges[e][2] for e in order]
    extra = _vertex_bounds(g)
    delta = len(extra) - 1
    cap = class_cap if class_cap is not None else m

    masks: list[int] = []
    assign = [0] * m
    state = {"best": seed.total, "assign": None}
    nodes = 0
    leaves = 0

    def rec(k: int, committed: int) -> None:
        nonlocal nodes, leaves
        nodes += 1
        if nodes > budget:
            raise _OutOfBudget
        s = len(masks)
        if prune and committed + (extra[s] if s <= delta else 0) >= state["best"]:
            return
        if k == m:
            leaves += 1
            if committed < state["best"]:
                state["best"] = committed
                state["assign"] = assign[:]
            return
        bits = ebits[k]
        for c in range(s):
            mask = masks[c]
            if not mask & bits:
                masks[c] = mask | bits
                assign[k] = c
                rec(k + 1, committed)
                masks[c] = mask
        if s < cap:
            masks.append(bits)
            assign[k] = s
            rec(k + 1, committed + ews[k])
            masks.pop()

    try:
        rec(0, 0)
    except _OutOfBudget:
        best = seed if state["assign"] is None else _solution(g, order, state["assign"])
        raise OracleBudgetExceeded(best.sorted(), nodes, budget) from None

    sol = seed if state["assign"] is None else _solution(g, order, state["assign"])
    sol = sol.sorted()
    return OptimalCertificate(sol, sol.total, sol.num_classes, nodes, leaves)


def _solution(g: WeightedGraph, order: list[int], assign: list[int]) -> ColoringSolution:
    classes: list[list[int]] = [[] for _ in range(max(assign) + 1)]
    for k, c in enumerate(assign):
        classes[c].append(order[k])
    return ColoringSolution.from_classes(g, classes)


@dataclass(frozen=True)
class CertificateReport:
    valid: bool
    rank_dominance: bool  # w_i* >= y_i for i <= Δ
    above_lower_bound: bool
    details: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.valid and self.rank_dominance and self.above_lower_bound


def check_certificate(
    g: WeightedGraph, cert: OptimalCertificate, profile: Optional[RankProfile] = None
) -> CertificateReport:
    if profile is None:
        profile = rank_weights(g)
    details = []
    violation = validate_solution(g, cert.solution)
    valid = violation is None and cert.opt == cert.solution.total and cert.s_star == cert.solution.num_classes
    if violation is not None:
        details.append(f"invalid solution: {violation}")
    elif not valid:
        details.append("certificate totals disagree with its solution")
    ws = sorted(cert.solution.class_weights, reverse=True)
    dominance = len(ws) >= profile.delta
    for i, y in enumerate(profile.y):
        if i >= len(ws) or ws[i] < y:
            dominance = False
            got = ws[i] if i < len(ws) else None
            details.append(f"w*_{i + 1} = {got} < y_{i + 1} = {y}")
    lb = sum(profile.y)
    above = cert.opt >= lb
    if not above:
        details.append(f"OPT {cert.opt} below lower bound {lb}")
    return CertificateReport(valid, dominance, above, tuple(details))
