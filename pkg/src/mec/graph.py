"""Weighted graphs, rooted trees and edge-coloring solutions.

Vertices are dense integer ids ``0..n-1``. Edges keep the index they were
given at construction time; every ordering and tie-break in the package
falls back on that index.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence


class InstanceError(ValueError):
    """Invalid instance text or invariant violation."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MalformedLine(InstanceError):
    pass


class VertexOutOfRange(InstanceError):
    pass


class SelfLoop(InstanceError):
    pass


class DuplicateEdge(InstanceError):
    pass


class BadWeight(InstanceError):
    pass


class NotATree(ValueError):
    pass


class NotConnected(NotATree):
    pass


class WrongEdgeCount(NotATree):
    pass


Edge = tuple[int, int, int]


@dataclass(frozen=True)
class WeightedGraph:
    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        if self.n < 0:
            raise InstanceError(f"negative vertex count {self.n}")
        seen = set()
        for u, v, w in self.edges:
            _check_edge(self.n, u, v, w, seen)

    @property
    def m(self) -> int:
        return len(self.edges)

    def weight(self, e: int) -> int:
        return self.edges[e][2]

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, (u, v, _) in enumerate(self.edges):
            inc[u].append(i)
            inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def ordered_incidence(self) -> tuple[tuple[int, ...], ...]:
        """E_u for every vertex (see ``sorted_incidence``)."""
        edges = self.edges
        return tuple(tuple(sorted(inc, key=lambda e: (-edges[e][2], e))) for inc in self.incidence)

    def degree(self, u: int) -> int:
        return len(self.incidence[u])

    @cached_property
    def max_degree(self) -> int:
        return max((len(x) for x in self.incidence), default=0)

    @property
    def max_weight(self) -> int:
        return max((w for _, _, w in self.edges), default=0)


def _check_edge(n, u, v, w, seen, line=None):
    if not (0 <= u < n and 0 <= v < n):
        raise VertexOutOfRange(f"vertex out of range in edge ({u}, {v}) with n={n}", line)
    if u == v:
        raise SelfLoop(f"self-loop at vertex {u}", line)
    key = (min(u, v), max(u, v))
    if key in seen:
        raise DuplicateEdge(f"duplicate edge ({u}, {v})", line)
    if not isinstance(w, int) or isinstance(w, bool) or w < 1:
        raise BadWeight(f"weight must be a positive integer, got {w!r}", line)
    seen.add(key)


def _ints(line: str, lineno: int, count: int) -> list[int]:
    parts = line.split()
    if len(parts) != count:
        raise MalformedLine(f"expected {count} integers, got {line!r}", lineno)
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise MalformedLine(f"non-integer token in {line!r}", lineno) from None


def parse_instance(text: str) -> WeightedGraph:
    """Parse the ``n m`` / ``u v w`` instance format.

    Lines starting with ``#`` and blank lines are skipped. Errors carry the
    1-based line number of the offending line.
    """
    rows = [
        (i, raw.strip())
        for i, raw in enumerate(text.splitlines(), start=1)
        if raw.strip() and not raw.lstrip().startswith("#")
    ]
    if not rows:
        raise MalformedLine("missing header line 'n m'", 1)
    lineno, header = rows[0]
    n, m = _ints(header, lineno, 2)
    if n < 0 or m < 0:
        raise MalformedLine("negative n or m in header", lineno)
    body = rows[1:]
    if len(body) != m:
        where = body[m][0] if len(body) > m else (body[-1][0] + 1 if body else lineno + 1)
        raise MalformedLine(f"header declares {m} edges, found {len(body)}", where)
    seen: set = set()
    edges = []
    for lineno, line in body:
        u, v, w = _ints(line, lineno, 3)
        _check_edge(n, u, v, w, seen, lineno)
        edges.append((u, v, w))
    return WeightedGraph(n, tuple(edges))


def serialize_instance(g: WeightedGraph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v} {w}" for u, v, w in g.edges)
    return "\n".join(lines) + "\n"


def sorted_incidence(g: WeightedGraph, u: int) -> list[int]:
    """Edges at ``u`` by non-increasing weight, ties by ascending edge index."""
    if not 0 <= u < g.n:
        raise ValueError(f"vertex {u} out of range")
    return list(g.ordered_incidence[u])


@dataclass(frozen=True)
class TreeView:
    graph: WeightedGraph
    root: int
    parent: tuple[Optional[tuple[int, int]], ...]
    preorder: tuple[int, ...]

    @cached_property
    def children_edges(self) -> tuple[tuple[int, ...], ...]:
        """Per vertex, the edges to its children in E_v order."""
        out = []
        for v, order in enumerate(self.graph.ordered_incidence):
            pe = self.parent[v][1] if self.parent[v] is not None else None
            out.append(tuple(e for e in order if e != pe))
        return tuple(out)


def validate_tree(g: WeightedGraph, root: int = 0) -> TreeView:
    if not 0 <= root < max(g.n, 1) or g.n == 0:
        raise NotATree(f"root {root} is not a vertex")
    parent: list[Optional[tuple[int, int]]] = [None] * g.n
    seen = [False] * g.n
    seen[root] = True
    order = []
    stack = [root]
    while stack:
        v = stack.pop()
        order.append(v)
        # reversed so that lower edge indices are visited first
        for e in reversed(g.incidence[v]):
            a, b, _ = g.edges[e]
            c = b if a == v else a
            if not seen[c]:
                seen[c] = True
                parent[c] = (v, e)
                stack.append(c)
    if len(order) != g.n:
        raise NotConnected(f"graph is not connected ({len(order)} of {g.n} vertices reachable from {root})")
    if g.m != g.n - 1:
        raise WrongEdgeCount(f"a tree on {g.n} vertices has {g.n - 1} edges, got {g.m}")
    return TreeView(g, root, tuple(parent), tuple(order))


@dataclass(frozen=True)
class ColoringSolution:
    classes: tuple[frozenset[int], ...]
    class_weights: tuple[int, ...]
    total: int

    @classmethod
    def from_classes(cls, g: WeightedGraph, classes: Iterable[Iterable[int]]) -> "ColoringSolution":
        cs = tuple(frozenset(c) for c in classes)
        ws = tuple(max((g.edges[e][2] for e in c), default=0) for c in cs)
        return cls(cs, ws, sum(ws))

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    def sorted(self) -> "ColoringSolution":
        """Classes reordered by non-increasing weight (stable)."""
        order = sorted(range(len(self.classes)), key=lambda i: -self.class_weights[i])
        return ColoringSolution(
            tuple(self.classes[i] for i in order),
            tuple(self.class_weights[i] for i in order),
            self.total,
        )

    def sorted_weights(self) -> list[int]:
        return sorted(self.class_weights, reverse=True)


@dataclass(frozen=True)
class Violation:
    kind: str  # non-matching | missing-edge | duplicated-edge | unknown-edge | empty-class | weight-mismatch
    message: str
    class_index: Optional[int] = None
    edges: tuple[int, ...] = ()

    def __str__(self):
        return self.message


def validate_solution(g: WeightedGraph, s: ColoringSolution) -> Optional[Violation]:
    """Return ``None`` if ``s`` is a valid coloring of ``g``, else the first violation."""
    owner: dict[int, int] = {}
    for i, cls in enumerate(s.classes):
        if not cls:
            return Violation("empty-class", f"class {i} is empty", i)
        at: dict[int, int] = {}
        for e in sorted(cls):
            if not 0 <= e < g.m:
                return Violation("unknown-edge", f"class {i} holds unknown edge {e}", i, (e,))
            if e in owner:
                return Violation(
                    "duplicated-edge", f"edge {e} appears in classes {owner[e]} and {i}", i, (e,)
                )
            owner[e] = i
            u, v, _ = g.edges[e]
            for x in (u, v):
                if x in at:
                    return Violation(
                        "non-matching",
                        f"class {i} has edges {at[x]} and {e} sharing vertex {x}",
                        i,
                        (at[x], e),
                    )
                at[x] = e
    missing = [e for e in range(g.m) if e not in owner]
    if missing:
        return Violation("missing-edge", f"edges {missing} are not colored", None, tuple(missing))
    if len(s.class_weights) != len(s.classes):
        return Violation("weight-mismatch", "class_weights length differs from class count")
    for i, cls in enumerate(s.classes):
        w = max(g.edges[e][2] for e in cls)
        if s.class_weights[i] != w:
            return Violation(
                "weight-mismatch", f"class {i} weight is {w}, recorded {s.class_weights[i]}", i
            )
    if s.total != sum(s.class_weights):
        return Violation("weight-mismatch", f"total {s.total} != sum of class weights {sum(s.class_weights)}")
    return None


def parse_solution(text: str) -> list[list[int]]:
    classes = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            classes.append([int(t) for t in line.split()])
        except ValueError:
            raise MalformedLine(f"non-integer edge index in {line!r}", lineno) from None
    return classes


def serialize_solution(s: ColoringSolution) -> str:
    return "".join(" ".join(str(e) for e in sorted(c)) + "\n" for c in s.classes)


def path_graph(weights: Sequence[int]) -> WeightedGraph:
    return WeightedGraph(len(weights) + 1, tuple((i, i + 1, w) for i, w in enumerate(weights)))


def star_graph(weights: Sequence[int]) -> WeightedGraph:
    return WeightedGraph(len(weights) + 1, tuple((0, i + 1, w) for i, w in enumerate(weights)))
