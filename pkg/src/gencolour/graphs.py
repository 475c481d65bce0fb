"""Immutable simple undirected graphs and the structural primitives built on them.

Vertices are dense 0-based indices.  A graph built by the complete-bipartite
generator carries its bipartition as stored metadata (``part_a``) because the
star-forest colouring algorithm is asymmetric in the two sides; the
annotation is never inferred.  All values are immutable after construction,
so every operation here is a pure function and safe to share across workers.
"""

from __future__ import annotations

import heapq
import random
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0 .. vertex_count-1``.

    ``edges`` holds unordered pairs normalised as ``(u, v)`` with ``u < v``.
    ``part_a`` is the optional bipartition annotation set by the K_{m,n}
    generator (part A; part B is the complement).
    """

    vertex_count: int
    edges: frozenset[tuple[int, int]]
    part_a: frozenset[int] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be nonnegative")
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < v < self.vertex_count):
                raise ValueError(f"edge ({u}, {v}) out of range or not normalised")
        if self.part_a is not None:
            if any(not 0 <= v < self.vertex_count for v in self.part_a):
                raise ValueError("part_a out of range")

    @staticmethod
    def from_edges(vertex_count: int, edges: Iterable[tuple[int, int]],
                   part_a: Iterable[int] | None = None) -> "Graph":
        """Build a graph, normalising edge order and rejecting duplicates."""
        seen = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
        pa = frozenset(part_a) if part_a is not None else None
        return Graph(vertex_count, frozenset(seen), pa)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def adj_masks(self) -> tuple[int, ...]:
        """Neighbourhoods as bitmasks; the workhorse of the search engines."""
        masks = [0] * self.vertex_count
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self.edges


def make_complete_bipartite(m: int, n: int) -> Graph:
    """K_{m,n}: part A is ``0..m-1``, part B is ``m..m+n-1``, edges A x B."""
    if m < 1 or n < 1:
        raise ValueError("both sides of a complete bipartite graph must be nonempty")
    edges = frozenset((a, b) for a in range(m) for b in range(m, m + n))
    return Graph(m + n, edges, frozenset(range(m)))


_NAME_RE = re.compile(r"^(Kb(\d+)_(\d+)|K(\d+)|P(\d+)|C(\d+))$")


def make_named(spec: str) -> Graph:
    """Parse a generator string: ``K<n>``, ``P<n>``, ``C<n>`` or ``Kb<m>_<n>``.

    Paths and cycles are numbered along the walk.  ``C<n>`` needs n >= 3.
    """
    m = _NAME_RE.match(spec.strip())
    if not m:
        raise ValueError(f"cannot parse graph name {spec!r}")
    if m.group(2) is not None:
        return make_complete_bipartite(int(m.group(2)), int(m.group(3)))
    if m.group(4) is not None:
        n = int(m.group(4))
        if n < 1:
            raise ValueError("K<n> needs n >= 1")
        return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    if m.group(5) is not None:
        n = int(m.group(5))
        if n < 1:
            raise ValueError("P<n> needs n >= 1")
        return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    n = int(m.group(6))
    if n < 3:
        raise ValueError("C<n> needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph induced by ``vertices``, relabelled by rank order.

    The bipartition annotation is not carried over; it is generator
    metadata, meaningful only for the graph it was created with.
    """
    vs = sorted(set(vertices))
    if vs and not (0 <= vs[0] and vs[-1] < g.vertex_count):
        raise ValueError("vertex out of range")
    rank = {v: i for i, v in enumerate(vs)}
    keep = set(vs)
    edges = [(rank[u], rank[v]) for u, v in g.edges if u in keep and v in keep]
    return Graph.from_edges(len(vs), edges)


def connected_components(g: Graph) -> list[frozenset[int]]:
    """Maximal connected vertex sets, ordered by their minimum vertex."""
    seen = [False] * g.vertex_count
    out = []
    for start in range(g.vertex_count):
        if seen[start]:
            continue
        comp = {start}
        seen[start] = True
        stack = [start]
        while stack:
            u = stack.pop()
            for w in g.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.add(w)
                    stack.append(w)
        out.append(frozenset(comp))
    return out


def degeneracy_order(g: Graph) -> tuple[list[int], int]:
    """Min-degree peeling order and the colouring number (degeneracy + 1).

    Repeatedly removes a minimum-degree vertex, breaking ties by lowest
    index so the order is reproducible.  Reversing the returned order gives
    a sequence in which every vertex has fewer than ``colouring_number``
    earlier neighbours.  The empty graph has colouring number 0.
    """
    n = g.vertex_count
    if n == 0:
        return [], 0
    deg = [len(g.adjacency[v]) for v in range(n)]
    heap = [(deg[v], v) for v in range(n)]
    heapq.heapify(heap)
    removed = [False] * n
    order: list[int] = []
    max_seen = 0
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue  # stale entry
        removed[v] = True
        order.append(v)
        max_seen = max(max_seen, d)
        for w in g.adjacency[v]:
            if not removed[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return order, max_seen + 1


def colouring_number(g: Graph) -> int:
    return degeneracy_order(g)[1]


def random_graph(vertex_count: int, edge_probability: float, rng: random.Random) -> Graph:
    """G(n, p) with edges drawn in a fixed pair order, for seeded sweeps."""
    edges = [(i, j)
             for i in range(vertex_count)
             for j in range(i + 1, vertex_count)
             if rng.random() < edge_probability]
    return Graph.from_edges(vertex_count, edges)


# --- text format -----------------------------------------------------------
#
#   vertices <n>
#   edge <u> <v>
#
# one edge per line, '#' starts a comment, duplicate edges rejected.

def graph_to_text(g: Graph) -> str:
    lines = [f"vertices {g.vertex_count}"]
    lines.extend(f"edge {u} {v}" for u, v in sorted(g.edges))
    return "\n".join(lines) + "\n"


def graph_from_text(text: str) -> Graph:
    vertex_count = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vertices" and len(parts) == 2:
            if vertex_count is not None:
                raise ValueError(f"line {lineno}: repeated vertices line")
            vertex_count = int(parts[1])
        elif parts[0] == "edge" and len(parts) == 3:
            if vertex_count is None:
                raise ValueError(f"line {lineno}: edge before vertices line")
            edges.append((int(parts[1]), int(parts[2])))
        else:
            raise ValueError(f"line {lineno}: cannot parse {raw!r}")
    if vertex_count is None:
        raise ValueError("missing vertices line")
    return Graph.from_edges(vertex_count, edges)


def write_graph(path: str, g: Graph) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(graph_to_text(g))


def read_graph(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return graph_from_text(fh.read())
