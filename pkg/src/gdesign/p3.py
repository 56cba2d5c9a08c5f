"""Partition the edges of a connected graph into 3-vertex paths.

A connected graph with an even number of edges splits exactly into P3's;
with an odd count, one edge is left over.  The construction roots a BFS
spanning tree and resolves edges bottom-up, so it runs in linear time and
is fully deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graph import P3, Block, Edge, Graph, edge


class DisconnectedGraphError(ValueError):
    pass


def p3_partition(g: Graph) -> tuple[list[Block], Edge | None]:
    """Split E(g) into P3 blocks plus at most one leftover edge.

    Isolated vertices are ignored; more than one edge-bearing component
    raises :class:`DisconnectedGraphError`.
    """
    adj = g.adjacency
    active = sorted(u for u in g.vertices if adj[u])
    if not active:
        return [], None
    root = active[0]
    parent = {root: None}
    depth = {root: 0}
    order = [root]
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in sorted(adj[u]):
            if w not in depth:
                depth[w] = depth[u] + 1
                parent[w] = u
                order.append(w)
                queue.append(w)
    if len(order) != len(active):
        raise DisconnectedGraphError("graph has more than one component with edges")

    pending: dict[int, list[int]] = {u: [] for u in order}
    for a, b in g.edges:
        if parent.get(a) == b or parent.get(b) == a:
            continue
        # non-tree edge goes to the deeper endpoint, larger label on ties
        owner = max((a, b), key=lambda x: (depth[x], x))
        pending[owner].append(a if owner == b else b)

    paths = []
    leftover = None
    for u in reversed(order):
        ends = sorted(pending[u])
        for i in range(0, len(ends) - 1, 2):
            paths.append(Block(P3, (ends[i], u, ends[i + 1])))
        p = parent[u]
        if len(ends) % 2:
            if p is None:
                leftover = edge(u, ends[-1])
            else:
                paths.append(Block(P3, (ends[-1], u, p)))
        elif p is not None:
            pending[p].append(u)
    return paths, leftover


@dataclass
class ComponentReport:
    vertices: frozenset[int]
    n_edges: int
    paths: list[Block]
    leftover: Edge | None

    @property
    def even(self) -> bool:
        return self.n_edges % 2 == 0


@dataclass
class PartitionReport:
    components: list[ComponentReport]

    @property
    def exact(self) -> bool:
        return all(c.even for c in self.components)

    @property
    def paths(self) -> list[Block]:
        return [p for c in self.components for p in c.paths]

    @property
    def leftovers(self) -> list[Edge]:
        return [c.leftover for c in self.components if c.leftover is not None]

    @property
    def odd_components(self) -> int:
        return sum(not c.even for c in self.components)


def p3_partition_components(g: Graph) -> PartitionReport:
    comps = []
    for comp in g.components():
        paths, left = p3_partition(comp)
        comps.append(ComponentReport(comp.vertices, len(comp.edges), paths, left))
    return PartitionReport(comps)
