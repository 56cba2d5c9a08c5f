"""Simple undirected graphs, host-graph families and labeled pattern copies."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

Edge = tuple[int, int]


def edge(a: int, b: int) -> Edge:
    if a == b:
        raise ValueError(f"loop at vertex {a}")
    return (a, b) if a < b else (b, a)


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    vertices: frozenset[int]
    edges: frozenset[Edge]

    def __post_init__(self):
        for a, b in self.edges:
            if a >= b:
                raise GraphError(f"edge {(a, b)} is not normalized or is a loop")
            if a not in self.vertices or b not in self.vertices:
                raise GraphError(f"edge {(a, b)} has an endpoint outside the vertex set")

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[int]], vertices: Iterable[int] = ()) -> "Graph":
        es = set()
        for a, b in edges:
            e = edge(a, b)
            if e in es:
                raise GraphError(f"repeated edge {e}")
            es.add(e)
        vs = set(vertices)
        for a, b in es:
            vs.update((a, b))
        return cls(frozenset(vs), frozenset(es))

    @cached_property
    def adjacency(self) -> dict[int, frozenset[int]]:
        adj: dict[int, set[int]] = {u: set() for u in self.vertices}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return {u: frozenset(n) for u, n in adj.items()}

    def degree(self, u: int) -> int:
        return len(self.adjacency.get(u, ()))

    def has_edge(self, a: int, b: int) -> bool:
        return a != b and edge(a, b) in self.edges

    def __len__(self) -> int:
        return len(self.edges)

    def without_vertices(self, removed: Iterable[int]) -> "Graph":
        removed = set(removed)
        return Graph(
            self.vertices - removed,
            frozenset(e for e in self.edges if e[0] not in removed and e[1] not in removed),
        )

    def minus_edges(self, edges: Iterable[Edge]) -> "Graph":
        return Graph(self.vertices, self.edges - set(edges))

    def components(self) -> list["Graph"]:
        """Connected components that carry at least one edge, ordered by least label."""
        seen: set[int] = set()
        comps = []
        adj = self.adjacency
        for start in sorted(self.vertices):
            if start in seen or not adj[start]:
                continue
            stack = [start]
            seen.add(start)
            part = {start}
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if w not in seen:
                        seen.add(w)
                        part.add(w)
                        stack.append(w)
            comps.append(
                Graph(frozenset(part), frozenset(e for e in self.edges if e[0] in part))
            )
        return comps


# ---------------------------------------------------------------------------
# host graph families


@dataclass(frozen=True)
class Complete:
    """Complete graph on an explicit label set."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(set(self.vertices))))

    @classmethod
    def of_order(cls, v: int) -> "Complete":
        return cls(tuple(range(v)))

    @property
    def order(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class Multipartite:
    """Complete multipartite graph; bipartite is the two-part case."""

    parts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        parts = tuple(tuple(sorted(p)) for p in self.parts)
        seen: set[int] = set()
        for p in parts:
            if len(set(p)) != len(p) or seen & set(p):
                raise GraphError(f"overlapping parts in multipartite spec {parts}")
            seen.update(p)
        object.__setattr__(self, "parts", parts)

    @classmethod
    def equal_parts(cls, m: int, size: int, offset: int = 0) -> "Multipartite":
        return cls(tuple(tuple(range(offset + i * size, offset + (i + 1) * size)) for i in range(m)))


def Bipartite(a: Iterable[int], b: Iterable[int]) -> Multipartite:
    return Multipartite((tuple(a), tuple(b)))


@dataclass(frozen=True)
class Join:
    left: "HostSpec"
    right: "HostSpec"


@dataclass(frozen=True)
class Union:
    members: tuple["HostSpec", ...]


HostSpec = Complete | Multipartite | Join | Union


def build_graph(spec: HostSpec) -> Graph:
    """Materialize a host-graph family descriptor."""
    if isinstance(spec, Graph):
        return spec
    if isinstance(spec, Complete):
        vs = spec.vertices
        return Graph(frozenset(vs), frozenset(itertools.combinations(vs, 2)))
    if isinstance(spec, Multipartite):
        es = set()
        for p, q in itertools.combinations(spec.parts, 2):
            for a in p:
                for b in q:
                    es.add(edge(a, b))
        return Graph(frozenset(itertools.chain.from_iterable(spec.parts)), frozenset(es))
    if isinstance(spec, Join):
        g1, g2 = build_graph(spec.left), build_graph(spec.right)
        if g1.vertices & g2.vertices:
            raise GraphError("join operands share vertices")
        cross = {edge(a, b) for a in g1.vertices for b in g2.vertices}
        return Graph(g1.vertices | g2.vertices, g1.edges | g2.edges | frozenset(cross))
    if isinstance(spec, Union):
        vs: set[int] = set()
        es: set[Edge] = set()
        for m in spec.members:
            g = build_graph(m)
            clash = es & g.edges
            if clash:
                raise GraphError(f"union repeats edge {min(clash)}")
            vs |= g.vertices
            es |= g.edges
        return Graph(frozenset(vs), frozenset(es))
    raise TypeError(f"not a host spec: {spec!r}")


# ---------------------------------------------------------------------------
# patterns and blocks


@dataclass(frozen=True)
class PatternKind:
    """Pattern graph Γ.  ``name`` is one of path, star, cycle, kite, graph.

    For ``graph`` the pattern is given by ``template``: edges between
    positions 0..n-1.
    """

    name: str
    k: int | None = None
    template: tuple[Edge, ...] | None = field(default=None, compare=True)

    def __post_init__(self):
        if self.name == "path" and (self.k is None or self.k < 2):
            raise ValueError("Path needs k >= 2")
        if self.name == "star" and (self.k is None or self.k < 1):
            raise ValueError("Star needs k >= 1")
        if self.name == "cycle" and (self.k is None or self.k < 3):
            raise ValueError("Cycle needs k >= 3")
        if self.name == "kite" and self.k not in (None, 4):
            raise ValueError("Kite has no parameter")
        if self.name == "graph":
            if not self.template:
                raise ValueError("graph pattern needs a template")
            tmpl = tuple(sorted(edge(a, b) for a, b in self.template))
            if len(set(tmpl)) != len(tmpl):
                raise ValueError("graph pattern template repeats an edge")
            object.__setattr__(self, "template", tmpl)
            n = 1 + max(max(e) for e in tmpl)
            if {v for e in tmpl for v in e} != set(range(n)):
                raise ValueError("graph pattern template must use positions 0..n-1")
            object.__setattr__(self, "k", n)
        elif self.name not in ("path", "star", "cycle", "kite"):
            raise ValueError(f"unknown pattern kind {self.name!r}")

    def __str__(self):
        if self.name == "kite":
            return "Kite"
        if self.name == "graph":
            return f"Graph({list(self.template)})"
        return f"{self.name.capitalize()}({self.k})"

    @property
    def n_vertices(self) -> int:
        if self.name == "kite":
            return 4
        if self.name == "star":
            return self.k + 1
        return self.k

    @cached_property
    def template_edges(self) -> tuple[Edge, ...]:
        n = self.n_vertices
        if self.name == "path":
            return tuple((i, i + 1) for i in range(n - 1))
        if self.name == "cycle":
            return tuple((i, i + 1) for i in range(n - 1)) + ((0, n - 1),)
        if self.name == "star":
            return tuple((0, i) for i in range(1, n))
        if self.name == "kite":
            # [a, b, c ⋈ d]: edges ca, cb, cd, ab
            return ((0, 2), (1, 2), (2, 3), (0, 1))
        return self.template

    @property
    def n_edges(self) -> int:
        return len(self.template_edges)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n_vertices
        for a, b in self.template_edges:
            deg[a] += 1
            deg[b] += 1
        return tuple(deg)

    @cached_property
    def _automorphisms(self) -> tuple[tuple[int, ...], ...]:
        n = self.n_vertices
        es = set(self.template_edges)
        autos = []
        for p in itertools.permutations(range(n)):
            if all(edge(p[a], p[b]) in es for a, b in es):
                autos.append(p)
        return tuple(autos)

    def canonical(self, labels: Sequence[int]) -> tuple[int, ...]:
        labels = tuple(labels)
        if self.name == "path":
            return labels if labels[0] < labels[-1] else labels[::-1]
        if self.name == "star":
            return (labels[0],) + tuple(sorted(labels[1:]))
        if self.name == "cycle":
            i = labels.index(min(labels))
            rot = labels[i:] + labels[:i]
            if rot[-1] < rot[1]:
                rot = (rot[0],) + rot[1:][::-1]
            return rot
        if self.name == "kite":
            a, b, c, d = labels
            return (a, b, c, d) if a < b else (b, a, c, d)
        # general pattern: least relabeling under the template's automorphisms
        # (position i of the copy goes to position p[i])
        best = None
        for p in self._automorphisms:
            cand = [0] * len(labels)
            for i, lab in enumerate(labels):
                cand[p[i]] = lab
            cand = tuple(cand)
            if best is None or cand < best:
                best = cand
        return best


def path(k: int) -> PatternKind:
    return PatternKind("path", k)


def star(k: int) -> PatternKind:
    return PatternKind("star", k)


def cycle(k: int) -> PatternKind:
    return PatternKind("cycle", k)


def graph_pattern(edges: Iterable[Sequence[int]]) -> PatternKind:
    return PatternKind("graph", None, tuple(edge(a, b) for a, b in edges))


KITE = PatternKind("kite")
P3 = path(3)


class Block:
    """A labeled copy of a pattern, stored in canonical encoding.

    Path [v1..vk]; Star [center, x0..]; Cycle [v1..vk]; Kite [a, b, c, d]
    with edges {c,a}, {c,b}, {c,d}, {a,b}.  Immutable.
    """

    __slots__ = ("kind", "vertices", "_edges")

    def __init__(self, kind: PatternKind, vertices: Sequence[int]):
        vertices = tuple(int(x) for x in vertices)
        if len(vertices) != kind.n_vertices:
            raise ValueError(
                f"{kind} block needs {kind.n_vertices} labels, got {len(vertices)}"
            )
        if len(set(vertices)) != len(vertices):
            raise ValueError(f"repeated label in {kind} block {list(vertices)}")
        if min(vertices) < 0:
            raise ValueError(f"negative label in block {list(vertices)}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "vertices", kind.canonical(vertices))
        object.__setattr__(self, "_edges", None)

    def __setattr__(self, name, value):
        raise AttributeError("Block is immutable")

    def __eq__(self, other):
        if not isinstance(other, Block):
            return NotImplemented
        return self.vertices == other.vertices and self.kind == other.kind

    def __lt__(self, other):
        return self.vertices < other.vertices

    def __hash__(self):
        return hash((self.vertices, self.kind))

    def __repr__(self):
        if self.kind.name == "kite":
            a, b, c, d = self.vertices
            return f"[{a},{b},{c}⋈{d}]"
        if self.kind.name == "star":
            return f"[{self.vertices[0]};{','.join(map(str, self.vertices[1:]))}]"
        if self.kind.name == "cycle":
            return f"({','.join(map(str, self.vertices))})"
        return f"[{','.join(map(str, self.vertices))}]"

    @property
    def edges(self) -> frozenset[Edge]:
        if self._edges is None:
            vs = self.vertices
            es = frozenset(edge(vs[a], vs[b]) for a, b in self.kind.template_edges)
            object.__setattr__(self, "_edges", es)
        return self._edges

    def graph(self) -> Graph:
        return Graph(frozenset(self.vertices), self.edges)

    def degree(self, u: int) -> int:
        return sum(u in e for e in self.edges)

    def relabel(self, mapping) -> "Block":
        return Block(self.kind, [mapping[x] for x in self.vertices])


def _embeddings(host: Graph, kind: PatternKind, allowed: frozenset[int]):
    """Injective maps template positions -> host vertices preserving edges."""
    n = kind.n_vertices
    tedges = kind.template_edges
    tadj = [set() for _ in range(n)]
    for a, b in tedges:
        tadj[a].add(b)
        tadj[b].add(a)
    # place positions so each (after the first of its component) has a placed neighbor
    order: list[int] = []
    for root in range(n):
        if root in order:
            continue
        order.append(root)
        i = len(order) - 1
        while i < len(order):
            for w in sorted(tadj[order[i]]):
                if w not in order:
                    order.append(w)
            i += 1
    adj = host.adjacency
    cands = sorted(u for u in allowed if len(adj[u]) > 0 or not tedges)
    assign = [-1] * n
    used: set[int] = set()

    def rec(i):
        if i == n:
            yield tuple(assign)
            return
        pos = order[i]
        placed_nbrs = [assign[w] for w in tadj[pos] if assign[w] >= 0]
        if placed_nbrs:
            pool = set(adj[placed_nbrs[0]])
            for u in placed_nbrs[1:]:
                pool &= adj[u]
            pool = sorted(pool & allowed)
        else:
            pool = cands
        for u in pool:
            if u in used:
                continue
            assign[pos] = u
            used.add(u)
            yield from rec(i + 1)
            used.discard(u)
            assign[pos] = -1

    yield from rec(0)


def pattern_copies(host: Graph, kind: PatternKind, forbidden: Iterable[int] = ()) -> list[Block]:
    """All copies of ``kind`` in ``host`` avoiding ``forbidden``, sorted by encoding."""
    allowed = frozenset(host.vertices - set(forbidden))
    seen = {kind.canonical(emb) for emb in _embeddings(host, kind, allowed)}
    return [Block(kind, vs) for vs in sorted(seen)]


def contains_block(host: Graph, b: Block) -> bool:
    return all(e in host.edges for e in b.edges) and set(b.vertices) <= host.vertices


def p3_in(b: Block, forbidden: Iterable[int] = (), within: Iterable[int] | None = None) -> list[Block]:
    """P3 copies inside block ``b``, optionally restricted to the label set ``within``."""
    forbidden = set(forbidden)
    if within is not None:
        forbidden |= set(b.vertices) - set(within)
    return pattern_copies(b.graph(), P3, forbidden)
