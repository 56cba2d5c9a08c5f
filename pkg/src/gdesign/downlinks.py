"""Down-links from concrete designs to P3-designs.

Each route picks one P3 inside every source block (the image), removes the
images from a complete graph on the chosen target vertices and splits what
is left with :func:`gdesign.p3.p3_partition`.  Images are the
lexicographically least admissible P3 unless a route says otherwise, and
excluded vertices are the smallest labels that fit, so every route is
deterministic.
"""

from __future__ import annotations

import itertools
from collections import Counter
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .design import (
    Design,
    DownLinkCertificate,
    least_p3_order,
    verify_downlink,
)
from .graph import P3, Block, Complete, Edge, Graph, build_graph, edge, p3_in
from .p3 import p3_partition_components


class DownlinkError(ValueError):
    """The requested route does not apply to this design."""


@lru_cache(maxsize=None)
def _p3_copies(b: Block) -> tuple[Block, ...]:
    return tuple(p3_in(b))


def _candidates(b: Block, avoid: Iterable[int] = (), reserved: Iterable[Edge] = ()) -> list[Block]:
    avoid = set(avoid)
    reserved = set(reserved)
    return [p for p in _p3_copies(b)
            if not avoid.intersection(p.vertices) and not reserved & p.edges]


def _least_images(d: Design, avoid: Iterable[int] = (), reserved: Iterable[Edge] = ()) -> list[Block]:
    avoid = tuple(avoid)
    images = []
    for i, b in enumerate(d.blocks):
        cands = _candidates(b, avoid, reserved)
        if not cands:
            raise DownlinkError(f"block {i} {b!r} has no P3 avoiding {sorted(avoid)}")
        images.append(cands[0])
    return images


def _residual(target: Sequence[int], images: Sequence[Block]) -> Graph:
    used = set()
    for p in images:
        used |= p.edges
    kt = build_graph(Complete(tuple(target)))
    stray = used - kt.edges
    if stray:
        raise DownlinkError(f"image edge {min(stray)} lies outside the target")
    if len(used) != 2 * len(images):
        raise DownlinkError("two images share an edge")
    return kt.minus_edges(used)


def _odd_components(target, images) -> int:
    return p3_partition_components(_residual(target, images)).odd_components


def _repair(d: Design, images: list[Block], target: Sequence[int],
            avoid: Iterable[int] = (), reserved: Iterable[Edge] = ()) -> list[Block]:
    """Greedy image swaps that lower the number of odd residual components."""
    avoid = tuple(avoid)
    best = _odd_components(target, images)
    improved = True
    while best and improved:
        improved = False
        for i, b in enumerate(d.blocks):
            for p in _candidates(b, avoid, reserved):
                if p == images[i]:
                    continue
                trial = images[:i] + [p] + images[i + 1:]
                try:
                    odd = _odd_components(target, trial)
                except DownlinkError:
                    continue
                if odd < best:
                    images, best, improved = trial, odd, True
                    break
            if not best:
                break
    return images


def _finish(d: Design, images: Sequence[Block], target: Sequence[int],
            extra: Sequence[Block] = ()) -> DownLinkCertificate:
    """Assemble and verify the certificate; ``extra`` are fixed non-image blocks."""
    target = tuple(sorted(target))
    rest = list(extra)
    rep = p3_partition_components(_residual(target, list(images) + rest))
    if not rep.exact:
        raise DownlinkError(
            f"residual graph has {rep.odd_components} component(s) with an odd edge count")
    blocks = tuple(images) + tuple(rest) + tuple(rep.paths)
    cert = DownLinkCertificate(d, Design(Complete(target), P3, blocks), tuple(range(len(images))))
    check = verify_downlink(cert)
    if not check.ok:
        raise DownlinkError("certificate fails verification: " + "; ".join(check.lines()[:3]))
    return cert


def _padded(vs: Sequence[int], n: int) -> list[int]:
    """``vs`` plus fresh labels above max(vs) up to n vertices."""
    vs = sorted(vs)
    top = vs[-1] + 1 if vs else 0
    return vs + list(range(top, top + n - len(vs)))


def _with_repair(d: Design, target: Sequence[int], avoid=(), reserved=()) -> DownLinkCertificate:
    images = _least_images(d, avoid, reserved)
    if _odd_components(target, images):
        images = _repair(d, images, target, avoid, reserved)
    return _finish(d, images, target)


# ---------------------------------------------------------------------------
# general routes


def downlink_general(d: Design) -> DownLinkCertificate:
    """Least P3 per block; target order v, or v + w with 1 <= w <= 3 new vertices."""
    vs = sorted(d.vertices)
    v = len(vs)
    images = _least_images(d)
    if v % 4 in (0, 1) and not _odd_components(vs, images):
        return _finish(d, images, vs)
    n = least_p3_order(v + 1)
    return _finish(d, images, _padded(vs, n))


def _reduced_case(pattern) -> str | None:
    degs = pattern.degrees
    if pattern.n_vertices >= 5 and sum(x >= 4 for x in degs) >= 3:
        if pattern.n_vertices >= 7 and sum(x >= 6 for x in degs) >= 5:
            return "ab"
        return "a"
    return None


def downlink_reduced(d: Design) -> DownLinkCertificate:
    """Drop two (v = 1,2 mod 4) or four (v = 0,3 mod 4) vertices, add one new vertex.

    Needs a pattern with at least 5 vertices and 3 of degree >= 4 (target
    v-1), respectively 7 vertices and 5 of degree >= 6 (target v-3).
    """
    vs = sorted(d.vertices)
    v = len(vs)
    case = _reduced_case(d.pattern)
    if v % 4 in (1, 2):
        if case is None:
            raise DownlinkError(
                f"{d.pattern} needs >= 5 vertices with >= 3 of degree at least 4")
        drop = vs[:2]
    else:
        if case != "ab":
            raise DownlinkError(
                f"{d.pattern} needs >= 7 vertices with >= 5 of degree at least 6")
        drop = vs[:4]
    kept = [u for u in vs if u not in drop]
    alpha = vs[-1] + 1
    return _finish(d, _least_images(d, drop), kept + [alpha])


# ---------------------------------------------------------------------------
# stars


def _centers(d: Design) -> Counter:
    cnt = Counter({u: 0 for u in d.vertices})
    for b in d.blocks:
        cnt[b.vertices[0]] += 1
    return cnt


def _star_one_fewer(d: Design, x: int, counts: Counter) -> DownLinkCertificate:
    vs = sorted(d.vertices)
    target = [u for u in vs if u != x]
    singles = [u for u in vs if counts[u] == 1]
    for y in singles:
        si = next(i for i, b in enumerate(d.blocks) if b.vertices[0] == y)
        outer = [u for u in d.blocks[si].vertices[1:] if u != x]
        x1, x2 = outer[0], outer[1]
        sj = next(i for i, b in enumerate(d.blocks) if edge(x1, x2) in b.edges)
        c2 = d.blocks[sj].vertices[0]
        far = x2 if c2 == x1 else x1
        z = next(u for u in d.blocks[sj].vertices[1:] if u not in (far, x))
        images = []
        for i, b in enumerate(d.blocks):
            if i == si:
                images.append(Block(P3, (x1, y, x2)))
            elif i == sj:
                images.append(Block(P3, (far, c2, z)))
            else:
                cands = _candidates(b, (x, y))
                if not cands:
                    break
                images.append(cands[0])
        else:
            try:
                return _finish(d, images, target)
            except DownlinkError:
                continue
    # no usable single-star center: any images avoiding x, repaired if needed
    return _with_repair(d, target, (x,))


def downlink_star(d: Design) -> DownLinkCertificate:
    """Target v-1 when a non-center vertex exists and v = 1,2 (mod 4), else v or padded."""
    k = d.pattern.k
    if d.pattern.name != "star" or k <= 3:
        return downlink_general(d)
    vs = sorted(d.vertices)
    v = len(vs)
    counts = _centers(d)
    non_centers = [u for u in vs if counts[u] == 0]
    if non_centers and v % 4 in (1, 2):
        return _star_one_fewer(d, non_centers[0], counts)
    if v % 4 not in (0, 1):
        return downlink_general(d)
    if k % 2 == 0:
        images, rest = [], []
        for b in d.blocks:
            c, outer = b.vertices[0], b.vertices[1:]
            halves = sorted(Block(P3, (outer[i], c, outer[i + 1])) for i in range(0, k, 2))
            images.append(halves[0])
            rest += halves[1:]
        return _finish(d, images, vs, rest)
    odd = [u for u in vs if counts[u] % 2]
    reserved = [edge(odd[i], odd[i + 1]) for i in range(0, len(odd), 2)]
    return _finish(d, _least_images(d, reserved=reserved), vs)


# ---------------------------------------------------------------------------
# kites


def downlink_kite(d: Design, minimal: bool = False) -> DownLinkCertificate:
    """Split [a,b,c>d] into [a,b,c] and [a,c,d] (order v), or drop a degree-2 vertex (v-1)."""
    vs = sorted(d.vertices)
    if not minimal:
        images, rest = [], []
        for b in d.blocks:
            a, bb, c, dd = b.vertices
            images.append(Block(P3, (a, bb, c)))
            rest.append(Block(P3, (a, c, dd)))
        return _finish(d, images, vs, rest)
    from .generators import degree_two_vertices

    xs = degree_two_vertices(d)
    if not xs:
        raise DownlinkError("no vertex has degree 2 in every kite containing it")
    if (len(vs) - 1) % 4 not in (0, 1):
        raise DownlinkError(f"order {len(vs) - 1} admits no P3-design")
    x = xs[0]
    return _with_repair(d, [u for u in vs if u != x], (x,))


# ---------------------------------------------------------------------------
# cycles


def _triangle_pairs(d: Design) -> list[tuple[int, int]]:
    import networkx as nx

    g = nx.Graph()
    g.add_nodes_from(range(len(d.blocks)))
    by_vertex: dict[int, list[int]] = {}
    for i, b in enumerate(d.blocks):
        for u in b.vertices:
            by_vertex.setdefault(u, []).append(i)
    for u in sorted(by_vertex):
        g.add_edges_from(itertools.combinations(by_vertex[u], 2))
    m = nx.max_weight_matching(g, maxcardinality=True)
    if 2 * len(m) != len(d.blocks):
        raise DownlinkError("triangles admit no pairing by shared vertices")
    return sorted(tuple(sorted(p)) for p in m)


def _c3_pairing(d: Design) -> DownLinkCertificate:
    images: list[Block | None] = [None] * len(d.blocks)
    rest = []
    for i, j in _triangle_pairs(d):
        t1, t2 = d.blocks[i].vertices, d.blocks[j].vertices
        c = min(set(t1) & set(t2))
        p, q = sorted(u for u in t1 if u != c)
        r, s = sorted(u for u in t2 if u != c)
        images[i] = Block(P3, (c, p, q))
        images[j] = Block(P3, (c, r, s))
        rest.append(Block(P3, (q, c, s)))
    return _finish(d, images, sorted(d.vertices), rest)


def _c4_route(d: Design) -> DownLinkCertificate:
    vs = sorted(d.vertices)
    x = vs[0]
    images, rest = [], []
    for b in d.blocks:
        cyc = b.vertices
        if x in cyc:
            i = cyc.index(x)
            images.append(Block(P3, tuple(cyc[(i + j) % 4] for j in (1, 2, 3))))
        else:
            halves = sorted([Block(P3, cyc[:3]), Block(P3, (cyc[2], cyc[3], cyc[0]))])
            images.append(halves[0])
            rest.append(halves[1])
    return _finish(d, images, vs[1:], rest)


def _c5_route(d: Design) -> DownLinkCertificate:
    vs = sorted(d.vertices)
    together: Counter = Counter()
    for b in d.blocks:
        together.update(edge(a, c) for a, c in itertools.combinations(b.vertices, 2))
    once = sorted(p for p, c in together.items() if c == 1)
    if once:
        x, y = once[0]
        return _with_repair(d, [u for u in vs if u != x], (x, y))
    if set(together.values()) != {2}:
        raise DownlinkError("C5 design is neither of the two co-occurrence types")
    x, y = vs[0], vs[1]
    images = []
    for b in d.blocks:
        cands = _candidates(b, (x, y))
        if cands:
            images.append(cands[0])
            continue
        # the cycle reads (x, a, b, y, c): use [a, b, y]
        cyc = list(b.vertices)
        i = cyc.index(x)
        cyc = cyc[i:] + cyc[:i]
        if cyc[3] != y:
            cyc = [cyc[0]] + cyc[1:][::-1]
        images.append(Block(P3, (cyc[1], cyc[2], y)))
    return _finish(d, images, vs[1:])


def _drop_and_pad(d: Design, t: int) -> DownLinkCertificate:
    """Forbid the t least labels plus an anchor; target the least admissible n >= v - t."""
    vs = sorted(d.vertices)
    v = len(vs)
    if t < 0:
        images = _least_images(d)
        return _finish(d, images, _padded(vs, least_p3_order(v - t)))
    drop, anchor = vs[:t], vs[t]
    kept = vs[t:]
    images = _least_images(d, drop + [anchor])
    return _finish(d, images, _padded(kept, least_p3_order(len(kept))))


def downlink_cycle(d: Design) -> DownLinkCertificate:
    k = d.pattern.k
    v = d.order
    if k == 3:
        return _c3_pairing(d) if v % 4 == 1 else downlink_general(d)
    if k == 4:
        return _c4_route(d)
    if k == 5:
        return _c5_route(d) if v % 4 == 1 else downlink_general(d)
    return _drop_and_pad(d, (k - 4) // 3)


# ---------------------------------------------------------------------------
# paths


def downlink_path(d: Design) -> DownLinkCertificate:
    k = d.pattern.k
    vs = sorted(d.vertices)
    v = len(vs)
    if k == 3:
        cert = DownLinkCertificate(d, Design(Complete(tuple(vs)), P3, d.blocks), tuple(range(len(d.blocks))))
        return _checked(cert)
    if k > 4:
        return _drop_and_pad(d, (k - 6) // 3)
    from .generators import p4_pendant_certificate, p4_constructible, pendant_vertices

    pend = pendant_vertices(d)
    if not pend or v % 4 == 3:
        return downlink_general(d)
    x = pend[0]
    kept = [u for u in vs if u != x]
    if v % 4 == 0:
        return _finish(d, _least_images(d, (x,)), kept + [vs[-1] + 1])
    try:
        return _with_repair(d, kept, (x,))
    except DownlinkError:
        if vs == list(range(v)) and p4_constructible(v):
            cert = p4_pendant_certificate(v)
            if sorted(cert.source.blocks) == sorted(d.blocks) and x == 0:
                return _reindex(cert, d)
        return downlink_general(d)


def _reindex(cert: DownLinkCertificate, d: Design) -> DownLinkCertificate:
    """Same certificate with the source blocks in the order of ``d``."""
    where = {b: i for i, b in enumerate(cert.source.blocks)}
    mapping = tuple(cert.mapping[where[b]] for b in d.blocks)
    return _checked(DownLinkCertificate(d, cert.target, mapping))


def _checked(cert: DownLinkCertificate) -> DownLinkCertificate:
    rep = verify_downlink(cert)
    if not rep.ok:
        raise DownlinkError("certificate fails verification: " + "; ".join(rep.lines()[:3]))
    return cert


# ---------------------------------------------------------------------------
# dispatch

ROUTES: dict[str, Callable[[Design], DownLinkCertificate]] = {
    "star": downlink_star,
    "cycle": downlink_cycle,
    "path": downlink_path,
}


def downlink(d: Design, minimal: bool = False) -> DownLinkCertificate:
    """Best construction for the pattern of ``d``; ``minimal`` only matters for kites."""
    name = d.pattern.name
    if name == "kite":
        return downlink_kite(d, minimal)
    if name in ROUTES:
        return ROUTES[name](d)
    if _reduced_case(d.pattern):
        try:
            return downlink_reduced(d)
        except DownlinkError:
            pass
    return downlink_general(d)


__all__ = [
    "DownlinkError",
    "downlink",
    "downlink_general",
    "downlink_reduced",
    "downlink_star",
    "downlink_kite",
    "downlink_cycle",
    "downlink_path",
]
