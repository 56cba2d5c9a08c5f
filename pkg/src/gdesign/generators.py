"""Constructions of the concrete designs used as down-link sources.

Besides plain existence, several constructions realize a structural
profile: a vertex of degree 2 in every kite containing it, a pendant
vertex in a P4-design, a prescribed multiset of star centers.
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Iterable, Sequence

from .design import (
    Design,
    DownLinkCertificate,
    admissible_order,
    glue_downlinks,
    verify_design,
)
from .graph import KITE, Block, Complete, Multipartite, cycle, edge, path, star


class ConstructionError(ValueError):
    """A requested design (or profile) cannot be produced."""


# ---------------------------------------------------------------------------
# fixtures

FIXTURE_NAMES = (
    "ex-bijective",
    "ex-bijective-P3",
    "ex-bijective-P6",
    "c5-k11-cyclic",
    "c5-k11-downlink",
    "k12-p4-metamorphosis",
    "k36-p4-metamorphosis",
    "k36-p4-downlink",
    "p4-base-6",
    "p4-base-9",
    "p4-base-10",
    "p4-base-13",
    "kite-degree2-t1",
    "kite-degree2-t2-cross",
)


def fixture_path(name: str):
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}")
    return resources.files("gdesign") / "fixtures" / f"{name}.json"


@lru_cache(maxsize=None)
def fixture_designs(name: str) -> Design | DownLinkCertificate:
    """Load one of the shipped block lists by its stable name."""
    from .io import loads

    return loads(fixture_path(name).read_text(encoding="utf-8"))


# ---------------------------------------------------------------------------
# difference families over Z_n1 x Z_n2 x ...


@dataclass(frozen=True)
class DifferenceFamily:
    moduli: tuple[int, ...]
    subgroup: frozenset[tuple[int, ...]]
    base_blocks: tuple[tuple[tuple[int, ...], ...], ...]

    def elements(self):
        return itertools.product(*(range(m) for m in self.moduli))

    def sub(self, x, y):
        return tuple((a - b) % m for a, b, m in zip(x, y, self.moduli))

    def add(self, x, y):
        return tuple((a + b) % m for a, b, m in zip(x, y, self.moduli))

    def differences(self) -> list[tuple[int, ...]]:
        out = []
        for blk in self.base_blocks:
            for a, b in KITE.template_edges:
                out.append(self.sub(blk[a], blk[b]))
                out.append(self.sub(blk[b], blk[a]))
        return out

    def check(self) -> list[str]:
        """Problems with the family; empty when ΔF covers G \\ H exactly once."""
        cnt = Counter(self.differences())
        problems = []
        for g in self.elements():
            want = 0 if g in self.subgroup else 1
            if cnt[g] != want:
                problems.append(f"difference {g} occurs {cnt[g]} times, expected {want}")
        return problems

    def develop(self, label) -> list[Block]:
        blocks = []
        for blk in self.base_blocks:
            for g in self.elements():
                blocks.append(Block(KITE, [label(self.add(x, g)) for x in blk]))
        return blocks


def kite_cyclic_family(t: int) -> DifferenceFamily:
    n = 8 * t + 1
    base = tuple(((2 * i - 1,), (3 * t + i,), (0,), (2 * i,)) for i in range(1, t + 1))
    return DifferenceFamily((n,), frozenset({(0,)}), base)


def kite_cyclic_design(t: int) -> Design:
    """Cyclic kite design of order 8t+1 developed from its base blocks."""
    if t < 1:
        raise ConstructionError("t must be at least 1")
    df = kite_cyclic_family(t)
    problems = df.check()
    if problems:
        raise ConstructionError("difference family check failed: " + problems[0])
    return Design(Complete.of_order(8 * t + 1), KITE, tuple(df.develop(lambda x: x[0])))


def kite_multipartite_family(m: int) -> DifferenceFamily:
    n = (m - 1) // 2
    base = []
    for i in range(1, n + 1):
        base.append(((0, 0), (0, 2 * i % m), (2, i), (1, 0)))
        base.append(((0, 0), (4, i), (1, -i % m), (6, i)))
    sub = frozenset((j, 0) for j in range(8))
    return DifferenceFamily((8, m), sub, tuple(base))


def kite_multipartite_design(m: int) -> Design:
    """Kite design of K_{m x 8}; element (j, c) of Z_8 x Z_m gets label 8c + j."""
    if m < 3 or m % 2 == 0:
        raise ConstructionError(f"m must be odd and at least 3, got {m}")
    df = kite_multipartite_family(m)
    problems = df.check()
    if problems:
        raise ConstructionError("difference family check failed: " + problems[0])
    host = Multipartite.equal_parts(m, 8)
    return Design(host, KITE, tuple(df.develop(lambda x: 8 * x[1] + x[0])))


def kite_degree2_design(v: int) -> Design:
    """Kite design of K_v in which vertex 0 has degree 2 in each of its blocks.

    Vertex a_ij of the construction is labeled 8(i-1) + j.
    """
    if v <= 1 or v % 8 != 1:
        raise ConstructionError(f"needs v = 1 (mod 8), v > 1; got {v}")
    t = (v - 1) // 8
    gadget = fixture_designs("kite-degree2-t1").blocks
    cross = fixture_designs("kite-degree2-t2-cross").blocks

    def part(i):  # labels of A_i, 1-based
        return [8 * (i - 1) + j for j in range(1, 9)]

    def on_part(blocks, i):
        mp = {0: 0, **dict(zip(range(1, 9), part(i)))}
        return [b.relabel(mp) for b in blocks]

    def cross_on(i, hub):
        # gadget covers K_{0,A_2} + K_{A_2} + K_{A_1,A_2}; A_2 -> A_i, A_1 -> A_hub
        mp = {0: 0, **dict(zip(range(9, 17), part(i))), **dict(zip(range(1, 9), part(hub)))}
        return [b.relabel(mp) for b in cross]

    def multipartite_on(parts):
        d = kite_multipartite_design(len(parts))
        mp = {8 * c + j: part(parts[c])[j] for c in range(len(parts)) for j in range(8)}
        return [b.relabel(mp) for b in d.blocks]

    if t == 1:
        blocks = list(gadget)
    elif t == 2:
        blocks = list(gadget) + list(cross)
    elif t % 2 == 1:
        blocks = [b for i in range(1, t + 1) for b in on_part(gadget, i)]
        blocks += multipartite_on(list(range(1, t + 1)))
    else:
        blocks = on_part(gadget, t)
        blocks += multipartite_on(list(range(1, t)))
        for i in range(1, t):
            blocks += cross_on(i, t)
    d = Design(Complete.of_order(v), KITE, tuple(blocks))
    rep = verify_design(d)
    if not rep.ok:
        raise ConstructionError("degree-2 kite construction failed: " + rep.lines()[0])
    return d


def degree_two_vertices(d: Design) -> list[int]:
    """Vertices that have degree 2 in every block containing them."""
    deg: dict[int, set[int]] = {}
    for b in d.blocks:
        for u in b.vertices:
            deg.setdefault(u, set()).add(b.degree(u))
    return sorted(u for u, ds in deg.items() if ds == {2})


# ---------------------------------------------------------------------------
# star designs

STAR_PROFILES = ("any", "one-non-center", "one-non-center-and-one-single-star")


def star_centers(d: Design) -> Counter:
    cnt = Counter({u: 0 for u in d.vertices})
    for b in d.blocks:
        cnt[b.vertices[0]] += 1
    return cnt


def _balanced(total: int, who: Sequence[int]) -> dict[int, int]:
    q, r = divmod(total, len(who))
    return {u: q + (1 if i < r else 0) for i, u in enumerate(who)}


def _landau(scores: Iterable[int], v: int) -> bool:
    s = sorted(scores)
    acc = 0
    for j, x in enumerate(s, start=1):
        acc += x
        if acc < j * (j - 1) // 2:
            return False
    return acc == v * (v - 1) // 2


def _orient(v: int, target: dict[int, int]) -> dict[int, set[int]]:
    """Tournament on 0..v-1 with the given out-degrees, by directed-path reversal."""
    out = {u: set(range(u + 1, v)) for u in range(v)}
    excess = {u: len(out[u]) - target[u] for u in range(v)}
    while True:
        over = [u for u in range(v) if excess[u] > 0]
        if not over:
            return out
        src = over[0]
        prev = {src: None}
        queue = deque([src])
        sink = None
        while queue and sink is None:
            u = queue.popleft()
            for w in sorted(out[u]):
                if w not in prev:
                    prev[w] = u
                    if excess[w] < 0:
                        sink = w
                        break
                    queue.append(w)
        if sink is None:
            raise ConstructionError("out-degree sequence is not realizable")
        w = sink
        while prev[w] is not None:
            u = prev[w]
            out[u].discard(w)
            out[w].add(u)
            w = u
        excess[src] -= 1
        excess[sink] += 1


def star_design(v: int, k: int, profile: str = "any", budget: int = 10**6) -> Design:
    """(K_v, S_k)-design with a prescribed star-center profile.

    Each center's out-edges of a suitable tournament are chunked into stars
    (ascending head label), so the task reduces to out-degrees that are
    multiples of k.  Under the non-center profiles vertex 0 centers no star
    and, for the extended profile, vertex 1 centers exactly one.
    """
    pat = star(k)
    if profile not in STAR_PROFILES:
        raise ConstructionError(f"unknown profile {profile!r}; choose from {STAR_PROFILES}")
    if not admissible_order(pat, v):
        raise ConstructionError(
            f"no (K_{v}, S_{k})-design exists: needs v >= 2k and {k} | v(v-1)/2 = {v * (v - 1) // 2}")
    b = v * (v - 1) // (2 * k)
    if profile == "any":
        counts = _balanced(b, list(range(v)))
    elif profile == "one-non-center":
        counts = {0: 0, **_balanced(b, list(range(1, v)))}
    else:
        rest = list(range(2, v))
        if b - 1 < len(rest):
            raise ConstructionError(
                f"profile {profile} infeasible for (v,k)=({v},{k}): too few stars")
        counts = {0: 0, 1: 1, **_balanced(b - 1, rest)}
    target = {u: k * c for u, c in counts.items()}
    if _landau(target.values(), v):
        out = _orient(v, target)
        blocks = []
        for u in range(v):
            heads = sorted(out[u])
            for i in range(0, len(heads), k):
                blocks.append(Block(pat, [u] + heads[i : i + k]))
        d = Design(Complete.of_order(v), pat, tuple(blocks))
    elif v <= 12:
        d = _star_by_search(v, k, counts, budget)
    else:
        raise ConstructionError(f"profile {profile} has no realizable center counts for v={v}")
    if not _profile_holds(d, profile):
        raise ConstructionError(f"could not realize profile {profile} for (v,k)=({v},{k})")
    return d


def _star_by_search(v: int, k: int, counts: dict[int, int], budget: int) -> Design:
    from .graph import build_graph, pattern_copies
    from .oracle import exact_cover

    host = build_graph(Complete.of_order(v))
    cands = [b for b in pattern_copies(host, star(k)) if counts[b.vertices[0]] > 0]
    res = exact_cover(host.edges, [(b, b.edges) for b in cands], budget)
    if res.status != "found":
        raise ConstructionError(f"search for the star profile ended with {res.status}")
    return Design(Complete.of_order(v), star(k), tuple(res.rows))


def _profile_holds(d: Design, profile: str) -> bool:
    c = star_centers(d)
    zeros = [u for u, n in c.items() if n == 0]
    if profile == "any":
        return True
    if len(zeros) != 1:
        return False
    return profile == "one-non-center" or any(n == 1 for n in c.values())


def recenter_star_design(d: Design) -> Design:
    """Move stars so that every vertex centers at least one of them.

    With x centering nothing and y centering at least two stars, the star
    [y; x, a_1..a_{k-1}] becomes [x; y, a_1..a_{k-1}] and each star centered
    at a_i swaps its edge a_i-x for a_i-y.
    """
    if d.pattern.name != "star":
        raise ConstructionError("not a star design")
    k = d.pattern.k
    rep = verify_design(d)
    if not rep.ok:
        raise ConstructionError("input design is invalid: " + rep.lines()[0])
    centers = star_centers(d)
    idle = sorted(u for u, n in centers.items() if n == 0)
    if not idle:
        return d
    if d.order <= 2 * k:
        raise ConstructionError("re-centering needs v > 2k")
    x = idle[0]
    busy = sorted(u for u, n in centers.items() if n >= 2)
    blocks = list(d.blocks)
    for y in busy:
        si = next((i for i, s in enumerate(blocks) if s.vertices[0] == y and x in s.vertices), None)
        if si is not None:
            break
    else:
        raise ConstructionError("no vertex centers two stars with one containing the idle vertex")
    others = [a for a in blocks[si].vertices[1:] if a != x]
    blocks[si] = Block(d.pattern, [x, y] + others)
    for a in others:
        j = next(i for i, s in enumerate(blocks) if s.vertices[0] == a and x in s.vertices)
        blocks[j] = Block(d.pattern, [a] + [y if w == x else w for w in blocks[j].vertices[1:]])
    out = Design(d.host, d.pattern, tuple(blocks))
    if not verify_design(out).ok:
        raise ConstructionError("re-centering produced an invalid design")
    return out


# ---------------------------------------------------------------------------
# Steiner triple systems


def steiner_triple_system(v: int) -> Design:
    """Triangle decomposition of K_v: Bose for v = 3 (mod 6), Skolem for v = 1 (mod 6)."""
    c3 = cycle(3)
    triples: list[tuple[int, int, int]] = []
    if v % 6 == 3:
        n = v // 3

        def lab(x, i):
            return x + n * (i % 3)

        half = (n + 1) // 2
        for x in range(n):
            triples.append((lab(x, 0), lab(x, 1), lab(x, 2)))
        for i in range(3):
            for x, y in itertools.combinations(range(n), 2):
                triples.append((lab(x, i), lab(y, i), lab((x + y) * half % n, i + 1)))
    elif v % 6 == 1:
        n = (v - 1) // 6
        m = 2 * n
        inf = v - 1

        def lab(x, i):
            return x + m * (i % 3)

        def op(x, y):  # half-idempotent commutative quasigroup of order 2n
            s = (x + y) % m
            return s // 2 if s % 2 == 0 else n + s // 2

        for x in range(n):
            triples.append((lab(x, 0), lab(x, 1), lab(x, 2)))
            for i in range(3):
                triples.append((inf, lab(x + n, i), lab(x, i + 1)))
        for i in range(3):
            for x, y in itertools.combinations(range(m), 2):
                triples.append((lab(x, i), lab(y, i), lab(op(x, y), i + 1)))
    else:
        raise ConstructionError(f"Steiner triple systems need v = 1, 3 (mod 6); got {v}")
    d = Design(Complete.of_order(v), c3, tuple(Block(c3, t) for t in triples))
    rep = verify_design(d)
    if not rep.ok:
        raise ConstructionError("triple system construction failed: " + rep.lines()[0])
    return d


# ---------------------------------------------------------------------------
# P4 designs with a pendant vertex


def pendant_vertices(d: Design) -> list[int]:
    """Vertices with degree 1 in every block containing them."""
    deg: dict[int, set[int]] = {}
    for b in d.blocks:
        for u in b.vertices:
            deg.setdefault(u, set()).add(b.degree(u))
    return sorted(u for u, ds in deg.items() if ds == {1})


def _chunks(xs, size):
    return [xs[i : i + size] for i in range(0, len(xs), size)]


def _k36_pieces(left: Sequence[int], right: Sequence[int], pendant: int) -> list[DownLinkCertificate]:
    """Tile K_{left,right} with copies of the K_{3,6} gadget.

    A triple containing ``pendant`` uses the down-link that drops it;
    every other copy is the metamorphosis.
    """
    mu = fixture_designs("k36-p4-metamorphosis")
    delta = fixture_designs("k36-p4-downlink")
    pieces = []
    for tri in _chunks(list(left), 3):
        if pendant in tri:
            tri = [pendant] + [x for x in tri if x != pendant]
        for six in _chunks(list(right), 6):
            mp = dict(zip(range(9), list(tri) + list(six)))
            pieces.append((delta if tri[0] == pendant else mu).relabel(mp))
    return pieces


def p4_constructible(v: int) -> bool:
    r = v % 12
    return (r in (6, 9, 10) and v >= r) or (r == 1 and v >= 13)


def p4_pendant_certificate(v: int) -> DownLinkCertificate:
    """(K_v, P4)-design with pendant vertex 0 together with its down-link to K_{v-1}.

    Glues the base designs on X = {0..l-1}, the K_12 metamorphosis on each
    12-set A_i and the K_{3,6} gadgets on the bipartite pieces.
    """
    if not p4_constructible(v):
        raise ConstructionError(
            f"pendant P4 construction covers v = 1 (mod 12), v >= 13, and v = 6, 9, 10 (mod 12); got {v}")
    ell = {1: 1, 6: 6, 9: 9, 10: 10}[v % 12]
    t = (v - ell) // 12
    parts = [list(range(ell + 12 * i, ell + 12 * (i + 1))) for i in range(t)]
    k13 = fixture_designs("p4-base-13")
    k12 = fixture_designs("k12-p4-metamorphosis")
    pieces: list[DownLinkCertificate] = []
    if ell > 1:
        pieces.append(fixture_designs(f"p4-base-{ell}"))
    for a in parts:
        if ell in (1, 10):
            pieces.append(k13.relabel({0: 0, **dict(zip(range(1, 13), a))}))
            if ell == 10:
                pieces += _k36_pieces(range(1, 10), a, pendant=0)
        else:
            pieces.append(k12.relabel(dict(zip(range(1, 13), a))))
            pieces += _k36_pieces(range(ell), a, pendant=0)
    for a, b in itertools.combinations(parts, 2):
        pieces += _k36_pieces(a, b, pendant=0)
    return glue_downlinks(v, {0}, pieces)


def p4_pendant_design(v: int) -> Design:
    return p4_pendant_certificate(v).source


def p4_saturate_design(d: Design) -> Design:
    """Rewire a P4-design so every vertex has degree 2 in some block.

    Takes P1 = [x,a,b,c] (x pendant, a and b interior elsewhere) and
    P2 = [x,c,d,e]; they become [b,a,x,c], [b,c,d,e], or [a,x,c,b],
    [c,d,b,a] when b = e.
    """
    if d.pattern != path(4):
        raise ConstructionError("not a P4 design")
    rep = verify_design(d)
    if not rep.ok:
        raise ConstructionError("input design is invalid: " + rep.lines()[0])
    p4 = d.pattern
    blocks = list(d.blocks)
    for _ in range(d.order):
        cur = Design(d.host, p4, tuple(blocks))
        pend = pendant_vertices(cur)
        if not pend:
            return cur
        x = pend[0]

        def interior_elsewhere(u, skip):
            return any(j != skip and u in blocks[j].vertices[1:3] for j in range(len(blocks)))

        for i, blk in enumerate(blocks):
            if x not in blk.vertices:
                continue
            vs = blk.vertices if blk.vertices[0] == x else blk.vertices[::-1]
            _, a, b, c = vs
            if interior_elsewhere(a, i) and interior_elsewhere(b, i):
                break
        else:
            raise ConstructionError(f"no block [x,a,b,c] with a, b interior elsewhere (x={x})")
        j = next(j for j, p in enumerate(blocks) if edge(x, c) in p.edges)
        vs2 = blocks[j].vertices if blocks[j].vertices[0] == x else blocks[j].vertices[::-1]
        _, _, dd, e = vs2
        if b != e:
            new = [Block(p4, (b, a, x, c)), Block(p4, (b, c, dd, e))]
        else:
            new = [Block(p4, (a, x, c, b)), Block(p4, (c, dd, b, a))]
        blocks[i], blocks[j] = new
    out = Design(d.host, p4, tuple(blocks))
    if pendant_vertices(out):
        raise ConstructionError("rewiring did not remove every pendant vertex")
    return out


def degree_two_everywhere(d: Design) -> bool:
    """Every vertex is interior (degree 2) in at least one P4 block."""
    inner = {u for b in d.blocks for u in b.vertices[1:-1]}
    return inner >= set(d.vertices)
