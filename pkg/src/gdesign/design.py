"""Designs, down-link certificates and their verification."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .graph import (
    P3,
    Block,
    Complete,
    Edge,
    Graph,
    HostSpec,
    Join,
    Multipartite,
    PatternKind,
    Union,
    build_graph,
    contains_block,
)


@dataclass(frozen=True)
class Design:
    """A (host, pattern)-design: ``blocks`` claimed to partition E(host)."""

    host: HostSpec
    pattern: PatternKind
    blocks: tuple[Block, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))

    @classmethod
    def complete(cls, v: int, pattern: PatternKind, blocks: Iterable) -> "Design":
        return cls(Complete.of_order(v), pattern, tuple(_as_block(pattern, b) for b in blocks))

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def vertices(self) -> frozenset[int]:
        return self.graph.vertices

    @property
    def graph(self) -> Graph:
        g = self.__dict__.get("_graph")
        if g is None:
            g = build_graph(self.host)
            object.__setattr__(self, "_graph", g)
        return g

    def __len__(self) -> int:
        return len(self.blocks)

    def blocks_containing(self, u: int) -> list[Block]:
        return [b for b in self.blocks if u in b.vertices]

    def relabel(self, mapping: Mapping[int, int]) -> "Design":
        return Design(
            relabel_host(self.host, mapping),
            self.pattern,
            tuple(b.relabel(mapping) for b in self.blocks),
        )


def _as_block(pattern: PatternKind, b) -> Block:
    return b if isinstance(b, Block) else Block(pattern, b)


def relabel_host(host: HostSpec, mapping: Mapping[int, int]) -> HostSpec:
    if isinstance(host, Complete):
        return Complete(tuple(mapping[x] for x in host.vertices))
    if isinstance(host, Multipartite):
        return Multipartite(tuple(tuple(mapping[x] for x in p) for p in host.parts))
    if isinstance(host, Join):
        return Join(relabel_host(host.left, mapping), relabel_host(host.right, mapping))
    if isinstance(host, Union):
        return Union(tuple(relabel_host(m, mapping) for m in host.members))
    raise TypeError(f"not a host spec: {host!r}")


@dataclass(frozen=True)
class DownLinkCertificate:
    """Down-link ``source -> target``: source block i goes to target block mapping[i]."""

    source: Design
    target: Design
    mapping: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mapping", tuple(self.mapping))

    @property
    def target_order(self) -> int:
        return self.target.order

    def image(self, i: int) -> Block:
        return self.target.blocks[self.mapping[i]]

    def relabel(self, mapping: Mapping[int, int]) -> "DownLinkCertificate":
        return DownLinkCertificate(
            self.source.relabel(mapping), self.target.relabel(mapping), self.mapping
        )


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    index: int | None = None


@dataclass
class VerificationReport:
    violations: list[Violation] = field(default_factory=list)
    block_count: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def add(self, code: str, message: str, index: int | None = None) -> None:
        self.violations.append(Violation(code, message, index))

    def lines(self) -> list[str]:
        return [
            f"{v.code}: {v.message}" if v.index is None else f"{v.code} [block {v.index}]: {v.message}"
            for v in self.violations
        ]


def verify_design(d: Design, prefix: str = "") -> VerificationReport:
    rep = VerificationReport(block_count=len(d.blocks))
    try:
        host = d.graph
    except Exception as exc:  # malformed host descriptors are reported, not raised
        rep.add(prefix + "bad-host", str(exc))
        return rep
    counts: Counter[Edge] = Counter()
    for i, b in enumerate(d.blocks):
        if b.kind != d.pattern:
            rep.add(prefix + "wrong-pattern", f"{b!r} is {b.kind}, expected {d.pattern}", i)
        for e in sorted(b.edges):
            if e not in host.edges:
                rep.add(prefix + "foreign-edge", f"{b!r} uses {e}, not an edge of the host", i)
            counts[e] += 1
    for e, c in sorted(counts.items()):
        if c > 1:
            rep.add(prefix + "duplicate-edge", f"edge {e} covered {c} times")
    for e in sorted(host.edges - counts.keys()):
        rep.add(prefix + "uncovered-edge", f"edge {e} not covered")
    return rep


def verify_downlink(c: DownLinkCertificate) -> VerificationReport:
    rep = VerificationReport(block_count=len(c.source.blocks))
    rep.violations += verify_design(c.source, "source/").violations
    rep.violations += verify_design(c.target, "target/").violations
    src, tgt = c.source.blocks, c.target.blocks
    if len(c.mapping) != len(src):
        rep.add("map-length", f"map has {len(c.mapping)} entries for {len(src)} source blocks")
    seen: dict[int, int] = {}
    for i, j in enumerate(c.mapping[: len(src)]):
        if not 0 <= j < len(tgt):
            rep.add("map-range", f"target index {j} out of range", i)
            continue
        if j in seen:
            rep.add("not-injective", f"source blocks {seen[j]} and {i} both map to target {j}", i)
        seen[j] = i
        if not contains_block(src[i].graph(), tgt[j]):
            rep.add("not-contained", f"image {tgt[j]!r} is not a subgraph of {src[i]!r}", i)
    return rep


# ---------------------------------------------------------------------------
# arithmetic


def admissible_order(pattern: PatternKind, v: int) -> bool:
    """Whether (K_v, pattern)-designs exist, per the classical existence conditions."""
    if v < 0:
        raise ValueError("order must be non-negative")
    pairs = v * (v - 1)
    if pattern.name == "path":
        if pattern.k == 3:
            return v % 4 in (0, 1)
        return v >= pattern.k and pairs % (2 * (pattern.k - 1)) == 0
    if pattern.name == "star":
        return v >= 2 * pattern.k and pairs % (2 * pattern.k) == 0
    if pattern.name == "kite":
        return v > 1 and v % 8 in (0, 1)
    if pattern.name == "cycle":
        return v >= pattern.k and v % 2 == 1 and pairs % (2 * pattern.k) == 0
    raise ValueError(f"no existence theory for pattern {pattern}")


def eta1_lower_bound(v: int, gamma_edges: int, gamma_prime_edges: int) -> float:
    """Strict lower bound on the least reachable target order: eta1 > value."""
    if gamma_edges < 1 or gamma_prime_edges < 1:
        raise ValueError("edge counts must be positive")
    if gamma_prime_edges > gamma_edges:
        raise ValueError("target pattern has more edges than the source pattern")
    if v < 2:
        raise ValueError("order must be at least 2")
    return (v - 1) * math.sqrt(gamma_prime_edges / gamma_edges)


def p3_orders_from(eta: int, upto: int) -> list[int]:
    """Admissible P3 orders m with eta <= m <= upto (any P3-design embeds upward)."""
    return [m for m in range(eta, upto + 1) if m % 4 in (0, 1)]


def least_p3_order(n: int) -> int:
    while n % 4 not in (0, 1):
        n += 1
    return n


# ---------------------------------------------------------------------------
# gluing


class GluingError(ValueError):
    pass


def glue_downlinks(
    vertices: Iterable[int] | int,
    removed: Iterable[int],
    pieces: Sequence[DownLinkCertificate],
) -> DownLinkCertificate:
    """Glue per-piece down-links into one down-link on the whole vertex set.

    The pieces' source hosts must partition E(K_V) and their target hosts
    must partition E(K_{V minus removed}).  Metamorphoses (same host on both
    sides) and down-links that drop ``removed`` vertices both qualify.
    """
    vs = tuple(range(vertices)) if isinstance(vertices, int) else tuple(sorted(vertices))
    removed = set(removed)
    if not removed <= set(vs):
        raise GluingError("removed vertices are not part of the vertex set")
    if not pieces:
        raise GluingError("no pieces to glue")
    pattern, tpattern = pieces[0].source.pattern, pieces[0].target.pattern
    src_blocks: list[Block] = []
    tgt_blocks: list[Block] = []
    mapping: list[int] = []
    for n, piece in enumerate(pieces):
        rep = verify_downlink(piece)
        if not rep.ok:
            raise GluingError(f"piece {n} fails verification: {rep.lines()[:3]}")
        if piece.source.pattern != pattern or piece.target.pattern != tpattern:
            raise GluingError(f"piece {n} has mismatched patterns")
        offset = len(tgt_blocks)
        src_blocks += piece.source.blocks
        tgt_blocks += piece.target.blocks
        mapping += [offset + j for j in piece.mapping]
    cert = DownLinkCertificate(
        Design(Complete(vs), pattern, tuple(src_blocks)),
        Design(Complete(tuple(x for x in vs if x not in removed)), tpattern, tuple(tgt_blocks)),
        tuple(mapping),
    )
    rep = verify_downlink(cert)
    if not rep.ok:
        raise GluingError("pieces do not tile the hosts: " + "; ".join(rep.lines()[:5]))
    return cert


def metamorphosis(source: Design, images: Sequence[Block], rest: Sequence[Block]) -> DownLinkCertificate:
    """Certificate on the same host: images[i] is the image of source block i."""
    target = Design(source.host, P3 if not images else images[0].kind, tuple(images) + tuple(rest))
    return DownLinkCertificate(source, target, tuple(range(len(images))))
