"""Exhaustive search at desk scale: decompositions, down-links, spectrum minima.

Every search runs under a node budget.  Running out of budget yields the
verdict ``"unknown"``, never ``"none"``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Iterator, Sequence

from .design import (
    Design,
    DownLinkCertificate,
    eta1_lower_bound,
    least_p3_order,
)
from .graph import P3, Block, Complete, Graph, PatternKind, build_graph, p3_in, pattern_copies

DEFAULT_BUDGET = 10**7

FOUND, NONE, UNKNOWN = "found", "none", "unknown"


class _OutOfBudget(Exception):
    pass


@dataclass
class CoverResult:
    status: str
    rows: list[Any] = field(default_factory=list)
    nodes: int = 0


class _Cover:
    """Algorithm X over dict-of-sets; branches on the item with fewest rows."""

    def __init__(self, items: Iterable[Hashable], rows: Sequence[tuple[Any, Iterable[Hashable]]], budget: int):
        self.items = list(items)
        item_set = set(self.items)
        self.labels = []
        self.Y: list[list[Hashable]] = []
        for label, its in rows:
            its = list(its)
            if not set(its) <= item_set or len(set(its)) != len(its):
                continue
            self.labels.append(label)
            self.Y.append(its)
        self.X: dict[Hashable, set[int]] = {it: set() for it in self.items}
        for r, its in enumerate(self.Y):
            for it in its:
                self.X[it].add(r)
        self.budget = budget
        self.nodes = 0

    def _select(self, r):
        cols = []
        for j in self.Y[r]:
            for i in self.X[j]:
                for k in self.Y[i]:
                    if k != j:
                        self.X[k].remove(i)
            cols.append(self.X.pop(j))
        return cols

    def _deselect(self, r, cols):
        for j in reversed(self.Y[r]):
            self.X[j] = cols.pop()
            for i in self.X[j]:
                for k in self.Y[i]:
                    if k != j:
                        self.X[k].add(i)

    def solve(self, partial: list[int]) -> Iterator[list[int]]:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _OutOfBudget
        if not self.X:
            yield list(partial)
            return
        c = min(self.X, key=lambda it: len(self.X[it]))
        for r in sorted(self.X[c]):
            partial.append(r)
            cols = self._select(r)
            yield from self.solve(partial)
            self._deselect(r, cols)
            partial.pop()


def exact_cover(items, rows, budget: int = DEFAULT_BUDGET) -> CoverResult:
    """First exact cover of ``items`` by ``rows`` (pairs of label, covered items)."""
    cov = _Cover(items, rows, budget)
    try:
        for sol in cov.solve([]):
            return CoverResult(FOUND, [cov.labels[r] for r in sol], cov.nodes)
    except _OutOfBudget:
        return CoverResult(UNKNOWN, [], cov.nodes)
    return CoverResult(NONE, [], cov.nodes)


def all_exact_covers(items, rows, budget: int = DEFAULT_BUDGET) -> tuple[str, list[list[Any]]]:
    cov = _Cover(items, rows, budget)
    out = []
    try:
        for sol in cov.solve([]):
            out.append([cov.labels[r] for r in sol])
    except _OutOfBudget:
        return UNKNOWN, out
    return (FOUND if out else NONE), out


@dataclass
class SearchResult:
    status: str
    value: Design | DownLinkCertificate | None = None
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.status == FOUND


# ---------------------------------------------------------------------------
# decompositions


def search_decomposition(g: Graph | Any, kind: PatternKind, budget: int = DEFAULT_BUDGET) -> SearchResult:
    """Find a (g, kind)-design or prove there is none (within ``budget`` nodes)."""
    host_spec = g
    host = build_graph(g)
    if len(host.edges) % kind.n_edges:
        return SearchResult(NONE)
    cands = pattern_copies(host, kind)
    res = exact_cover(sorted(host.edges), [(b, b.edges) for b in cands], budget)
    if res.status != FOUND:
        return SearchResult(res.status, None, res.nodes)
    if isinstance(host_spec, Graph):
        host_spec = Complete(tuple(sorted(host.vertices)))
        if build_graph(host_spec).edges != host.edges:
            raise TypeError("pass a host descriptor for non-complete hosts")
    return SearchResult(FOUND, Design(host_spec, kind, tuple(res.rows)), res.nodes)


# ---------------------------------------------------------------------------
# down-links


def _downlink_rows(blocks: Sequence[Block], kept: Sequence[int]):
    kept_graph = build_graph(Complete(tuple(kept)))
    rows = []
    for i, b in enumerate(blocks):
        for p in p3_in(b, within=kept):
            rows.append((("img", i, p), [("b", i), *p.edges]))
    for p in pattern_copies(kept_graph, P3):
        rows.append((("free", p), list(p.edges)))
    items = [("b", i) for i in range(len(blocks))] + sorted(kept_graph.edges)
    return items, rows


def search_downlink(d: Design, n: int, budget: int = DEFAULT_BUDGET, aligned_only: bool = False) -> SearchResult:
    """Search a down-link from ``d`` to some (K_n, P3)-design.

    For n >= v the target lives on V(d) plus new labels.  For n < v every
    n-subset of V(d) is tried (lexicographic order) unless ``aligned_only``,
    in which case only the least n labels are.
    """
    if n % 4 not in (0, 1):
        return SearchResult(NONE)
    vs = sorted(d.vertices)
    if n >= len(vs):
        top = vs[-1] + 1 if vs else 0
        kept_sets: Iterable = [tuple(vs) + tuple(range(top, top + n - len(vs)))]
    elif aligned_only:
        kept_sets = [tuple(vs[:n])]
    else:
        kept_sets = itertools.combinations(vs, n)
    remaining = budget
    status = NONE
    nodes = 0
    for kept in kept_sets:
        if any(not p3_in(b, within=kept) for b in d.blocks):
            continue
        items, rows = _downlink_rows(d.blocks, kept)
        res = exact_cover(items, rows, remaining)
        nodes += res.nodes
        remaining -= res.nodes
        if res.status == FOUND:
            images = {lab[1]: lab[2] for lab in res.rows if lab[0] == "img"}
            free = sorted(lab[1] for lab in res.rows if lab[0] == "free")
            target = Design(Complete(kept), P3, tuple(images[i] for i in range(len(d.blocks))) + tuple(free))
            cert = DownLinkCertificate(d, target, tuple(range(len(d.blocks))))
            return SearchResult(FOUND, cert, nodes)
        if res.status == UNKNOWN or remaining <= 0:
            status = UNKNOWN
            break
    return SearchResult(status, None, nodes)


# ---------------------------------------------------------------------------
# spectrum minima


@dataclass
class SpectrumReport:
    v: int
    pattern: PatternKind
    mode: str
    lower_bound: float
    verdicts: dict[int, str] = field(default_factory=dict)
    eta: int | None = None
    designs_checked: int | None = None

    def summary(self) -> str:
        sym = "eta1" if self.mode == "some" else "eta2"
        val = "unknown" if self.eta is None else str(self.eta)
        return f"{sym} = {val}"


def _candidate_orders(v: int, pattern: PatternKind) -> list[int]:
    bound = eta1_lower_bound(v, pattern.n_edges, 2)
    start = least_p3_order(int(bound) + 1)
    # every design with P3 <= pattern reaches some order <= v + 3
    return [n for n in range(start, v + 4) if n % 4 in (0, 1)]


def _joint_some(v: int, pattern: PatternKind, n: int, budget: int) -> CoverResult:
    """Search a design of order v and a down-link of it to order n together."""
    kv = build_graph(Complete.of_order(v))
    kept = tuple(range(min(n, v)))
    kn = build_graph(Complete.of_order(n))
    rows = []
    for b in pattern_copies(kv, pattern):
        src = [("s", e) for e in b.edges]
        for p in p3_in(b, within=kept):
            rows.append(((b, p), src + [("t", e) for e in p.edges]))
    for p in pattern_copies(kn, P3):
        rows.append(((None, p), [("t", e) for e in p.edges]))
    items = [("s", e) for e in sorted(kv.edges)] + [("t", e) for e in sorted(kn.edges)]
    return exact_cover(items, rows, budget)


def _canonical_design(blocks: Sequence[Block]) -> tuple:
    """Exact canonical form under relabeling.

    Vertices are first split by an invariant (their sorted degrees across
    blocks); only relabelings that keep those classes in a fixed order are
    tried, so isomorphic designs reach the same minimum.
    """
    profile: dict[int, list[int]] = {}
    for b in blocks:
        for u in b.vertices:
            profile.setdefault(u, []).append(b.degree(u))
    classes: dict[tuple, list[int]] = {}
    for u, ds in profile.items():
        classes.setdefault(tuple(sorted(ds)), []).append(u)
    keys = sorted(classes)
    groups = [classes[k] for k in keys]
    edge_sets = [tuple(b.edges) for b in blocks]
    best = None
    for choice in itertools.product(*(itertools.permutations(g) for g in groups)):
        relabel = {u: i for i, u in enumerate(itertools.chain.from_iterable(choice))}
        key = tuple(sorted(
            tuple(sorted((min(relabel[a], relabel[b]), max(relabel[a], relabel[b])) for a, b in es))
            for es in edge_sets))
        if best is None or key < best:
            best = key
    return tuple(keys), best


def all_designs(v: int, pattern: PatternKind, budget: int = DEFAULT_BUDGET) -> tuple[str, list[Design]]:
    """All (K_v, pattern)-designs up to relabeling (exhaustive; small v only)."""
    host = build_graph(Complete.of_order(v))
    cands = pattern_copies(host, pattern)
    status, sols = all_exact_covers(sorted(host.edges), [(b, b.edges) for b in cands], budget)
    reps = {}
    for sol in sols:
        reps.setdefault(_canonical_design(sol), tuple(sorted(sol)))
    designs = [Design(Complete.of_order(v), pattern, r) for r in sorted(reps.values())]
    return status, designs


def exact_eta(v: int, kind: PatternKind, mode: str = "some", budget: int = DEFAULT_BUDGET) -> SpectrumReport:
    """Least target order reachable by some (mode "some") or every (mode "every") design."""
    if mode not in ("some", "every"):
        raise ValueError("mode is 'some' or 'every'")
    rep = SpectrumReport(v, kind, mode, eta1_lower_bound(v, kind.n_edges, 2))
    orders = _candidate_orders(v, kind)
    if mode == "some":
        for n in orders:
            res = _joint_some(v, kind, n, budget)
            rep.verdicts[n] = res.status
            if res.status == FOUND:
                if all(rep.verdicts[m] == NONE for m in rep.verdicts if m < n):
                    rep.eta = n
                break
        return rep
    if v > 6:
        raise ValueError("mode 'every' enumerates all designs and is limited to v <= 6")
    status, designs = all_designs(v, kind, budget)
    rep.designs_checked = len(designs)
    if status == UNKNOWN:
        rep.verdicts = {n: UNKNOWN for n in orders}
        return rep
    for n in orders:
        outcomes = [search_downlink(d, n, budget).status for d in designs]
        if all(o == FOUND for o in outcomes):
            rep.verdicts[n] = FOUND
        elif NONE in outcomes:
            rep.verdicts[n] = NONE
        else:
            rep.verdicts[n] = UNKNOWN
        if rep.verdicts[n] == FOUND:
            if all(rep.verdicts[m] == NONE for m in rep.verdicts if m < n):
                rep.eta = n
            break
    return rep

