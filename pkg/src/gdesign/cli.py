"""Command-line front end: generate, down-link, verify, search.

Exit status: 0 success or valid, 1 invalid input or no solution,
2 usage error, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import re
import sys
from typing import Sequence

from . import generators as gen
from .design import Design, DownLinkCertificate, verify_design, verify_downlink
from .downlinks import DownlinkError, downlink
from .graph import KITE, Complete, PatternKind, build_graph, cycle, path, star
from .io import DocumentError, load, save
from .oracle import DEFAULT_BUDGET, FOUND, UNKNOWN, exact_eta, search_decomposition, search_downlink
from .p3 import p3_partition

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_UNKNOWN = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_pattern(name: str, k: int | None = None) -> PatternKind:
    """``p3``, ``p4``, ``c5``, ``kite``, ``star`` (with k), ``path``/``cycle`` (with k)."""
    m = re.fullmatch(r"([pc])(\d+)", name)
    if m:
        n = int(m.group(2))
        return path(n) if m.group(1) == "p" else cycle(n)
    if name == "kite":
        return KITE
    if name in ("star", "path", "cycle"):
        if k is None:
            raise UsageError(f"--pattern {name} needs --k")
        return {"star": star, "path": path, "cycle": cycle}[name](k)
    raise UsageError(f"unknown pattern {name!r}")


def generate(pattern: str, v: int, k: int | None = None, profile: str | None = None,
             budget: int = DEFAULT_BUDGET) -> Design:
    if pattern == "kite":
        if profile in (None, "degree2"):
            return gen.kite_degree2_design(v)
        if profile == "cyclic":
            if (v - 1) % 8:
                raise gen.ConstructionError("cyclic kite designs need v = 1 (mod 8)")
            return gen.kite_cyclic_design((v - 1) // 8)
        raise UsageError("kite profiles: degree2, cyclic")
    if pattern == "star":
        if k is None:
            raise UsageError("--pattern star needs --k")
        return gen.star_design(v, k, profile or "any")
    if pattern == "c3":
        return gen.steiner_triple_system(v)
    if pattern == "p3":
        if v % 4 not in (0, 1):
            raise gen.ConstructionError(f"no (K_{v},P3)-design: v must be 0 or 1 mod 4")
        host = Complete.of_order(v)
        blocks, _ = p3_partition(build_graph(host))
        return Design(host, path(3), tuple(blocks))
    if pattern == "p4" and gen.p4_constructible(v):
        d = gen.p4_pendant_design(v)
        if profile in (None, "pendant"):
            return d
        if profile == "saturated":
            return gen.p4_saturate_design(d)
        raise UsageError("p4 profiles: pendant, saturated")
    kind = parse_pattern(pattern, k)
    res = search_decomposition(Complete.of_order(v), kind, budget)
    if res.status != FOUND:
        raise gen.ConstructionError(f"no {kind} design of order {v} found (search: {res.status})")
    return res.value


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gdesign", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="build a design")
    g.add_argument("--pattern", required=True, help="p3, p4, star, kite, c3 (others via search)")
    g.add_argument("--order", "-v", type=int, required=True)
    g.add_argument("--k", type=int)
    g.add_argument("--profile", help="star: any|one-non-center|...; kite: degree2|cyclic; p4: pendant|saturated")
    g.add_argument("-o", "--output", required=True)

    d = sub.add_parser("downlink", help="down-link a design to a P3-design")
    d.add_argument("input")
    d.add_argument("-o", "--output", required=True)
    d.add_argument("--minimal", action="store_true", help="kites: drop a degree-2 vertex")

    v = sub.add_parser("verify", help="check a design or certificate file")
    v.add_argument("file")

    s = sub.add_parser("spectrum", help="least reachable P3 order by exhaustive search")
    s.add_argument("--pattern", required=True)
    s.add_argument("--order", "-v", type=int, required=True)
    s.add_argument("--k", type=int)
    s.add_argument("--mode", choices=("some", "every"), default="some")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    o = sub.add_parser("oracle", help="exhaustive searches")
    osub = o.add_subparsers(dest="what", required=True)
    od = osub.add_parser("decompose")
    od.add_argument("--pattern", required=True)
    od.add_argument("--order", "-v", type=int, required=True)
    od.add_argument("--k", type=int)
    od.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    od.add_argument("-o", "--output")
    ol = osub.add_parser("downlink")
    ol.add_argument("input")
    ol.add_argument("--order", "-n", type=int, required=True)
    ol.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    ol.add_argument("-o", "--output")

    f = sub.add_parser("fixture", help="write a shipped block list to a file")
    f.add_argument("name", nargs="?", help="omit to list the names")
    f.add_argument("-o", "--output")
    return ap


def _describe(obj) -> str:
    if isinstance(obj, DownLinkCertificate):
        return (f"certificate: {obj.source.pattern} order {obj.source.order} "
                f"-> P3 order {obj.target_order} ({len(obj.source.blocks)} images)")
    return f"design: {obj.pattern} order {obj.order}, {len(obj.blocks)} blocks"


def _verdict(status: str) -> int:
    return {FOUND: EXIT_OK, UNKNOWN: EXIT_UNKNOWN}.get(status, EXIT_INVALID)


def _run(args) -> int:
    if args.command == "gen":
        d = generate(args.pattern, args.order, args.k, args.profile)
        save(d, args.output)
        print(_describe(d))
        return EXIT_OK
    if args.command == "downlink":
        d = load(args.input)
        if not isinstance(d, Design):
            raise UsageError(f"{args.input} holds a certificate, not a design")
        rep = verify_design(d)
        if not rep.ok:
            print("\n".join(rep.lines()), file=sys.stderr)
            return EXIT_INVALID
        cert = downlink(d, minimal=args.minimal)
        save(cert, args.output)
        print(_describe(cert))
        return EXIT_OK
    if args.command == "verify":
        obj = load(args.file)
        rep = verify_downlink(obj) if isinstance(obj, DownLinkCertificate) else verify_design(obj)
        if rep.ok:
            print(f"valid {_describe(obj)}")
            return EXIT_OK
        print("\n".join(rep.lines()))
        return EXIT_INVALID
    if args.command == "spectrum":
        kind = parse_pattern(args.pattern, args.k)
        rep = exact_eta(args.order, kind, args.mode, args.budget)
        for n, status in sorted(rep.verdicts.items()):
            print(f"n = {n}: {status}")
        print(rep.summary())
        return EXIT_OK if rep.eta is not None else EXIT_UNKNOWN
    if args.command == "oracle":
        if args.what == "decompose":
            kind = parse_pattern(args.pattern, args.k)
            res = search_decomposition(Complete.of_order(args.order), kind, args.budget)
        else:
            d = load(args.input)
            if not isinstance(d, Design):
                raise UsageError(f"{args.input} holds a certificate, not a design")
            res = search_downlink(d, args.order, args.budget)
        print(f"{res.status} ({res.nodes} nodes)")
        if res.found and args.output:
            save(res.value, args.output)
        return _verdict(res.status)
    if args.command == "fixture":
        if not args.name:
            print("\n".join(gen.FIXTURE_NAMES))
            return EXIT_OK
        obj = gen.fixture_designs(args.name)
        if args.output:
            save(obj, args.output)
        print(_describe(obj))
        return EXIT_OK
    raise UsageError(f"unknown command {args.command}")


def run_cli(argv: Sequence[str] | None = None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return _run(args)
    except UsageError as exc:
        ap.print_usage(sys.stderr)
        print(f"gdesign: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KeyError as exc:  # unknown fixture name
        print(f"gdesign: error: {exc.args[0]}", file=sys.stderr)
        return EXIT_USAGE
    except (DocumentError, OSError) as exc:
        print(f"gdesign: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (gen.ConstructionError, DownlinkError, ValueError) as exc:
        print(f"gdesign: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
