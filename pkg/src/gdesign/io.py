"""JSON documents for designs and down-link certificates."""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Any

from .design import Design, DownLinkCertificate
from .graph import (
    Block,
    Complete,
    HostSpec,
    Join,
    Multipartite,
    PatternKind,
    Union,
)

SCHEMA_VERSION = 1


class DocumentError(ValueError):
    """Malformed document; ``where`` locates the offending node."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


# ---------------------------------------------------------------------------
# encode


def encode_host(h: HostSpec) -> dict:
    if isinstance(h, Complete):
        if h.vertices == tuple(range(len(h.vertices))):
            return {"kind": "complete", "v": len(h.vertices)}
        return {"kind": "complete", "vertices": list(h.vertices)}
    if isinstance(h, Multipartite):
        return {"kind": "multipartite", "parts": [list(p) for p in h.parts]}
    if isinstance(h, Join):
        return {"kind": "join", "left": encode_host(h.left), "right": encode_host(h.right)}
    if isinstance(h, Union):
        return {"kind": "union", "members": [encode_host(m) for m in h.members]}
    raise TypeError(f"cannot encode host {h!r}")


def encode_pattern(p: PatternKind) -> dict:
    if p.name == "kite":
        return {"kind": "kite"}
    if p.name == "graph":
        return {"kind": "graph", "edges": [list(e) for e in p.template]}
    return {"kind": p.name, "k": p.k}


def _design_body(d: Design) -> dict:
    return {
        "host": encode_host(d.host),
        "pattern": encode_pattern(d.pattern),
        "blocks": [list(b.vertices) for b in d.blocks],
    }


def encode(obj: Design | DownLinkCertificate) -> dict:
    if isinstance(obj, Design):
        return {"v": SCHEMA_VERSION, "type": "design", **_design_body(obj)}
    if isinstance(obj, DownLinkCertificate):
        return {
            "v": SCHEMA_VERSION,
            "type": "certificate",
            "source": _design_body(obj.source),
            "target": _design_body(obj.target),
            "map": list(obj.mapping),
        }
    raise TypeError(f"cannot encode {type(obj).__name__}")


# ---------------------------------------------------------------------------
# decode


def _labels(node: Any, where: str) -> list[int]:
    if not isinstance(node, list):
        raise DocumentError(where, "expected a list of labels")
    for i, x in enumerate(node):
        if not isinstance(x, int) or isinstance(x, bool) or x < 0:
            raise DocumentError(f"{where}[{i}]", f"label must be a non-negative integer, got {x!r}")
    return node


def _int_field(node: dict, key: str, where: str) -> int:
    x = node.get(key)
    if not isinstance(x, int) or isinstance(x, bool) or x < 0:
        raise DocumentError(f"{where}.{key}", f"expected a non-negative integer, got {x!r}")
    return x


def decode_host(node: Any, where: str = "host") -> HostSpec:
    if not isinstance(node, dict):
        raise DocumentError(where, "expected an object")
    kind = node.get("kind")
    try:
        if kind == "complete":
            if "vertices" in node:
                vs = _labels(node["vertices"], where + ".vertices")
                if len(set(vs)) != len(vs):
                    raise DocumentError(where + ".vertices", "repeated label")
                return Complete(tuple(vs))
            return Complete.of_order(_int_field(node, "v", where))
        if kind == "multipartite":
            parts = node.get("parts")
            if not isinstance(parts, list):
                raise DocumentError(where + ".parts", "expected a list of parts")
            return Multipartite(
                tuple(tuple(_labels(p, f"{where}.parts[{i}]")) for i, p in enumerate(parts))
            )
        if kind == "join":
            return Join(decode_host(node.get("left"), where + ".left"),
                        decode_host(node.get("right"), where + ".right"))
        if kind == "union":
            ms = node.get("members")
            if not isinstance(ms, list):
                raise DocumentError(where + ".members", "expected a list")
            return Union(tuple(decode_host(m, f"{where}.members[{i}]") for i, m in enumerate(ms)))
    except DocumentError:
        raise
    except ValueError as exc:
        raise DocumentError(where, str(exc)) from None
    raise DocumentError(where + ".kind", f"unknown host kind {kind!r}")


def decode_pattern(node: Any, where: str = "pattern") -> PatternKind:
    if not isinstance(node, dict):
        raise DocumentError(where, "expected an object")
    kind = node.get("kind")
    if kind not in ("path", "star", "cycle", "kite", "graph"):
        raise DocumentError(where + ".kind", f"unknown pattern kind {kind!r}")
    try:
        if kind == "kite":
            return PatternKind("kite")
        if kind == "graph":
            es = node.get("edges")
            if not isinstance(es, list):
                raise DocumentError(where + ".edges", "expected a list of edges")
            return PatternKind("graph", None, tuple(
                tuple(_labels(e, f"{where}.edges[{i}]")) for i, e in enumerate(es)))
        return PatternKind(kind, _int_field(node, "k", where))
    except DocumentError:
        raise
    except ValueError as exc:
        raise DocumentError(where, str(exc)) from None


def _decode_design_body(node: Any, where: str) -> Design:
    if not isinstance(node, dict):
        raise DocumentError(where, "expected an object")
    host = decode_host(node.get("host"), where + ".host")
    pattern = decode_pattern(node.get("pattern"), where + ".pattern")
    raw = node.get("blocks")
    if not isinstance(raw, list):
        raise DocumentError(where + ".blocks", "expected a list of blocks")
    blocks = []
    for i, b in enumerate(raw):
        w = f"{where}.blocks[{i}]"
        labels = _labels(b, w)
        try:
            blocks.append(Block(pattern, labels))
        except ValueError as exc:
            raise DocumentError(w, str(exc)) from None
    return Design(host, pattern, tuple(blocks))


def decode(doc: Any) -> Design | DownLinkCertificate:
    """Structural decoding; design validity is checked separately."""
    if not isinstance(doc, dict):
        raise DocumentError("$", "expected a JSON object")
    version = doc.get("v", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise DocumentError("$.v", f"unsupported schema version {version!r}")
    kind = doc.get("type") or ("certificate" if "source" in doc else "design")
    if kind == "design":
        return _decode_design_body(doc, "$")
    if kind == "certificate":
        source = _decode_design_body(doc.get("source"), "$.source")
        target = _decode_design_body(doc.get("target"), "$.target")
        m = doc.get("map")
        if not isinstance(m, list):
            raise DocumentError("$.map", "expected a list of target indices")
        return DownLinkCertificate(source, target, tuple(_labels(m, "$.map")))
    raise DocumentError("$.type", f"unknown document type {kind!r}")


def dumps(obj: Design | DownLinkCertificate) -> str:
    return json.dumps(encode(obj), indent=None, separators=(", ", ": "))


def loads(text: str) -> Design | DownLinkCertificate:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    return decode(doc)


def load(path: str | os.PathLike) -> Design | DownLinkCertificate:
    return loads(Path(path).read_text(encoding="utf-8"))


def save(obj: Design | DownLinkCertificate, path: str | os.PathLike) -> None:
    """Write atomically: temp file in the target directory, then rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(dumps(obj) + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
