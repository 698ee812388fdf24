"""Text and JSON serialisation of hypergraphs.

Text format::

    # optional comment lines
    k n m
    v1 v2 ... vk        (m lines, increasing vertex ids)

The JSON mirror is ``{"k": k, "n": n, "edges": [[...], ...]}``.  Writers emit
edges in colex order, so ``write -> read -> write`` is byte-identical.
"""

from __future__ import annotations

import json
from typing import Iterable

from .core import Hypergraph, ShadowLabError


class ParseError(ShadowLabError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


def _ints(text: str, lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in text.split()]
    except ValueError:
        raise ParseError(f"expected integers, got {text.strip()!r}", lineno) from None


def parse_text(text: str) -> Hypergraph:
    rows = [
        (i, line)
        for i, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not rows:
        raise ParseError("missing 'k n m' header line")
    head_no, head = rows[0]
    header = _ints(head, head_no)
    if len(header) != 3:
        raise ParseError("header must be 'k n m'", head_no)
    k, n, m = header
    if k < 0 or n < 0 or m < 0:
        raise ParseError("header values must be nonnegative", head_no)
    body = rows[1:]
    if len(body) != m:
        lineno = body[-1][0] if body else head_no
        raise ParseError(f"header announces {m} edges, found {len(body)}", lineno)
    edges = []
    seen = set()
    for lineno, line in body:
        e = _ints(line, lineno)
        if len(e) != k:
            raise ParseError(f"edge has {len(e)} vertices, expected {k}", lineno)
        if any(b <= a for a, b in zip(e, e[1:])):
            raise ParseError("vertex ids must be strictly increasing", lineno)
        if e and (e[0] < 1 or e[-1] > n):
            raise ParseError(f"vertex outside [1, {n}]", lineno)
        if tuple(e) in seen:
            raise ParseError(f"duplicate edge {tuple(e)}", lineno)
        seen.add(tuple(e))
        edges.append(e)
    return Hypergraph(k, n, edges)


def format_text(h: Hypergraph, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"{h.k} {h.n} {len(h)}")
    lines.extend(" ".join(map(str, e)) for e in h.edges)
    return "\n".join(lines) + "\n"


def to_json_obj(h: Hypergraph) -> dict:
    return {"k": h.k, "n": h.n, "edges": [list(e) for e in h.edges]}


def from_json_obj(obj) -> Hypergraph:
    if not isinstance(obj, dict) or not {"k", "n", "edges"} <= obj.keys():
        raise ParseError("JSON hypergraph needs keys 'k', 'n', 'edges'")
    k, n, edges = obj["k"], obj["n"], obj["edges"]
    if not isinstance(k, int) or not isinstance(n, int) or not isinstance(edges, list):
        raise ParseError("'k' and 'n' must be integers and 'edges' a list")
    for i, e in enumerate(edges):
        if not isinstance(e, list) or not all(isinstance(v, int) for v in e):
            raise ParseError(f"edge #{i} is not a list of integers")
        if any(b <= a for a, b in zip(e, e[1:])):
            raise ParseError(f"edge #{i} is not strictly increasing")
    return Hypergraph(k, n, edges)


def parse_json(text: str) -> Hypergraph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from None
    return from_json_obj(obj)


def format_json(h: Hypergraph) -> str:
    return json.dumps(to_json_obj(h)) + "\n"


def parse_any(text: str) -> Hypergraph:
    """Dispatch on the first non-blank character: ``{`` means JSON."""
    if text.lstrip().startswith("{"):
        return parse_json(text)
    return parse_text(text)
