"""Graph readers and writers: DIMACS ``.col`` and a small JSON form."""

from __future__ import annotations

import json
from pathlib import Path

from .graphs import Graph


class GraphFormatError(ValueError):
    """Raised when a graph file cannot be parsed."""


def parse_dimacs(text: str) -> Graph:
    """Parse DIMACS edge format (``p edge n m`` header, ``e i j`` lines, 1-based)."""
    n = None
    declared = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) < 4 or parts[1] not in ("edge", "col"):
                raise GraphFormatError(f"line {lineno}: bad problem line {raw!r}")
            n, declared = int(parts[2]), int(parts[3])
        elif parts[0] == "e":
            if n is None:
                raise GraphFormatError(f"line {lineno}: edge before problem line")
            if len(parts) != 3:
                raise GraphFormatError(f"line {lineno}: bad edge line {raw!r}")
            i, j = int(parts[1]) - 1, int(parts[2]) - 1
            edges.append((i, j))
        else:
            raise GraphFormatError(f"line {lineno}: unknown record {parts[0]!r}")
    if n is None:
        raise GraphFormatError("missing 'p edge n m' line")
    # some files list both orientations; collapse them
    uniq = {(min(i, j), max(i, j)) for i, j in edges}
    if declared is not None and declared not in (len(uniq), len(edges)):
        raise GraphFormatError(f"header declares {declared} edges, found {len(uniq)}")
    try:
        return Graph(n, sorted(uniq))
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc


def format_dimacs(G: Graph) -> str:
    lines = [f"p edge {G.n} {G.m}"]
    lines += [f"e {i + 1} {j + 1}" for i, j in G.edge_list]
    return "\n".join(lines) + "\n"


def parse_json_graph(obj) -> Graph:
    """Build a graph from ``{"n": int, "edges": [[i, j], ...]}`` (0-based)."""
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict) or "n" not in obj:
        raise GraphFormatError("JSON graph must be an object with key 'n'")
    try:
        return Graph(int(obj["n"]), [tuple(e) for e in obj.get("edges", [])])
    except (TypeError, ValueError) as exc:
        raise GraphFormatError(str(exc)) from exc


def format_json_graph(G: Graph) -> str:
    return json.dumps(G.to_dict(), sort_keys=True) + "\n"


def read_graph(path) -> Graph:
    """Read a graph, choosing the format by extension (``.col``/``.dimacs`` or JSON)."""
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise GraphFormatError(f"cannot read {p}: {exc}") from exc
    if p.suffix.lower() in (".col", ".dimacs"):
        return parse_dimacs(text)
    return parse_json_graph(text)


def write_graph(G: Graph, path) -> None:
    p = Path(path)
    if p.suffix.lower() in (".col", ".dimacs"):
        p.write_text(format_dimacs(G))
    else:
        p.write_text(format_json_graph(G))
