"""Graph text formats.

DIMACS edge format (``c`` comments, one ``p edge n m`` header, ``e u v``
lines with 1-based ids) and graph6.  Writers sort edges so output is
byte-stable.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, TextIO

import networkx as nx

from .graph import Graph


class FormatError(ValueError):
    pass


def parse_dimacs(lines: Iterable[str]) -> Graph:
    n = None
    declared_m = None
    edges = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tok = line.split()
        if tok[0] == "p":
            if n is not None:
                raise FormatError(f"line {lineno}: second problem line")
            if len(tok) != 4 or tok[1] not in ("edge", "col"):
                raise FormatError(f"line {lineno}: expected 'p edge <n> <m>'")
            n, declared_m = int(tok[2]), int(tok[3])
        elif tok[0] == "e":
            if n is None:
                raise FormatError(f"line {lineno}: edge before problem line")
            if len(tok) != 3:
                raise FormatError(f"line {lineno}: expected 'e <u> <v>'")
            u, v = int(tok[1]) - 1, int(tok[2]) - 1
            if not (0 <= u < n and 0 <= v < n):
                raise FormatError(f"line {lineno}: vertex id out of range")
            if u == v:
                raise FormatError(f"line {lineno}: self-loop")
            edges.append((u, v))
        else:
            raise FormatError(f"line {lineno}: unknown line type {tok[0]!r}")
    if n is None:
        raise FormatError("missing problem line")
    g = Graph(n, edges)
    if declared_m is not None and declared_m not in (g.m, len(edges)):
        raise FormatError(f"header declares {declared_m} edges, found {g.m}")
    return g


def format_dimacs(g: Graph, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"c {line}" for line in comment.splitlines())
    out.append(f"p edge {g.n} {g.m}")
    out.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(out) + "\n"


def parse_graph6(text: str) -> Graph:
    data = text.strip()
    if data.startswith(">>graph6<<"):
        data = data[len(">>graph6<<"):]
    try:
        G = nx.from_graph6_bytes(data.encode("ascii"))
    except (ValueError, nx.NetworkXError) as exc:
        raise FormatError(str(exc)) from exc
    return Graph.from_networkx(G)


def format_graph6(g: Graph) -> str:
    return nx.to_graph6_bytes(g.to_networkx(), header=False).decode("ascii").strip()


def read_graph(path: str | Path | TextIO, fmt: str = "dimacs") -> Graph:
    if hasattr(path, "read"):
        text = path.read()
    else:
        text = Path(path).read_text()
    if fmt == "graph6":
        return parse_graph6(text)
    if fmt != "dimacs":
        raise ValueError(f"unknown graph format {fmt!r}")
    return parse_dimacs(text.splitlines())


def write_graph(g: Graph, path: str | Path, fmt: str = "dimacs") -> None:
    text = format_graph6(g) + "\n" if fmt == "graph6" else format_dimacs(g)
    Path(path).write_text(text)


def read_graph6_lines(path: str | Path) -> list[Graph]:
    return [parse_graph6(line) for line in Path(path).read_text().splitlines() if line.strip()]
