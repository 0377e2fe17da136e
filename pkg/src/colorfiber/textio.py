"""Plain-text and JSON-dict serialization for graphs, labels, and moves.

Graph record:

    n k
    z_1 z_2 ... z_n
    u v m        (one line per pair with nonzero multiplicity, u < v)

Multiplicities are positive for graphs; move records use the same shape
with signed m. A stream holds one record per blank-line-separated block;
`#` starts a comment anywhere on a line. Degree-color label record:

    d: d_1 ... d_n
    c: c_11 c_12 ... c_kk   (lexicographic color-pair order)

Everything is whitespace-separated decimal; entries beyond +-2^62 are
rejected at parse time so downstream 64-bit arithmetic cannot overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Iterable, Iterator

from colorfiber.graphs import (
    CDegSequence,
    ColorAssignment,
    EdgeVector,
    all_pairs,
    cell_count,
)

__all__ = [
    "ENTRY_LIMIT",
    "GraphRecord",
    "format_graph",
    "format_label",
    "format_moves",
    "graph_from_dict",
    "graph_to_dict",
    "iter_records",
    "label_from_dict",
    "label_to_dict",
    "parse_graph",
    "parse_graphs",
    "parse_label",
    "parse_moves",
]

ENTRY_LIMIT = 2**62


@dataclass(frozen=True)
class GraphRecord:
    z: ColorAssignment
    gamma: EdgeVector


def iter_records(lines: Iterable[str]) -> Iterator[list[str]]:
    """Blank-line-separated blocks of content lines, comments stripped."""
    block: list[str] = []
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if not line:
            if block:
                yield block
                block = []
            continue
        block.append(line)
    if block:
        yield block


def _ints(line: str, what: str) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError as exc:
        raise ValueError(f"bad {what} line: {line!r}") from exc


def _parse_graph_lines(lines: list[str], signed: bool) -> GraphRecord:
    if len(lines) < 2:
        raise ValueError("graph record needs a header line and a color line")
    header = _ints(lines[0], "header")
    if len(header) != 2:
        raise ValueError(f"header must be 'n k': {lines[0]!r}")
    n, k = header
    colors = _ints(lines[1], "color")
    if len(colors) != n:
        raise ValueError(f"expected {n} colors, got {len(colors)}")
    z = ColorAssignment.from_sequence(colors, k)
    edges: list[tuple[int, int, int]] = []
    seen: set[tuple[int, int]] = set()
    for line in lines[2:]:
        row = _ints(line, "edge")
        if len(row) != 3:
            raise ValueError(f"edge line must be 'u v m': {line!r}")
        u, v, m = row
        if not (1 <= u < v <= n):
            raise ValueError(f"edge endpoints out of order or range: {line!r}")
        if (u, v) in seen:
            raise ValueError(f"duplicate edge line for pair ({u}, {v})")
        seen.add((u, v))
        if m == 0:
            raise ValueError(f"zero multiplicity has no effect: {line!r}")
        if m < 0 and not signed:
            raise ValueError(f"negative multiplicity in a graph record: {line!r}")
        if abs(m) > ENTRY_LIMIT:
            raise ValueError(f"multiplicity exceeds 2^62: {line!r}")
        edges.append((u, v, m))
    return GraphRecord(z, EdgeVector.from_edges(n, edges))


def parse_graph(text: str, signed: bool = False) -> GraphRecord:
    """The single graph (or move) record in `text`."""
    records = list(iter_records(text.splitlines()))
    if len(records) != 1:
        raise ValueError(f"expected exactly one record, found {len(records)}")
    return _parse_graph_lines(records[0], signed)


def parse_graphs(text: str, signed: bool = False) -> list[GraphRecord]:
    """Every record in a multi-record stream."""
    return [
        _parse_graph_lines(block, signed)
        for block in iter_records(text.splitlines())
    ]


def parse_moves(text: str) -> tuple[ColorAssignment, list[EdgeVector]]:
    """A move stream: signed records that must all share one coloring."""
    records = parse_graphs(text, signed=True)
    if not records:
        raise ValueError("empty move stream")
    z = records[0].z
    for rec in records[1:]:
        if rec.z != z:
            raise ValueError("move records disagree on the coloring")
    return z, [rec.gamma for rec in records]


def format_graph(z: ColorAssignment, gamma: EdgeVector) -> str:
    if z.n != gamma.n:
        raise ValueError("coloring and vector on different vertex counts")
    lines = [f"{z.n} {z.k}", " ".join(str(c) for c in z.colors)]
    for u, v in all_pairs(gamma.n):
        m = gamma.entry(u, v)
        if m != 0:
            lines.append(f"{u} {v} {m}")
    return "\n".join(lines) + "\n"


def format_moves(z: ColorAssignment, vectors: Iterable[EdgeVector]) -> str:
    return "\n".join(format_graph(z, g) for g in vectors)


def format_label(label: CDegSequence) -> str:
    d = " ".join(str(x) for x in label.degrees)
    c = " ".join(str(x) for x in label.cells)
    return f"d: {d}\nc: {c}\n"


def parse_label(text: str) -> CDegSequence:
    records = list(iter_records(text.splitlines()))
    if len(records) != 1:
        raise ValueError(f"expected exactly one label record, found {len(records)}")
    lines = records[0]
    if len(lines) != 2 or not lines[0].startswith("d:") or not lines[1].startswith("c:"):
        raise ValueError("label record must be a 'd:' line then a 'c:' line")
    degrees = _ints(lines[0][2:], "degree")
    cells = _ints(lines[1][2:], "cell")
    k = (isqrt(8 * len(cells) + 1) - 1) // 2
    if cell_count(k) != len(cells):
        raise ValueError(
            f"{len(cells)} cells is not a triangular number; bad color count?"
        )
    return CDegSequence(tuple(degrees), tuple(cells), k)


def graph_to_dict(z: ColorAssignment, gamma: EdgeVector) -> dict:
    return {
        "n": z.n,
        "k": z.k,
        "colors": list(z.colors),
        "edges": [[u, v, m] for u, v, m in gamma.edges()],
    }


def graph_from_dict(record: dict) -> GraphRecord:
    z = ColorAssignment.from_sequence(record["colors"], record["k"])
    if z.n != record["n"]:
        raise ValueError("color list length disagrees with n")
    edges = [tuple(e) for e in record["edges"]]
    for u, v, m in edges:
        if abs(m) > ENTRY_LIMIT:
            raise ValueError("multiplicity exceeds 2^62")
    return GraphRecord(z, EdgeVector.from_edges(z.n, edges))


def label_to_dict(label: CDegSequence) -> dict:
    return {"k": label.k, "d": list(label.degrees), "c": list(label.cells)}


def label_from_dict(record: dict) -> CDegSequence:
    return CDegSequence(tuple(record["d"]), tuple(record["c"]), record["k"])
