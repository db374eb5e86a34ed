"""Edge-list text format, DOT export and small JSON helpers.

Format: one record per line, ``u v`` or ``u v c`` (whitespace separated),
``#`` starts a comment.  A header comment ``# n=N`` fixes the vertex count
(so isolated trailing vertices survive a round trip); otherwise the count is
one more than the largest id mentioned.
"""
from __future__ import annotations

import io as _io
import json
import re
from pathlib import Path
from typing import IO, Iterable

from .graph import ColouredGraph, Graph, OrientedGraph

_HEADER = re.compile(r"#\s*n\s*=\s*(\d+)")


class GraphFormatError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _open_text(source) -> tuple[IO[str], bool]:
    if isinstance(source, (str, Path)):
        return open(source, encoding="utf-8"), True
    return source, False


def parse_edge_list(text: str) -> Graph | ColouredGraph:
    return read_edge_list(_io.StringIO(text))


def read_edge_list(source) -> Graph | ColouredGraph:
    """Read a Graph, or a ColouredGraph when every record has a colour column."""
    fh, close = _open_text(source)
    try:
        lines = fh.read().splitlines()
    finally:
        if close:
            fh.close()
    n_header: int | None = None
    records: list[tuple[int, int, int | None, int]] = []
    widths: set[int] = set()
    for lineno, raw in enumerate(lines, start=1):
        head, _, comment = raw.partition("#")
        if not head.strip():
            m = _HEADER.match(raw.strip())
            if m and n_header is None:
                n_header = int(m.group(1))
            continue
        parts = head.split()
        if len(parts) not in (2, 3):
            raise GraphFormatError(lineno, f"expected 'u v' or 'u v c', got {head.strip()!r}")
        try:
            vals = [int(x) for x in parts]
        except ValueError:
            raise GraphFormatError(lineno, f"non-integer field in {head.strip()!r}") from None
        if any(x < 0 for x in vals):
            raise GraphFormatError(lineno, "negative id")
        widths.add(len(parts))
        if len(widths) > 1:
            raise GraphFormatError(lineno, "mixed records with and without a colour column")
        u, v = vals[0], vals[1]
        if u == v:
            raise GraphFormatError(lineno, f"loop at vertex {u}")
        records.append((u, v, vals[2] if len(vals) == 3 else None, lineno))

    seen: dict[tuple[int, int], int] = {}
    for u, v, _, lineno in records:
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(lineno, f"duplicate edge {key[0]} {key[1]} (first on line {seen[key]})")
        seen[key] = lineno
    top = max((max(u, v) for u, v, _, _ in records), default=-1) + 1
    n = top if n_header is None else n_header
    if n < top:
        raise GraphFormatError(1, f"header n={n} but vertex {top - 1} appears")
    g = Graph(n, [(u, v) for u, v, _, _ in records])
    if widths == {3}:
        colour = {(min(u, v), max(u, v)): c for u, v, c, _ in records}
        return ColouredGraph.from_colours(g, [colour[e] for e in g.edges])
    return g


def format_edge_list(obj: Graph | ColouredGraph) -> str:
    """Canonical serialization: header, then sorted edges ``u v [c]`` with u < v."""
    if isinstance(obj, ColouredGraph):
        body = [f"{u} {v} {c}" for (u, v), c in zip(obj.graph.edges, obj.colours)]
        n = obj.n
    else:
        body = [f"{u} {v}" for u, v in obj.edges]
        n = obj.n
    return "\n".join([f"# n={n}", *body]) + "\n"


def write_edge_list(obj: Graph | ColouredGraph, dest) -> None:
    text = format_edge_list(obj)
    if isinstance(dest, (str, Path)):
        Path(dest).write_text(text, encoding="utf-8")
    else:
        dest.write(text)


def read_arc_list(source) -> OrientedGraph:
    fh, close = _open_text(source)
    try:
        return parse_arc_list(fh.read())
    finally:
        if close:
            fh.close()


def format_arc_list(d: OrientedGraph) -> str:
    return "\n".join([f"# n={d.n}", *(f"{u} {v}" for u, v in d.arcs)]) + "\n"


def parse_arc_list(text: str) -> OrientedGraph:
    n_header = None
    arcs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        head = raw.partition("#")[0]
        if not head.strip():
            m = _HEADER.match(raw.strip())
            if m:
                n_header = int(m.group(1))
            continue
        parts = head.split()
        if len(parts) != 2:
            raise GraphFormatError(lineno, f"expected 'u v', got {head.strip()!r}")
        try:
            arcs.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphFormatError(lineno, f"non-integer field in {head.strip()!r}") from None
    top = max((max(a) for a in arcs), default=-1) + 1
    try:
        return OrientedGraph(top if n_header is None else n_header, arcs)
    except ValueError as exc:
        raise GraphFormatError(0, str(exc)) from None


def to_dot(obj: Graph | ColouredGraph | OrientedGraph, name: str = "G", edge_labels: dict | None = None) -> str:
    """Graphviz DOT text; coloured edges carry their colour id as a label."""
    if isinstance(obj, OrientedGraph):
        lines = [f"digraph {name} {{"]
        lines += [f"  {v};" for v in range(obj.n)]
        for u, v in obj.arcs:
            lab = edge_labels.get((u, v)) if edge_labels else None
            lines.append(f"  {u} -> {v}" + (f' [label="{lab}"]' if lab is not None else "") + ";")
    else:
        g = obj.graph if isinstance(obj, ColouredGraph) else obj
        lines = [f"graph {name} {{"]
        lines += [f"  {v};" for v in range(g.n)]
        for i, (u, v) in enumerate(g.edges):
            lab = obj.colours[i] if isinstance(obj, ColouredGraph) else (edge_labels or {}).get((u, v))
            lines.append(f"  {u} -- {v}" + (f' [label="{lab}"]' if lab is not None else "") + ";")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dump_json(obj, dest) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if isinstance(dest, (str, Path)):
        Path(dest).write_text(text, encoding="utf-8")
    else:
        dest.write(text)


def sorted_ids(vertices: Iterable[int]) -> list[int]:
    return sorted(int(v) for v in vertices)
