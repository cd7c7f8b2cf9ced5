"""Text formats: words, graphs, marked graphs, points, automorphisms.

A workspace is a single human-readable document of named blocks.  All
numbers are exact rationals written as p/q.  Example::

    graph theta
      vertices 2
      edge e0 0 1
      edge e1 0 1
      edge e2 0 1
    end

    marked X3
      graph theta
      basepoint 0
      tree e0
      petal e1 -e0
      petal e2 -e0
      word e1 a
      word e2 b
    end

    point X3centre
      marked X3
      lengths 1/3 1/3 1/3
    end

    auto shift 2
      a -> b A
      b -> A
      inv a -> B
      inv b -> a B
    end

A ``marked`` block may say ``marking tree`` instead of listing petals and
words, which installs the canonical marking of a chosen spanning tree.
Generators are letters a, b, c, ...; uppercase means inverse.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .graphs import EdgePath, Graph, banana_graph, rose_graph, theta_graph
from .marked import CVPoint, MarkedGraph, SimplexRef, marked_from_tree
from .words import AutoPair, Word, parse_letters, reduce, spell


class WorkspaceError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class Workspace:
    """Named graphs, marked graphs, points and automorphisms."""

    def __init__(self):
        self.graphs: dict[str, Graph] = {}
        self.marked: dict[str, MarkedGraph] = {}
        self.points: dict[str, CVPoint] = {}
        self.autos: dict[str, AutoPair] = {}
        self.edge_names: dict[str, list[str]] = {}

    def simplex(self, name: str) -> SimplexRef:
        if name in self.marked:
            return SimplexRef(self.marked[name])
        if name in self.points:
            return self.points[name].simplex()
        raise WorkspaceError(f"no marked graph or point named {name!r}")

    def point(self, name: str) -> CVPoint:
        if name in self.points:
            return self.points[name]
        if name in self.marked:
            return SimplexRef(self.marked[name]).centre()
        raise WorkspaceError(f"no point named {name!r}")

    def auto(self, name: str) -> AutoPair:
        if name not in self.autos:
            raise WorkspaceError(f"no automorphism named {name!r}")
        return self.autos[name]


def fraction(text: str, line: Optional[int] = None) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise WorkspaceError(f"bad rational {text!r}", line)


def _parse_dart(token: str, names: dict[str, int], line: int) -> int:
    sign = 1
    if token.startswith("-"):
        sign, token = -1, token[1:]
    if token not in names:
        raise WorkspaceError(f"unknown edge {token!r}", line)
    return sign * (names[token] + 1)


def parse_workspace(text: str, base: Optional[Workspace] = None) -> Workspace:
    ws = base if base is not None else Workspace()
    lines = text.splitlines()
    i = 0

    def strip(line: str) -> str:
        return line.split("#", 1)[0].strip()

    while i < len(lines):
        head = strip(lines[i])
        i += 1
        if not head:
            continue
        parts = head.split()
        kind, name = parts[0], (parts[1] if len(parts) > 1 else None)
        if kind not in ("graph", "marked", "point", "auto") or name is None:
            raise WorkspaceError(f"expected a named block, got {head!r}", i)
        body: list[tuple[int, str]] = []
        while i < len(lines):
            line = strip(lines[i])
            i += 1
            if line == "end":
                break
            if line:
                body.append((i, line))
        else:
            raise WorkspaceError(f"block {name!r} not closed with 'end'", i)
        if kind == "graph":
            _parse_graph(ws, name, body)
        elif kind == "marked":
            _parse_marked(ws, name, body)
        elif kind == "point":
            _parse_point(ws, name, body)
        else:
            _parse_auto(ws, name, parts[2:], body)
    return ws


def _parse_graph(ws: Workspace, name: str, body) -> None:
    nv = None
    edges = []
    names = []
    for ln, line in body:
        parts = line.split()
        if parts[0] == "vertices":
            nv = int(parts[1])
        elif parts[0] == "edge":
            if len(parts) != 4:
                raise WorkspaceError("edge wants: edge NAME FROM TO", ln)
            names.append(parts[1])
            edges.append((int(parts[2]), int(parts[3])))
        else:
            raise WorkspaceError(f"unknown graph line {line!r}", ln)
    if nv is None:
        raise WorkspaceError(f"graph {name!r} missing 'vertices'")
    try:
        ws.graphs[name] = Graph(nv, edges)
    except ValueError as exc:
        raise WorkspaceError(f"graph {name!r}: {exc}")
    ws.edge_names[name] = names


def _parse_marked(ws: Workspace, name: str, body) -> None:
    graph_name = None
    basepoint = 0
    tree_tokens: list[str] = []
    petal_lines: list[tuple[int, list[str]]] = []
    word_lines: list[tuple[int, str, str]] = []
    canonical = False
    for ln, line in body:
        parts = line.split()
        if parts[0] == "graph":
            graph_name = parts[1]
        elif parts[0] == "basepoint":
            basepoint = int(parts[1])
        elif parts[0] == "tree":
            tree_tokens = parts[1:]
        elif parts[0] == "marking" and parts[1:] == ["tree"]:
            canonical = True
        elif parts[0] == "petal":
            petal_lines.append((ln, parts[1:]))
        elif parts[0] == "word":
            word_lines.append((ln, parts[1], " ".join(parts[2:])))
        else:
            raise WorkspaceError(f"unknown marked line {line!r}", ln)
    if graph_name is None or graph_name not in ws.graphs:
        raise WorkspaceError(f"marked {name!r} needs a known graph")
    graph = ws.graphs[graph_name]
    names = {n: e for e, n in enumerate(ws.edge_names[graph_name])}
    tree = frozenset(names[t] if t in names else int(t) for t in tree_tokens)
    if canonical:
        ws.marked[name] = marked_from_tree(graph, basepoint,
                                           tree if tree else None)
        return
    petals = []
    for ln, tokens in petal_lines:
        darts = tuple(_parse_dart(t, names, ln) for t in tokens)
        try:
            petals.append(EdgePath(graph, darts, closed=True))
        except ValueError as exc:
            raise WorkspaceError(str(exc), ln)
    words = {}
    for ln, edge_token, word_text in word_lines:
        e = names.get(edge_token)
        if e is None:
            raise WorkspaceError(f"unknown edge {edge_token!r}", ln)
        words[e] = reduce(parse_letters(word_text))
    try:
        ws.marked[name] = MarkedGraph(graph, basepoint, petals, tree, words)
    except ValueError as exc:
        raise WorkspaceError(f"marked {name!r}: {exc}")


def _parse_point(ws: Workspace, name: str, body) -> None:
    marked_name = None
    lengths = None
    for ln, line in body:
        parts = line.split()
        if parts[0] == "marked":
            marked_name = parts[1]
        elif parts[0] == "lengths":
            lengths = [fraction(t, ln) for t in parts[1:]]
        else:
            raise WorkspaceError(f"unknown point line {line!r}", ln)
    if marked_name is None or marked_name not in ws.marked:
        raise WorkspaceError(f"point {name!r} needs a known marked graph")
    if lengths is None:
        raise WorkspaceError(f"point {name!r} missing lengths")
    try:
        ws.points[name] = CVPoint(ws.marked[marked_name], lengths)
    except ValueError as exc:
        raise WorkspaceError(f"point {name!r}: {exc}")


def _parse_auto(ws: Workspace, name: str, extra, body) -> None:
    rank = int(extra[0]) if extra else None
    fwd: dict[int, Word] = {}
    inv: dict[int, Word] = {}
    for ln, line in body:
        target = inv if line.startswith("inv ") else fwd
        if line.startswith("inv "):
            line = line[4:]
        if "->" not in line:
            raise WorkspaceError(f"auto line needs '->': {line!r}", ln)
        left, right = (s.strip() for s in line.split("->", 1))
        src = parse_letters(left)
        if len(src) != 1 or src[0] < 0:
            raise WorkspaceError(f"left side must be a single generator: {left!r}", ln)
        target[src[0]] = reduce(parse_letters(right))
    if rank is None:
        rank = max(fwd) if fwd else 0
    if set(fwd) != set(range(1, rank + 1)) or set(inv) != set(range(1, rank + 1)):
        raise WorkspaceError(f"auto {name!r} must map every generator, "
                             "with a full 'inv' block")
    try:
        ws.autos[name] = AutoPair(tuple(fwd[i] for i in range(1, rank + 1)),
                                  tuple(inv[i] for i in range(1, rank + 1)))
    except ValueError as exc:
        raise WorkspaceError(f"auto {name!r}: {exc}")


def golden_auto() -> AutoPair:
    return AutoPair((Word((2,)), Word((1, 2))), (Word((2, -1)), Word((1,))))


def builtin_workspace() -> Workspace:
    """rose2/rose3/theta marked graphs plus the stock automorphisms."""
    from .models import build_Xp
    from .words import identity_auto
    ws = Workspace()
    ws.graphs["rose2"] = rose_graph(2)
    ws.edge_names["rose2"] = ["a", "b"]
    ws.graphs["rose3"] = rose_graph(3)
    ws.edge_names["rose3"] = ["a", "b", "c"]
    ws.graphs["theta"] = theta_graph()
    ws.edge_names["theta"] = ["e0", "e1", "e2"]
    ws.graphs["banana4"] = banana_graph(4)
    ws.edge_names["banana4"] = ["e0", "e1", "e2", "e3"]
    for g in ("rose2", "rose3", "theta", "banana4"):
        ws.marked[g] = marked_from_tree(ws.graphs[g])
    ws.autos["golden"] = golden_auto()
    ws.autos["alpha3"] = build_Xp(3).induced
    ws.autos["id2"] = identity_auto(2)
    ws.autos["id3"] = identity_auto(3)
    return ws


def show_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def show_lengths(lengths) -> str:
    return " ".join(show_fraction(l) for l in lengths)


def show_word(w) -> str:
    return spell(w.letters)
