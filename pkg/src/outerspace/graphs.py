"""Finite connected multigraphs with oriented edges.

Edges carry ids 0..E-1.  A dart (oriented edge) is a signed id:
+(e+1) traverses edge e forward, -(e+1) backward.  This mirrors the
letter convention in :mod:`outerspace.words`, which keeps path and word
manipulation uniform.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence


def dart_key(d: int) -> tuple[int, int]:
    return (abs(d) - 1, 0 if d > 0 else 1)


class Graph:
    """Connected multigraph; loops and parallel edges allowed.

    For outer-space use graphs must have all vertex valences >= 3; graphs
    keeping valence-2 vertices as a bookkeeping device carry
    ``subdivided=True``.
    """

    __slots__ = ("nv", "edges", "subdivided", "_darts_at")

    def __init__(self, num_vertices: int, edges: Sequence[tuple[int, int]],
                 subdivided: bool = False):
        edges = tuple((int(u), int(v)) for u, v in edges)
        if num_vertices <= 0:
            raise ValueError("graph needs at least one vertex")
        for u, v in edges:
            if not (0 <= u < num_vertices and 0 <= v < num_vertices):
                raise ValueError("edge endpoint out of range")
        object.__setattr__(self, "nv", int(num_vertices))
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "subdivided", bool(subdivided))
        darts_at: list[list[int]] = [[] for _ in range(num_vertices)]
        for e, (u, v) in enumerate(edges):
            darts_at[u].append(e + 1)
            darts_at[v].append(-(e + 1))
        object.__setattr__(
            self, "_darts_at",
            tuple(tuple(sorted(ds, key=dart_key)) for ds in darts_at))
        if not self.is_connected():
            raise ValueError("graph must be connected")

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @property
    def ne(self) -> int:
        return len(self.edges)

    @property
    def rank(self) -> int:
        return self.ne - self.nv + 1

    def origin(self, d: int) -> int:
        u, v = self.edges[abs(d) - 1]
        return u if d > 0 else v

    def terminus(self, d: int) -> int:
        u, v = self.edges[abs(d) - 1]
        return v if d > 0 else u

    def darts_at(self, v: int) -> tuple[int, ...]:
        return self._darts_at[v]

    def valence(self, v: int) -> int:
        return len(self._darts_at[v])

    def is_connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for d in self._darts_at[v]:
                w = self.terminus(d)
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.nv

    def is_core(self) -> bool:
        """No valence-1 or valence-2 vertices."""
        return all(self.valence(v) >= 3 for v in range(self.nv))

    def __eq__(self, other) -> bool:
        return (isinstance(other, Graph) and self.nv == other.nv
                and self.edges == other.edges)

    def __hash__(self) -> int:
        return hash(("Graph", self.nv, self.edges))

    def __repr__(self) -> str:
        return f"Graph({self.nv}, {list(self.edges)})"


class EdgePath:
    """A dart sequence with matching endpoints; optionally closed."""

    __slots__ = ("graph", "darts", "closed")

    def __init__(self, graph: Graph, darts: Iterable[int], closed: bool = False):
        darts = tuple(darts)
        for d in darts:
            if d == 0 or abs(d) > graph.ne:
                raise ValueError(f"invalid dart {d}")
        for a, b in zip(darts, darts[1:]):
            if graph.terminus(a) != graph.origin(b):
                raise ValueError(f"darts {a},{b} do not concatenate")
        if closed and darts and graph.terminus(darts[-1]) != graph.origin(darts[0]):
            raise ValueError("closed path does not close up")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "darts", darts)
        object.__setattr__(self, "closed", bool(closed))

    def __setattr__(self, name, value):
        raise AttributeError("EdgePath is immutable")

    def __len__(self) -> int:
        return len(self.darts)

    def __eq__(self, other) -> bool:
        return (isinstance(other, EdgePath) and self.graph == other.graph
                and self.darts == other.darts and self.closed == other.closed)

    def __hash__(self) -> int:
        return hash(("EdgePath", self.darts, self.closed))

    def __repr__(self) -> str:
        return f"EdgePath({list(self.darts)}, closed={self.closed})"

    def origin(self) -> Optional[int]:
        return self.graph.origin(self.darts[0]) if self.darts else None

    def terminus(self) -> Optional[int]:
        return self.graph.terminus(self.darts[-1]) if self.darts else None

    def inverse(self) -> "EdgePath":
        return EdgePath(self.graph, tuple(-d for d in reversed(self.darts)), self.closed)

    def is_reduced(self) -> bool:
        return all(a != -b for a, b in zip(self.darts, self.darts[1:]))

    def is_cyclically_reduced(self) -> bool:
        if not self.is_reduced():
            return False
        if self.closed and len(self.darts) > 1:
            return self.darts[0] != -self.darts[-1]
        return True


def reduce_darts(darts: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for d in darts:
        if out and out[-1] == -d:
            out.pop()
        else:
            out.append(d)
    return tuple(out)


def tighten(path: EdgePath) -> EdgePath:
    """Reduce a path rel endpoints; cyclically reduce if it is closed."""
    darts = reduce_darts(path.darts)
    if path.closed:
        i, j = 0, len(darts)
        while i < j - 1 and darts[i] == -darts[j - 1]:
            i += 1
            j -= 1
        darts = darts[i:j]
        if len(darts) == 1 and darts[0] == -darts[0]:  # unreachable, defensive
            darts = ()
    return EdgePath(path.graph, darts, path.closed)


def concat(a: EdgePath, b: EdgePath, closed: bool = False) -> EdgePath:
    return EdgePath(a.graph, a.darts + b.darts, closed)


# --- forests, spanning trees ------------------------------------------------

def is_forest(graph: Graph, edge_ids: Iterable[int]) -> bool:
    parent = list(range(graph.nv))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edge_ids:
        u, v = graph.edges[e]
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


class Forest(frozenset):
    """A set of edge ids containing no cycle.  Validate with Forest.of."""

    @staticmethod
    def of(graph: Graph, edges: Iterable[int]) -> "Forest":
        edges = frozenset(edges)
        if not is_forest(graph, edges):
            raise ValueError("edge set contains a cycle")
        return Forest(edges)


def spanning_tree(graph: Graph, contain: Iterable[int] = ()) -> frozenset[int]:
    """Deterministic spanning tree: seeded with ``contain``, grown greedily
    in edge-id order (equivalently breadth-first from the least vertex)."""
    contain = sorted(set(contain))
    if not is_forest(graph, contain):
        raise ValueError("required edges contain a cycle")
    parent = list(range(graph.nv))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree = []
    for e in itertools.chain(contain, range(graph.ne)):
        u, v = graph.edges[e]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            tree.append(e)
    if len(tree) != graph.nv - 1:
        raise AssertionError("graph not connected")
    return frozenset(tree)


def tree_path(graph: Graph, tree: frozenset[int], u: int, v: int) -> tuple[int, ...]:
    """The reduced dart path from u to v inside the tree."""
    if u == v:
        return ()
    # breadth-first from u through tree edges
    prev: dict[int, int] = {u: 0}
    frontier = [u]
    while frontier and v not in prev:
        nxt = []
        for w in frontier:
            for d in graph.darts_at(w):
                if abs(d) - 1 in tree:
                    t = graph.terminus(d)
                    if t not in prev:
                        prev[t] = d
                        nxt.append(t)
        frontier = nxt
    if v not in prev:
        raise ValueError("tree does not span both vertices")
    darts = []
    w = v
    while w != u:
        d = prev[w]
        darts.append(d)
        w = graph.origin(d)
    return tuple(reversed(darts))


# --- candidate loops ---------------------------------------------------------

@dataclass(frozen=True)
class CandidateLoop:
    """A closed loop that is an embedded circle, a figure eight or a barbell."""
    path: EdgePath
    kind: str  # "circle" | "figure-eight" | "barbell"


def _canonical_loop(darts: Sequence[int]) -> tuple[int, ...]:
    """Least rotation among the loop and its inverse (dedup key)."""
    darts = tuple(darts)
    cands = []
    for seq in (darts, tuple(-d for d in reversed(darts))):
        for k in range(len(seq)):
            cands.append(seq[k:] + seq[:k])
    return min(cands, key=lambda s: tuple(dart_key(d) for d in s))


def embedded_circles(graph: Graph) -> list[tuple[int, ...]]:
    """All embedded circles, one dart sequence per circle up to rotation
    and inversion, in canonical order."""
    found: set[tuple[int, ...]] = set()

    def extend(start: int, v: int, darts: list[int], vertices: set[int]):
        for d in graph.darts_at(v):
            if any(abs(d) == abs(x) for x in darts):
                continue
            w = graph.terminus(d)
            if w == start:
                found.add(_canonical_loop(darts + [d]))
            elif w > start and w not in vertices:
                vertices.add(w)
                darts.append(d)
                extend(start, w, darts, vertices)
                darts.pop()
                vertices.remove(w)

    for start in range(graph.nv):
        extend(start, start, [], {start})
    return sorted(found, key=lambda s: (len(s), tuple(dart_key(d) for d in s)))


def _rotate_to_vertex(graph: Graph, circle: Sequence[int], v: int) -> tuple[int, ...]:
    for k, d in enumerate(circle):
        if graph.origin(d) == v:
            return tuple(circle[k:]) + tuple(circle[:k])
    raise ValueError("vertex not on circle")


def _connecting_paths(graph: Graph, va: set[int], vb: set[int],
                      banned_edges: set[int]) -> list[tuple[int, ...]]:
    """Embedded paths from va to vb, interior disjoint from va | vb."""
    out = []

    def extend(v: int, darts: list[int], seen: set[int]):
        for d in graph.darts_at(v):
            if abs(d) - 1 in banned_edges or any(abs(d) == abs(x) for x in darts):
                continue
            w = graph.terminus(d)
            if w in vb:
                out.append(tuple(darts + [d]))
            elif w not in va and w not in vb and w not in seen:
                seen.add(w)
                darts.append(d)
                extend(w, darts, seen)
                darts.pop()
                seen.remove(w)

    for a in sorted(va):
        extend(a, [], set())
    return out


def enumerate_candidates(graph: Graph) -> list[CandidateLoop]:
    """All candidate loops, one representative per class up to rotation
    and inversion.

    Circles are embedded; figure eights are two circles sharing exactly one
    vertex; barbells are two vertex-disjoint circles joined by an embedded
    path crossed twice.
    """
    circles = embedded_circles(graph)
    loops: dict[tuple[int, ...], CandidateLoop] = {}

    def record(darts: Sequence[int], kind: str):
        key = _canonical_loop(darts)
        if key not in loops:
            loops[key] = CandidateLoop(EdgePath(graph, key, closed=True), kind)

    for c in circles:
        record(c, "circle")

    info = []
    for c in circles:
        vset = {graph.origin(d) for d in c}
        eset = {abs(d) - 1 for d in c}
        info.append((c, vset, eset))

    for (c1, v1, e1), (c2, v2, e2) in itertools.combinations(info, 2):
        if e1 & e2:
            continue
        shared = v1 & v2
        if len(shared) == 1:
            v = next(iter(shared))
            a = _rotate_to_vertex(graph, c1, v)
            b = _rotate_to_vertex(graph, c2, v)
            b_inv = tuple(-d for d in reversed(b))
            record(a + b, "figure-eight")
            record(a + b_inv, "figure-eight")
        elif not shared:
            for pi in _connecting_paths(graph, v1, v2, e1 | e2):
                a = _rotate_to_vertex(graph, c1, graph.origin(pi[0]))
                b = _rotate_to_vertex(graph, c2, graph.terminus(pi[-1]))
                pi_inv = tuple(-d for d in reversed(pi))
                b_inv = tuple(-d for d in reversed(b))
                record(a + pi + b + pi_inv, "barbell")
                record(a + pi + b_inv + pi_inv, "barbell")

    return sorted(loops.values(),
                  key=lambda c: (len(c.path.darts),
                                 tuple(dart_key(d) for d in c.path.darts)))


# --- isomorphisms ------------------------------------------------------------

@dataclass(frozen=True)
class GraphIso:
    """Graph isomorphism: vertex bijection plus signed edge bijection."""
    source: Graph
    target: Graph
    vertex_map: tuple[int, ...]
    edge_map: tuple[int, ...]  # edge e of source -> dart in target

    def apply_dart(self, d: int) -> int:
        image = self.edge_map[abs(d) - 1]
        return image if d > 0 else -image

    def apply_path(self, path: EdgePath) -> EdgePath:
        return EdgePath(self.target, tuple(self.apply_dart(d) for d in path.darts),
                        path.closed)

    def inverse(self) -> "GraphIso":
        vmap = [0] * self.target.nv
        for v, w in enumerate(self.vertex_map):
            vmap[w] = v
        emap = [0] * self.target.ne
        for e, d in enumerate(self.edge_map):
            emap[abs(d) - 1] = (e + 1) if d > 0 else -(e + 1)
        return GraphIso(self.target, self.source, tuple(vmap), tuple(emap))


def isomorphisms(g: Graph, h: Graph,
                 g_lengths: Optional[Sequence] = None,
                 h_lengths: Optional[Sequence] = None) -> list[GraphIso]:
    """All graph isomorphisms g -> h, optionally length preserving."""
    if g.nv != h.nv or g.ne != h.ne:
        return []
    if sorted(g.valence(v) for v in range(g.nv)) != sorted(h.valence(v) for v in range(h.nv)):
        return []
    use_lengths = g_lengths is not None and h_lengths is not None

    def pair_classes(graph: Graph) -> dict[tuple[int, int], list[int]]:
        classes: dict[tuple[int, int], list[int]] = {}
        for e, (u, v) in enumerate(graph.edges):
            classes.setdefault((min(u, v), max(u, v)), []).append(e)
        return classes

    g_classes = pair_classes(g)
    h_classes = pair_classes(h)
    out = []
    for perm in itertools.permutations(range(h.nv)):
        if any(g.valence(v) != h.valence(perm[v]) for v in range(g.nv)):
            continue
        ok = True
        mapped: list[tuple[list[int], list[int]]] = []
        for (u, v), es in g_classes.items():
            tu, tv = perm[u], perm[v]
            hs = h_classes.get((min(tu, tv), max(tu, tv)), [])
            if len(hs) != len(es):
                ok = False
                break
            mapped.append((es, hs))
        if not ok:
            continue
        # assemble per-class bijections
        per_class: list[list[list[int]]] = []
        for es, hs in mapped:
            options: list[list[int]] = []
            for target_order in itertools.permutations(hs):
                if use_lengths and any(g_lengths[e] != h_lengths[t]
                                       for e, t in zip(es, target_order)):
                    continue
                sign_choices: list[list[int]] = [[]]
                for e, t in zip(es, target_order):
                    u, v = g.edges[e]
                    a, b = h.edges[t]
                    if u == v:  # loop onto loop, both orientations
                        sign_choices = [sc + [s * (t + 1)] for sc in sign_choices
                                        for s in (+1, -1)]
                    else:
                        if (perm[u], perm[v]) == (a, b):
                            sign = +1
                        elif (perm[u], perm[v]) == (b, a):
                            sign = -1
                        else:
                            sign = 0
                        if sign == 0:
                            sign_choices = []
                            break
                        sign_choices = [sc + [sign * (t + 1)] for sc in sign_choices]
                    if not sign_choices:
                        break
                options.extend(sign_choices)
            if not options:
                per_class = []
                break
            per_class.append(options)
        if not per_class:
            continue
        for combo in itertools.product(*per_class):
            edge_map = [0] * g.ne
            for (es, _), darts in zip(mapped, combo):
                for e, d in zip(es, darts):
                    edge_map[e] = d
            out.append(GraphIso(g, h, tuple(perm), tuple(edge_map)))
    return out


# --- forest collapse and vertex blow-up --------------------------------------

@dataclass(frozen=True)
class CollapseResult:
    graph: Graph
    vertex_map: tuple[int, ...]          # old vertex -> new vertex
    edge_map: tuple[Optional[int], ...]  # old edge -> new edge id or None

    def project_darts(self, darts: Iterable[int]) -> tuple[int, ...]:
        out = []
        for d in darts:
            e = self.edge_map[abs(d) - 1]
            if e is not None:
                out.append((e + 1) if d > 0 else -(e + 1))
        return tuple(out)


def collapse_forest(graph: Graph, forest: Iterable[int],
                    subdivided: bool = False) -> CollapseResult:
    """Contract every edge of the forest; components become vertices."""
    forest = sorted(set(forest))
    if not is_forest(graph, forest):
        raise ValueError("edge set contains a cycle")
    parent = list(range(graph.nv))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in forest:
        u, v = graph.edges[e]
        parent[find(u)] = find(v)
    reps = sorted({find(v) for v in range(graph.nv)})
    index = {r: i for i, r in enumerate(reps)}
    vertex_map = tuple(index[find(v)] for v in range(graph.nv))
    forest_set = set(forest)
    edge_map: list[Optional[int]] = []
    new_edges = []
    for e, (u, v) in enumerate(graph.edges):
        if e in forest_set:
            edge_map.append(None)
        else:
            edge_map.append(len(new_edges))
            new_edges.append((vertex_map[u], vertex_map[v]))
    new_graph = Graph(len(reps), new_edges, subdivided=subdivided)
    return CollapseResult(new_graph, vertex_map, tuple(edge_map))


@dataclass(frozen=True)
class BlowUp:
    """Single-edge expansion at a vertex.

    The incident darts split into two sides, each of size >= 2.  Side A
    contains the least dart and keeps the old vertex id; side B becomes a
    fresh vertex, and the new edge (id = old edge count) runs A -> B.
    Collapsing the new edge recovers the original graph.
    """
    vertex: int
    side_a: frozenset[int]
    side_b: frozenset[int]
    graph: Graph
    new_edge: int

    def collapse_back(self) -> CollapseResult:
        return collapse_forest(self.graph, (self.new_edge,))


def enumerate_blow_ups(graph: Graph) -> list[BlowUp]:
    """All single-edge blow-ups at all vertices, unordered bipartitions."""
    out = []
    for v in range(graph.nv):
        darts = graph.darts_at(v)
        if len(darts) < 4:
            continue
        least = darts[0]
        rest = darts[1:]
        for r in range(1, len(darts) - 1):
            for extra in itertools.combinations(rest, r):
                side_a = frozenset((least,) + extra)
                side_b = frozenset(rest) - side_a
                if len(side_b) < 2:
                    continue
                new_vertex = graph.nv
                edges = []
                for e, (u, w) in enumerate(graph.edges):
                    nu, nw = u, w
                    if u == v and (e + 1) in side_b:
                        nu = new_vertex
                    if w == v and -(e + 1) in side_b:
                        nw = new_vertex
                    edges.append((nu, nw))
                edges.append((v, new_vertex))
                new_graph = Graph(graph.nv + 1, edges)
                out.append(BlowUp(v, side_a, side_b, new_graph, graph.ne))
    return out


# --- standard graphs ----------------------------------------------------------

def rose_graph(n: int) -> Graph:
    """n loops at a single vertex."""
    if n < 1:
        raise ValueError("rose needs at least one petal")
    return Graph(1, [(0, 0)] * n)


def banana_graph(k: int) -> Graph:
    """Two vertices joined by k parallel edges (k = 3 is the theta graph)."""
    if k < 3:
        raise ValueError("need at least three parallel edges for a core graph")
    return Graph(2, [(0, 1)] * k)


def theta_graph() -> Graph:
    return banana_graph(3)


def dumbbell_graph() -> Graph:
    """Two loops joined by a bar."""
    return Graph(2, [(0, 0), (1, 1), (0, 1)])
