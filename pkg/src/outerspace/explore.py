"""Simplicial neighbourhood moves, Min-set census, and orbit quotients.

The census is a breadth-first search through faces (single-edge collapses)
and cofaces (single-edge blow-ups), retaining the simplices whose minimal
displacement over the closed simplex stays within a multiplicative
tolerance of the best value seen.  Entries are keyed by a canonical
invariant of the marked graph, so insertion order cannot change the
result.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .displace import MinimizationResult, min_displacement_on_simplex
from .marked import CVPoint, SimplexRef
from .words import AutoPair


@dataclass(frozen=True)
class Move:
    """One simplicial step: collapse an edge or blow up a vertex.

    ``edge_map`` sends each edge of the source simplex to an edge of the
    target or None (the collapsed edge); ``new_edge`` names the blown-up
    edge of the target, if any.  This is what lets census points of a face
    be re-expressed in coface coordinates.
    """
    kind: str  # "collapse" | "blow-up"
    detail: tuple
    edge_map: tuple[Optional[int], ...]
    new_edge: Optional[int]


def neighbors(simplex: SimplexRef) -> list[tuple[Move, SimplexRef]]:
    """Faces and cofaces reachable by one move, markings rewritten."""
    out = []
    graph = simplex.graph
    for e in range(graph.ne):
        u, v = graph.edges[e]
        if u == v:
            continue  # a loop is not a forest
        collapsed, cr = simplex.marked.collapse((e,))
        move = Move("collapse", (e,), cr.edge_map, None)
        out.append((move, SimplexRef(collapsed)))
    for bu in enumerate_blow_ups_cached(simplex):
        blown = simplex.marked.blow_up(bu)
        edge_map = tuple(range(graph.ne))
        move = Move("blow-up", (bu.vertex, tuple(sorted(bu.side_a))),
                    edge_map, bu.new_edge)
        out.append((move, SimplexRef(blown)))
    return out


def enumerate_blow_ups_cached(simplex: SimplexRef):
    from .graphs import enumerate_blow_ups
    if "blow_ups" not in simplex._cache:
        simplex._cache["blow_ups"] = enumerate_blow_ups(simplex.graph)
    return simplex._cache["blow_ups"]


@dataclass
class SimplexCensusEntry:
    simplex: SimplexRef
    key: tuple
    result: MinimizationResult
    path: tuple[str, ...]
    depth: int


@dataclass
class Census:
    """Adjacency rows are (source index, target index, move, discovered);
    ``discovered`` marks edges along which the target entry was created, so
    that source coordinates transport into the stored target presentation."""
    entries: list[SimplexCensusEntry]
    best_upper: Fraction
    tol: Fraction
    visited: int
    partial: bool
    adjacency: list[tuple[int, int, Move, bool]] = field(default_factory=list)

    def argmin_points(self) -> list[CVPoint]:
        return [CVPoint(e.simplex.marked, e.result.argmin) for e in self.entries]


def explore_min_set(seed: CVPoint, phi: AutoPair, tol=Fraction(1, 10**6),
                    max_simplices: int = 500,
                    max_steps: Optional[int] = None) -> Census:
    """Census of simplices whose closed-simplex minimum is within tol of
    the least displacement found, by breadth-first search from the seed.

    ``max_steps`` caps the search depth; marking data grows exponentially
    along the orbit of phi, so unbounded depth is not meaningful at desk
    scale.  The census is flagged partial when a limit cuts it off.
    """
    tol = Fraction(tol)
    seed_simplex = seed.simplex()
    seed_result = min_displacement_on_simplex(seed_simplex, phi, tol)
    from .displace import displacement_at
    seed_value = displacement_at(seed, phi)
    if seed_value > seed_result.upper * (1 + tol):
        raise ValueError(
            "seed point does not minimise displacement on its simplex: "
            f"{float(seed_value):.6f} vs bracket upper "
            f"{float(seed_result.upper):.6f}")

    best_upper = seed_result.upper
    entries: dict[tuple, SimplexCensusEntry] = {}
    index_of: dict[tuple, int] = {}
    order: list[tuple] = []
    adjacency: list[tuple[int, int, Move, bool]] = []
    seed_key = seed_simplex.key()
    entry = SimplexCensusEntry(seed_simplex, seed_key, seed_result, (), 0)
    entries[seed_key] = entry
    index_of[seed_key] = 0
    order.append(seed_key)
    rejected: set[tuple] = set()

    queue = deque([seed_key])
    visited = 1
    partial = False
    while queue:
        key = queue.popleft()
        current = entries[key]
        if max_steps is not None and current.depth >= max_steps:
            partial = True
            continue
        for move, nb in neighbors(current.simplex):
            nb_key = nb.key()
            if nb_key in entries:
                adjacency.append((index_of[key], index_of[nb_key], move, False))
                continue
            if nb_key in rejected:
                continue
            if len(entries) >= max_simplices:
                partial = True
                continue
            visited += 1
            result = min_displacement_on_simplex(nb, phi, tol)
            if result.upper < best_upper:
                best_upper = result.upper
            if result.lower <= best_upper * (1 + tol):
                new_entry = SimplexCensusEntry(
                    nb, nb_key, result,
                    current.path + (f"{move.kind}{move.detail}",),
                    current.depth + 1)
                entries[nb_key] = new_entry
                index_of[nb_key] = len(order)
                order.append(nb_key)
                adjacency.append((index_of[key], index_of[nb_key], move, True))
                queue.append(nb_key)
            else:
                rejected.add(nb_key)

    final = [entries[k] for k in order
             if entries[k].result.lower <= best_upper * (1 + tol)]
    kept = {id(e) for e in final}
    remap = {}
    for i, k in enumerate(order):
        if id(entries[k]) in kept:
            remap[i] = len(remap)
    final_adj = [(remap[a], remap[b], mv, disc) for a, b, mv, disc in adjacency
                 if a in remap and b in remap]
    return Census(final, best_upper, tol, visited, partial, final_adj)


def shared_simplex_pairs(census: Census) -> list[tuple[CVPoint, CVPoint]]:
    """Pairs of census argmin points lying in one closed simplex, both
    expressed in that simplex's stored presentation.

    Discovery edges of the census give the transport: across a blow-up the
    face argmin reappears with length zero on the new edge; across a
    collapse the face argmin pulls back with zero on the collapsed edge.
    """
    pairs = []
    for a, b, move, discovered in census.adjacency:
        if not discovered:
            continue
        src, dst = census.entries[a], census.entries[b]
        if move.kind == "blow-up":
            big = dst  # dst presentation was built by blowing up src
            lengths = list(src.result.argmin) + [Fraction(0)]
        else:
            big = src
            lengths = [dst.result.argmin[move.edge_map[e]]
                       if move.edge_map[e] is not None else Fraction(0)
                       for e in range(src.simplex.graph.ne)]
        boundary = CVPoint(big.simplex.marked, lengths)
        interior = CVPoint(big.simplex.marked, big.result.argmin)
        pairs.append((boundary, interior))
    return pairs


def census_is_connected(census: Census) -> bool:
    n = len(census.entries)
    if n <= 1:
        return True
    reach = {0}
    frontier = [0]
    nbrs: dict[int, set[int]] = {i: set() for i in range(n)}
    for a, b, _, _ in census.adjacency:
        nbrs[a].add(b)
        nbrs[b].add(a)
    while frontier:
        nxt = []
        for a in frontier:
            for b in nbrs[a]:
                if b not in reach:
                    reach.add(b)
                    nxt.append(b)
        frontier = nxt
    return len(reach) == n


@dataclass
class OrbitClass:
    representative: SimplexCensusEntry
    members: list[SimplexCensusEntry]

    @property
    def size(self) -> int:
        return len(self.members)


def _marking_size(marked) -> int:
    return (sum(len(p.darts) for p in marked.petals)
            + sum(len(w.letters) for w in marked.loop_words.values()))


def quotient_by_power(entries: list[SimplexCensusEntry], phi: AutoPair,
                      k_max: Optional[int] = None,
                      size_slack: int = 16) -> list[OrbitClass]:
    """Partition census entries by the relation  Delta' ~ Delta . phi^k.

    Entries are linked whenever acting by phi^k (|k| <= k_max) lands on
    another entry's canonical key; the transitive closure then groups whole
    orbits, so links at small k already identify orbit chains that the
    census discovered step by step.  Acting repeatedly grows the marking
    words roughly geometrically while the census markings stay small, so a
    walk stops once its marking exceeds ``size_slack`` times the largest
    census marking: no match is possible out there and verification of the
    intermediate markings is skipped.  Representatives are the entries with
    least canonical key.
    """
    if k_max is None:
        k_max = 2 * len(entries)
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    from .marked import canonical_key
    key_to_index = {e.key: i for i, e in enumerate(entries)}
    max_total = max(sum(len(w) for w in e.key[2]) for e in entries)
    cap = size_slack * max(_marking_size(e.simplex.marked) for e in entries) + 64
    parent = list(range(len(entries)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj

    for i, e in enumerate(entries):
        acted = e.simplex.marked
        for _ in range(k_max):
            acted = acted.act(phi, check=False)
            if _marking_size(acted) > cap:
                break
            key = canonical_key(acted, max_total=max_total)
            j = key_to_index.get(key) if key is not None else None
            if j is not None:
                union(i, j)
                break  # further powers are reached through j's own walk
    groups: dict[int, list[SimplexCensusEntry]] = {}
    for i in range(len(entries)):
        groups.setdefault(find(i), []).append(entries[i])
    classes = []
    for members in groups.values():
        rep = min(members, key=lambda e: e.key)
        classes.append(OrbitClass(rep, members))
    classes.sort(key=lambda c: c.representative.key)
    return classes
