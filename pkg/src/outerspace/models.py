"""Finite-order model graphs with cyclic edge maps and their verification.

Two families: for an odd prime p, the graph with two vertices and p
parallel edges, cyclically permuted; for primes p < q, the bipartite graph
on p + q vertices with all pq edges, shifted diagonally.  For p = 2 the
bipartite graph has valence-2 vertices and is only bookkeeping: the point
of outer space lives on the two-vertex quotient with q edges, where the
induced map is an orientation-reversing cyclic shift.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .displace import fixed_point_polytope, max_edge_length_at_one, \
    min_displacement_on_simplex
from .explore import enumerate_blow_ups_cached
from .graphs import Graph, GraphIso, banana_graph, isomorphisms
from .marked import (CVPoint, MarkedGraph, SimplexRef, induced_autopair,
                     marked_from_tree, marked_graph_equal)
from .words import AutoPair, compose, is_inner, outer_equal


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class SubdividedData:
    """The bipartite presentation kept alongside a p = 2 quotient model."""
    graph: Graph
    graph_map: GraphIso
    order: int


@dataclass(frozen=True)
class FiniteOrderModel:
    """A centre point fixed by the automorphism induced from a finite-order
    graph map."""
    point: CVPoint
    graph_map: GraphIso
    induced: AutoPair
    order: int
    label: str
    subdivided: Optional[SubdividedData] = None

    @property
    def marked(self) -> MarkedGraph:
        return self.point.marked

    def simplex(self) -> SimplexRef:
        return self.point.simplex()


def _shift_iso(graph: Graph, vertex_map, edge_darts) -> GraphIso:
    return GraphIso(graph, graph, tuple(vertex_map), tuple(edge_darts))


def build_Xp(p: int) -> FiniteOrderModel:
    """Two vertices, p parallel edges, map e_i -> e_{i+1}; rank p - 1."""
    if p < 3 or not _is_prime(p):
        raise ValueError("p must be an odd prime")
    graph = banana_graph(p)
    marked = marked_from_tree(graph, basepoint=0, tree=frozenset({0}))
    # edge i maps to edge i+1 mod p, orientations preserved, vertices fixed
    alpha = _shift_iso(graph, (0, 1), tuple((i + 1) % p + 1 for i in range(p)))
    induced = induced_autopair(marked, alpha, marked)
    point = SimplexRef(marked).centre()
    return FiniteOrderModel(point, alpha, induced, p, f"X_{p}")


def build_Xpq(p: int, q: int) -> FiniteOrderModel:
    """Bipartite vertices Z_p | Z_q, edges e_{i,j}, map the diagonal shift.

    Rank pq - p - q + 1; the graph map has order pq.  For p = 2 the model
    is presented on the unsubdivided two-vertex quotient, with the shift
    inverting every edge orientation; the subdivided bipartite data rides
    along for inspection.
    """
    if not (_is_prime(p) and _is_prime(q) and p < q):
        raise ValueError("need primes p < q")
    big = Graph(p + q, [(i, p + j) for i in range(p) for j in range(q)],
                subdivided=(p == 2))

    def eid(i, j):
        return i * q + j

    big_map = _shift_iso(
        big,
        tuple((i + 1) % p for i in range(p)) + tuple(p + (j + 1) % q for j in range(q)),
        tuple(eid((e // q + 1) % p, (e % q + 1) % q) + 1 for e in range(p * q)))

    if p == 2:
        quotient = banana_graph(q)
        marked = marked_from_tree(quotient, basepoint=0, tree=frozenset({0}))
        # E_j = e_{0,j} ebar_{1,j}; the shift sends E_j to E_{j+1} reversed
        beta = _shift_iso(quotient, (1, 0),
                          tuple(-((j + 1) % q + 1) for j in range(q)))
        induced = induced_autopair(marked, beta, marked)
        point = SimplexRef(marked).centre()
        return FiniteOrderModel(point, beta, induced, 2 * q, f"X_{p}{q}",
                                SubdividedData(big, big_map, 2 * q))

    star = frozenset({eid(0, j) for j in range(q)} | {eid(i, 0) for i in range(p)})
    marked = marked_from_tree(big, basepoint=0, tree=star)
    induced = induced_autopair(marked, big_map, marked)
    point = SimplexRef(marked).centre()
    return FiniteOrderModel(point, big_map, induced, p * q, f"X_{p}{q}")


def graph_map_order(iso: GraphIso) -> int:
    """Order of a graph self-map as a permutation with orientation data."""
    current = iso
    order = 1
    identity_vertices = tuple(range(iso.source.nv))
    identity_edges = tuple(range(1, iso.source.ne + 1))
    while (current.vertex_map, current.edge_map) != (identity_vertices, identity_edges):
        nxt_v = tuple(iso.vertex_map[v] for v in current.vertex_map)
        nxt_e = tuple(iso.apply_dart(d) for d in current.edge_map)
        current = GraphIso(iso.source, iso.source, nxt_v, nxt_e)
        order += 1
        if order > 10000:
            raise RuntimeError("graph map does not look finite order")
    return order


def sigma(model: FiniteOrderModel) -> AutoPair:
    """The involution induced by reversing every edge of the model graph.

    Only the two-vertex models admit this map (on a bipartite graph with
    p, q odd, reversing every edge is not a graph map, and no order-two
    element centralises the shift).  The induced automorphism inverts every
    generator and commutes with the model automorphism up to inner.
    """
    graph = model.marked.graph
    if graph.nv != 2:
        raise ValueError(
            "edge reversal is a graph map only for the two-vertex models")
    flip = _shift_iso(graph, (1, 0), tuple(-(e + 1) for e in range(graph.ne)))
    return induced_autopair(model.marked, flip, model.marked)


@dataclass
class FixedPointReport:
    label: str
    passed: bool
    lines: list[str]

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return "\n".join([f"{self.label}: {status}"] + [f"  {l}" for l in self.lines])


def verify_unique_fixed_point(model: FiniteOrderModel,
                              tol=Fraction(1, 10**6)) -> FixedPointReport:
    """Check that the centre is the only fixed point in sight.

    (1) on the model simplex the displacement-one locus meets the interior
    in the centre alone; (2) every invariant coface has an empty-interior
    fixed locus (non-invariant cofaces cannot contain fixed points and are
    skipped); (3) no face simplex carries interior fixed points either.
    """
    lines = []
    ok = True
    simplex = model.simplex()
    phi = model.induced
    ne = simplex.graph.ne

    # (1) within the model simplex
    poly = fixed_point_polytope(simplex, phi)
    if poly.feasible is None:
        ok = False
        lines.append("model simplex: fixed locus empty, centre not recovered")
    else:
        unique = True
        for e in range(ne):
            m = max_edge_length_at_one(simplex, phi, e)
            if m != Fraction(1, ne):
                unique = False
                lines.append(
                    f"model simplex: edge {e} reaches length {m} in the fixed locus")
        centre_fixed = marked_graph_equal(model.point, model.point.act(phi))
        if not centre_fixed:
            lines.append("model simplex: centre is not fixed")
        if unique and centre_fixed:
            lines.append("model simplex: unique interior fixed point = centre")
        else:
            ok = False

    # (2) invariant cofaces
    invariant = bad_cofaces = 0
    for bu in enumerate_blow_ups_cached(simplex):
        coface = SimplexRef(model.marked.blow_up(bu))
        acted = coface.act(phi)
        if not marked_graph_equal(coface.centre(), acted.centre()):
            continue  # not invariant: cannot contain fixed points
        invariant += 1
        if fixed_point_polytope(coface, phi).interior_nonempty:
            ok = False
            bad_cofaces += 1
            lines.append(
                f"coface at vertex {bu.vertex}, side {sorted(bu.side_a)}: "
                "interior fixed points exist")
    if bad_cofaces == 0:
        lines.append(f"cofaces: {invariant} invariant, none with interior fixed points")

    # (3) faces
    for e in range(ne):
        u, v = simplex.graph.edges[e]
        if u == v:
            continue
        face_marked, _ = model.marked.collapse((e,))
        face = SimplexRef(face_marked)
        if fixed_point_polytope(face, phi).interior_nonempty:
            ok = False
            lines.append(f"face from collapsing edge {e}: interior fixed points exist")
        else:
            result = min_displacement_on_simplex(face, phi, tol)
            lines.append(
                f"face from collapsing edge {e}: no fixed points, "
                f"min displacement >= {float(result.lower):.6f}")
    return FixedPointReport(model.label, ok, lines)


def unique_isometry_representative(model: FiniteOrderModel
                                   ) -> tuple[int, Optional[GraphIso]]:
    """Count length-preserving self-isomorphisms inducing the model
    automorphism up to inner, and return the one doing so.

    For these models exactly one isometry represents the automorphism and
    it is the defining graph map.
    """
    point = model.point
    matches = []
    for iso in isomorphisms(point.graph, point.graph, point.lengths, point.lengths):
        psi = induced_autopair(model.marked, iso, model.marked)
        if outer_equal(psi, model.induced):
            matches.append(iso)
    rep = matches[0] if len(matches) == 1 else None
    return len(matches), rep
