"""Marked metric graphs: points and simplices of outer space.

A marking is stored in both directions.  The forward direction sends each
free-group generator to a based closed edge path (the image of a rose
petal).  The backward direction fixes a spanning tree and assigns to every
non-tree edge the free-group word of its tree loop.  Constructors rewrite
both directions and re-verify, which keeps every object checkable without
ever folding.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .graphs import (BlowUp, CollapseResult, EdgePath, Graph, GraphIso,
                     collapse_forest, embedded_circles, is_forest,
                     isomorphisms, reduce_darts, spanning_tree, tree_path)
from .words import (AutoPair, CyclicWord, Word, cyclic_reduce, is_inner,
                    reduce_letters, word_key)


class MarkingError(ValueError):
    pass


class MarkedGraph:
    """A graph of rank N with two-way marking data.

    ``petals[i]`` is the based loop realising generator i+1; ``loop_words``
    maps every non-tree edge to the word of its tree loop under the inverse
    marking.
    """

    __slots__ = ("graph", "basepoint", "petals", "tree", "loop_words")

    def __init__(self, graph: Graph, basepoint: int, petals: Sequence[EdgePath],
                 tree: frozenset[int], loop_words: dict[int, Word],
                 check: bool = True):
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "basepoint", int(basepoint))
        object.__setattr__(self, "petals", tuple(petals))
        object.__setattr__(self, "tree", frozenset(tree))
        object.__setattr__(self, "loop_words", dict(loop_words))
        if check:
            ok, msg = verify_marking(self)
            if not ok:
                raise MarkingError(msg)

    def __setattr__(self, name, value):
        raise AttributeError("MarkedGraph is immutable")

    @property
    def rank(self) -> int:
        return self.graph.rank

    def __repr__(self) -> str:
        return (f"MarkedGraph(rank={self.rank}, vertices={self.graph.nv}, "
                f"edges={self.graph.ne})")

    def same_data(self, other: "MarkedGraph") -> bool:
        """Identical marking data (not equivalence of marked graphs)."""
        return (self.graph == other.graph
                and self.basepoint == other.basepoint
                and tuple(p.darts for p in self.petals)
                == tuple(p.darts for p in other.petals)
                and self.tree == other.tree
                and self.loop_words == other.loop_words)

    # -- reading (the inverse marking direction) --

    def dart_letters(self, d: int) -> tuple[int, ...]:
        e = abs(d) - 1
        if e in self.tree:
            return ()
        w = self.loop_words[e]
        return w.letters if d > 0 else w.inverse().letters

    def read_letters(self, darts: Iterable[int]) -> tuple[int, ...]:
        out: list[int] = []
        for d in darts:
            for l in self.dart_letters(d):
                if out and out[-1] == -l:
                    out.pop()
                else:
                    out.append(l)
        return tuple(out)

    def read_word(self, darts: Iterable[int]) -> Word:
        """Word of a closed loop based at the basepoint."""
        return Word(self.read_letters(darts))

    def read_loop(self, path: EdgePath) -> CyclicWord:
        """Conjugacy class of any closed path under the marking."""
        if not path.closed:
            raise ValueError("read_loop needs a closed path")
        core, _ = cyclic_reduce(Word(self.read_letters(path.darts)))
        return core

    # -- realising (the forward marking direction) --

    def realize_word(self, w: Word) -> EdgePath:
        """Based loop at the basepoint realising w, reduced rel basepoint."""
        darts: list[int] = []
        for l in w.letters:
            petal = self.petals[abs(l) - 1].darts
            if l < 0:
                petal = tuple(-d for d in reversed(petal))
            for d in petal:
                if darts and darts[-1] == -d:
                    darts.pop()
                else:
                    darts.append(d)
        return EdgePath(self.graph, tuple(darts), closed=True)

    def realize_class(self, c: CyclicWord) -> EdgePath:
        """Cyclically reduced closed path realising the class c."""
        path = self.realize_word(Word(c.letters))
        darts = path.darts
        i, j = 0, len(darts)
        while i < j - 1 and darts[i] == -darts[j - 1]:
            i += 1
            j -= 1
        return EdgePath(self.graph, darts[i:j], closed=True)

    def crossing_vector(self, c: CyclicWord) -> tuple[int, ...]:
        """How often the realisation of c crosses each edge."""
        counts = [0] * self.graph.ne
        for d in self.realize_class(c).darts:
            counts[abs(d) - 1] += 1
        return tuple(counts)

    # -- constructors --

    def act(self, phi: AutoPair, check: bool = True) -> "MarkedGraph":
        """Precompose the marking with phi (the right action on points).

        ``check=False`` skips re-verification; reading back the petals costs
        petal length times word length, which matters when iterating the
        action (marking data grows geometrically along an orbit).
        """
        if phi.rank != self.rank:
            raise ValueError("rank mismatch")
        petals = tuple(self.realize_word(w) for w in phi.fwd)
        words = {e: phi.apply_inv(w) for e, w in self.loop_words.items()}
        return MarkedGraph(self.graph, self.basepoint, petals, self.tree, words,
                           check=check)

    def retree(self, new_tree: frozenset[int]) -> "MarkedGraph":
        """Re-express the backward marking over a different spanning tree."""
        new_tree = frozenset(new_tree)
        g = self.graph
        words = {}
        for e in range(g.ne):
            if e in new_tree:
                continue
            u, v = g.edges[e]
            loop = (tree_path(g, new_tree, self.basepoint, u) + (e + 1,)
                    + tree_path(g, new_tree, v, self.basepoint))
            words[e] = self.read_word(loop)
        return MarkedGraph(g, self.basepoint, self.petals, new_tree, words)

    def collapse(self, forest: Iterable[int]) -> tuple["MarkedGraph", CollapseResult]:
        """Collapse a forest, rewriting the marking.

        The spanning tree is first changed to one containing the forest, so
        that non-tree edges and their words carry over unchanged.
        """
        forest = frozenset(forest)
        if not forest:
            return self, collapse_forest(self.graph, ())
        m = self.retree(spanning_tree(self.graph, contain=forest))
        cr = collapse_forest(self.graph, forest)
        tree = frozenset(cr.edge_map[e] for e in m.tree - forest)
        petals = tuple(
            EdgePath(cr.graph, reduce_darts(cr.project_darts(p.darts)), closed=True)
            for p in m.petals)
        words = {cr.edge_map[e]: w for e, w in m.loop_words.items()}
        base = cr.vertex_map[self.basepoint]
        return MarkedGraph(cr.graph, base, petals, tree, words), cr

    def blow_up(self, bu: BlowUp) -> "MarkedGraph":
        """Expand a vertex along a half-edge bipartition.

        Side A keeps the split vertex id (and the basepoint, when split);
        the tree grows by the new edge, so backward words are untouched and
        petals only pick up crossings of the new edge.
        """
        g, g2 = self.graph, bu.graph
        v, b_side = bu.vertex, g2.nv - 1
        eps = bu.new_edge + 1

        def lift_vertex(old_vertex: int, dart_at_v: Optional[int]) -> int:
            if old_vertex != v:
                return old_vertex
            return v if dart_at_v in bu.side_a else b_side

        def lift(darts: Sequence[int]) -> tuple[int, ...]:
            out: list[int] = []
            cur = self.basepoint  # side A keeps the old id
            for d in darts:
                need = lift_vertex(g.origin(d), d)
                if cur != need:
                    out.append(eps if need == b_side else -eps)
                out.append(d)
                cur = lift_vertex(g.terminus(d), -d)
            if cur != self.basepoint:
                out.append(-eps if cur == b_side else eps)
            return reduce_darts(out)

        petals = tuple(EdgePath(g2, lift(p.darts), closed=True) for p in self.petals)
        tree = self.tree | {bu.new_edge}
        return MarkedGraph(g2, self.basepoint, petals, tree, dict(self.loop_words))


def verify_marking(m: MarkedGraph) -> tuple[bool, str]:
    """Check the two-way marking data.

    Reading each forward petal through the backward words must give back
    the matching generator; together with the rank count this certifies a
    homotopy equivalence.
    """
    g = m.graph
    rank = g.rank
    if len(m.petals) != rank:
        return False, f"expected {rank} petals, got {len(m.petals)}"
    if len(m.tree) != g.nv - 1 or not is_forest(g, m.tree):
        return False, "tree is not a spanning tree"
    nontree = {e for e in range(g.ne) if e not in m.tree}
    if set(m.loop_words) != nontree:
        return False, "backward words do not match the non-tree edges"
    for e, w in m.loop_words.items():
        if any(abs(l) > rank for l in w.letters):
            return False, f"backward word of edge {e} out of alphabet"
    for i, p in enumerate(m.petals):
        if p.graph != g or not p.closed:
            return False, f"petal {i + 1} is not a closed path here"
        if p.darts and p.graph.origin(p.darts[0]) != m.basepoint:
            return False, f"petal {i + 1} is not based at the basepoint"
        got = m.read_word(p.darts)
        if got.letters != (i + 1,):
            return False, (f"petal {i + 1} reads as {got!r}, "
                           "marking is not a homotopy inverse pair")
    return True, "ok"


def marked_from_tree(graph: Graph, basepoint: int = 0,
                     tree: Optional[frozenset[int]] = None) -> MarkedGraph:
    """The canonical marking: generator k is the loop of the k-th non-tree
    edge through the spanning tree.  All backward words are single letters."""
    if tree is None:
        tree = spanning_tree(graph)
    nontree = sorted(e for e in range(graph.ne) if e not in tree)
    petals = []
    words = {}
    for k, e in enumerate(nontree):
        u, v = graph.edges[e]
        darts = (tree_path(graph, tree, basepoint, u) + (e + 1,)
                 + tree_path(graph, tree, v, basepoint))
        petals.append(EdgePath(graph, reduce_darts(darts), closed=True))
        words[e] = Word((k + 1,))
    return MarkedGraph(graph, basepoint, petals, frozenset(tree), words)


def induced_autopair(source: MarkedGraph, iso: GraphIso,
                     target: MarkedGraph) -> AutoPair:
    """The outer automorphism comparing two markings through a graph
    isomorphism, as an exact AutoPair.

    Forward images read the iso-image of each source petal in the target,
    conjugated back to the target basepoint along a tree path; the inverse
    uses the inverse isomorphism with the matching patch path, which makes
    the round trips exact rather than merely inner.
    """
    if iso.source != source.graph or iso.target != target.graph:
        raise ValueError("isomorphism does not connect these marked graphs")
    rho = tree_path(target.graph, target.tree, target.basepoint,
                    iso.vertex_map[source.basepoint])
    rho_back = tuple(-d for d in reversed(rho))
    fwd = tuple(
        target.read_word(rho + tuple(iso.apply_dart(d) for d in p.darts) + rho_back)
        for p in source.petals)
    iso2 = iso.inverse()
    rho2 = tuple(-iso2.apply_dart(d) for d in reversed(rho))
    rho2_back = tuple(-d for d in reversed(rho2))
    inv = tuple(
        source.read_word(rho2 + tuple(iso2.apply_dart(d) for d in p.darts) + rho2_back)
        for p in target.petals)
    return AutoPair(fwd, inv)


# --- points and simplices -----------------------------------------------------


class CVPoint:
    """A marked graph with exact rational edge lengths of total volume 1.

    Zero lengths are allowed on a forest (a point of a closed simplex);
    open-simplex points have all lengths positive.
    """

    __slots__ = ("marked", "lengths", "_simplex")

    def __init__(self, marked: MarkedGraph, lengths: Sequence):
        lengths = tuple(Fraction(x) for x in lengths)
        if len(lengths) != marked.graph.ne:
            raise ValueError("one length per edge required")
        if any(l < 0 for l in lengths):
            raise ValueError("negative edge length")
        if sum(lengths) != 1:
            raise ValueError("edge lengths must sum to 1")
        zero = [e for e, l in enumerate(lengths) if l == 0]
        if zero and not is_forest(marked.graph, zero):
            raise ValueError("zero-length edges must form a forest")
        object.__setattr__(self, "marked", marked)
        object.__setattr__(self, "lengths", lengths)
        object.__setattr__(self, "_simplex", None)

    def __setattr__(self, name, value):
        raise AttributeError("CVPoint is immutable")

    def __repr__(self) -> str:
        return f"CVPoint({self.marked!r}, lengths={[str(l) for l in self.lengths]})"

    @property
    def graph(self) -> Graph:
        return self.marked.graph

    @property
    def rank(self) -> int:
        return self.marked.rank

    def is_open(self) -> bool:
        return all(l > 0 for l in self.lengths)

    def simplex(self) -> "SimplexRef":
        if self._simplex is None:
            object.__setattr__(self, "_simplex", SimplexRef(self.marked))
        return self._simplex

    def translation_length(self, c: CyclicWord) -> Fraction:
        """Length of the cyclically tightened realisation of the class c."""
        if c.is_identity():
            raise ValueError("translation length needs a nontrivial class")
        total = Fraction(0)
        for d in self.marked.realize_class(c).darts:
            total += self.lengths[abs(d) - 1]
        return total

    def path_length(self, path: EdgePath) -> Fraction:
        return sum((self.lengths[abs(d) - 1] for d in path.darts), Fraction(0))

    def act(self, phi: AutoPair) -> "CVPoint":
        return CVPoint(self.marked.act(phi), self.lengths)

    def systole(self) -> Fraction:
        """Minimal translation length; realised by an embedded circle."""
        if not self.is_open():
            raise ValueError("systole needs an open-simplex point")
        return min(
            sum((self.lengths[abs(d) - 1] for d in circle), Fraction(0))
            for circle in embedded_circles(self.graph))

    def is_thick(self, eps) -> bool:
        return self.systole() >= Fraction(eps)


class SimplexRef:
    """An open simplex of outer space: a marked graph without lengths."""

    __slots__ = ("marked", "_cache")

    def __init__(self, marked: MarkedGraph):
        self.marked = marked
        self._cache = {}

    @property
    def graph(self) -> Graph:
        return self.marked.graph

    @property
    def rank(self) -> int:
        return self.marked.rank

    @property
    def dimension(self) -> int:
        return self.graph.ne - 1

    def __repr__(self) -> str:
        return f"SimplexRef(rank={self.rank}, edges={self.graph.ne})"

    def centre(self) -> CVPoint:
        ne = self.graph.ne
        return CVPoint(self.marked, (Fraction(1, ne),) * ne)

    def act(self, phi: AutoPair) -> "SimplexRef":
        return SimplexRef(self.marked.act(phi))

    def key(self) -> tuple:
        if "key" not in self._cache:
            self._cache["key"] = canonical_key(self.marked)
        return self._cache["key"]


def centre(simplex: SimplexRef) -> CVPoint:
    return simplex.centre()


def marked_graph_equal(x: CVPoint, y: CVPoint) -> bool:
    """Whether two points coincide in outer space.

    True iff some length-preserving graph isomorphism carries one marking
    to the other up to free homotopy, i.e. the comparison automorphism it
    induces is inner.
    """
    if x.rank != y.rank:
        return False
    if sorted(x.lengths) != sorted(y.lengths):
        return False
    for iso in isomorphisms(x.graph, y.graph, x.lengths, y.lengths):
        psi = induced_autopair(x.marked, iso, y.marked)
        if is_inner(psi) is not None:
            return True
    return False


def simplex_equal(a: SimplexRef, b: SimplexRef) -> bool:
    return marked_graph_equal(a.centre(), b.centre())


# --- canonical keys -----------------------------------------------------------


@lru_cache(maxsize=None)
def _canonical_graph(graph: Graph) -> Graph:
    """Least relabelling of the underlying graph (orientation-normalised)."""
    best = None
    for perm in itertools.permutations(range(graph.nv)):
        edges = sorted((min(perm[u], perm[v]), max(perm[u], perm[v]))
                       for u, v in graph.edges)
        if best is None or edges < best:
            best = edges
    return Graph(graph.nv, best)


def _conjugation_descend(words: Sequence[Sequence[int]], rank: int
                         ) -> tuple[tuple[tuple[int, ...], ...], int]:
    """Greedy descent to a tuple of minimal total length under common
    conjugation.  Total length is a convex function of the conjugator on
    the Cayley tree, so a local minimum is global.

    Conjugating every word by a single letter touches only word ends, so
    the tuple is held in deques and each step is O(rank).
    """
    from collections import deque
    ws = [deque(w) for w in words]
    letters = [l for i in range(1, rank + 1) for l in (i, -i)]

    def delta(x: int) -> int:
        d = 0
        for w in ws:
            if not w:
                continue
            d += 2 - 2 * (w[0] == -x) - 2 * (w[-1] == x)
        return d

    def apply(x: int) -> None:
        for w in ws:
            if not w:
                continue
            if w[0] == -x:
                w.popleft()
            else:
                w.appendleft(x)
            if w and w[-1] == x:
                w.pop()
            else:
                w.append(-x)

    improved = True
    while improved:
        improved = False
        for x in letters:
            if delta(x) < 0:
                apply(x)
                improved = True
                break
    state = tuple(tuple(w) for w in ws)
    return state, sum(len(w) for w in state)


def _conj_word(w: tuple[int, ...], x: int) -> tuple[int, ...]:
    """x w x^-1 for reduced w; cancellation is one letter deep per end."""
    if w and w[0] == -x:
        w = w[1:]
    else:
        w = (x,) + w
    if w and w[-1] == x:
        w = w[:-1]
    else:
        w = w + (-x,)
    return w


def conjugation_canonical(words: Sequence[Sequence[int]], rank: int) -> tuple:
    """Canonical representative of a word tuple up to common conjugation.

    Descends to minimal total length, then sweeps the flat minimum
    (a subtree of conjugators) breadth-first and keeps the least tuple.
    """
    state, cur = _conjugation_descend(words, rank)
    letters = [l for i in range(1, rank + 1) for l in (i, -i)]

    def flat_moves(ws):
        for x in letters:
            d = 0
            for w in ws:
                if w:
                    d += 2 - 2 * (w[0] == -x) - 2 * (w[-1] == x)
            if d == 0:
                yield tuple(_conj_word(w, x) for w in ws)

    seen = {state}
    frontier = [state]
    while frontier:
        nxt_frontier = []
        for s in frontier:
            for n in flat_moves(s):
                if n not in seen:
                    seen.add(n)
                    nxt_frontier.append(n)
        frontier = nxt_frontier
        if len(seen) > 20000:
            raise RuntimeError("conjugation plateau unexpectedly large")

    def key(ws):
        return tuple(word_key(w) for w in ws)

    return min(seen, key=key)


def canonical_key(marked: MarkedGraph, max_total: Optional[int] = None) -> Optional[tuple]:
    """A hashable complete invariant of the marked graph up to equivalence.

    Minimises, over all isomorphisms onto the canonical relabelling of the
    graph, the petal words read through a fixed spanning tree, normalised
    up to common conjugation.  Two marked graphs get the same key exactly
    when some isomorphism carries one marking to the other up to homotopy.

    With ``max_total`` set, isomorphisms whose conjugation-minimal tuples
    are longer than the bound are skipped and None is returned when all
    are: sound both ways, since a key of total length within the bound is
    always witnessed by a surviving isomorphism, and tuple equality through
    any isomorphism already certifies equivalence.
    """
    g0 = _canonical_graph(marked.graph)
    tree0 = spanning_tree(g0)
    nontree = sorted(e for e in range(g0.ne) if e not in tree0)
    letter_of = {}
    for k, e in enumerate(nontree):
        letter_of[e + 1] = k + 1
        letter_of[-(e + 1)] = -(k + 1)
    best = None
    found_iso = False
    for iso in isomorphisms(marked.graph, g0):
        found_iso = True
        ws = []
        for p in marked.petals:
            letters = []
            for d in p.darts:
                gd = iso.apply_dart(d)
                if abs(gd) - 1 in tree0:
                    continue
                if letters and letters[-1] == -letter_of[gd]:
                    letters.pop()
                else:
                    letters.append(letter_of[gd])
            ws.append(tuple(letters))
        if max_total is not None:
            _, total = _conjugation_descend(ws, len(nontree))
            if total > max_total:
                continue
        tup = conjugation_canonical(ws, rank=len(nontree))
        cand = tuple(tuple(w) for w in tup)
        if best is None or cand < best:
            best = cand
    if not found_iso:
        raise AssertionError("graph has no isomorphism onto its own relabelling")
    if best is None:
        return None
    return (g0.nv, g0.edges, best)
