"""Displacement of an automorphism and its exact minimisation on a simplex.

On a fixed simplex the displacement is a maximum of linear-fractional
functions of the edge lengths: candidate a contributes
(c_a . L) / (d_a . L) where d_a counts the edge crossings of a and c_a
those of its image.  Minimising the maximum is a quasiconvex problem,
solved by bisection over exact-rational linear feasibility.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .linear import feasible_point, maximize, simplest_between
from .marked import CVPoint, SimplexRef
from .metric import candidates_of
from .words import AutoPair, CyclicWord


@dataclass(frozen=True)
class RatioSystem:
    """Candidate-indexed crossing vectors defining the displacement."""
    simplex: SimplexRef
    phi: AutoPair
    candidates: tuple[CyclicWord, ...]
    numerators: tuple[tuple[int, ...], ...]    # crossings of phi(a)
    denominators: tuple[tuple[int, ...], ...]  # crossings of a

    def value_at(self, lengths: Sequence[Fraction]
                 ) -> tuple[Optional[Fraction], Optional[CyclicWord]]:
        """Max ratio at the given lengths, or (None, None) when some
        candidate collapses to length zero without its image doing so."""
        best, witness = None, None
        for a, c, d in zip(self.candidates, self.numerators, self.denominators):
            den = sum(q * l for q, l in zip(d, lengths))
            num = sum(q * l for q, l in zip(c, lengths))
            if den == 0:
                if num == 0:
                    continue  # candidate lives in the collapsed part
                return None, None
            ratio = num / den
            if best is None or ratio > best:
                best, witness = ratio, a
        return best, witness


def build_ratio_system(simplex: SimplexRef, phi: AutoPair) -> RatioSystem:
    if phi.rank != simplex.rank:
        raise ValueError("rank mismatch")
    cache_key = ("ratio_system", phi)
    if cache_key not in simplex._cache:
        cands = candidates_of(simplex)
        nums, dens = [], []
        m = simplex.marked
        for a in cands:
            dens.append(m.crossing_vector(a))
            nums.append(m.crossing_vector(phi.apply_class(a)))
        simplex._cache[cache_key] = RatioSystem(
            simplex, phi, cands, tuple(nums), tuple(dens))
    return simplex._cache[cache_key]


def displacement_at(x: CVPoint, phi: AutoPair) -> Fraction:
    """Lambda(x, x.phi), computed as max_a l_x(phi(a)) / l_x(a)."""
    if not x.is_open():
        raise ValueError("displacement needs an open-simplex point")
    value, _ = build_ratio_system(x.simplex(), phi).value_at(x.lengths)
    return value


@dataclass(frozen=True)
class MinimizationResult:
    """Certified bracket for the minimal displacement on a closed simplex.

    ``upper`` is witnessed by the exactly feasible ``argmin``; ``lower`` is
    certified by an infeasible linear program.  ``interior`` records
    whether the minimum is attained at a point with all lengths positive.
    """
    lower: Fraction
    upper: Fraction
    argmin: tuple[Fraction, ...]
    active: tuple[CyclicWord, ...]
    interior: bool

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower


def _simplex_rows(ne: int, extra_vars: int = 0) -> list[tuple]:
    """Rows for {L >= 0, sum L = 1} over variables L_0..L_{ne-2}; the last
    length is eliminated as 1 - sum.  Optional trailing variables get
    zero coefficients."""
    rows = []
    pad = (0,) * extra_vars
    for i in range(ne - 1):
        row = [0] * (ne - 1)
        row[i] = -1
        rows.append(tuple(row) + pad + (0,))  # -L_i <= 0
    rows.append((1,) * (ne - 1) + pad + (1,))  # sum L_i <= 1, i.e. last >= 0
    return rows


def _ratio_rows(system: RatioSystem, t: Fraction, extra_vars: int = 0) -> list[tuple]:
    """c_a . L <= t d_a . L over the reduced coordinates."""
    p, q = t.numerator, t.denominator
    ne = system.simplex.graph.ne
    pad = (0,) * extra_vars
    rows = []
    for c, d in zip(system.numerators, system.denominators):
        full = [q * ci - p * di for ci, di in zip(c, d)]
        reduced = tuple(full[i] - full[-1] for i in range(ne - 1))
        rows.append(reduced + pad + (-full[-1],))
    return rows


def _unreduce(ne: int, point: Sequence[Fraction]) -> tuple[Fraction, ...]:
    rest = Fraction(1) - sum(point[:ne - 1])
    return tuple(point[:ne - 1]) + (rest,)


def _feasible_lengths(system: RatioSystem, t: Fraction
                      ) -> Optional[tuple[Fraction, ...]]:
    ne = system.simplex.graph.ne
    rows = _simplex_rows(ne) + _ratio_rows(system, t)
    point = feasible_point(ne - 1, rows)
    if point is None:
        return None
    return _unreduce(ne, point)


def _max_min_length(system: RatioSystem, t: Fraction
                    ) -> Optional[tuple[Fraction, tuple[Fraction, ...]]]:
    """Maximise the smallest edge length subject to displacement <= t."""
    ne = system.simplex.graph.ne
    rows = _simplex_rows(ne, extra_vars=1) + _ratio_rows(system, t, extra_vars=1)
    for i in range(ne - 1):
        row = [0] * ne
        row[i] = -1
        row[ne - 1] = 1
        rows.append(tuple(row) + (0,))  # delta <= L_i
    rows.append((1,) * (ne - 1) + (1,) + (1,))  # delta <= 1 - sum L_i
    objective = (0,) * (ne - 1) + (1,)
    result = maximize(ne, rows, objective)
    if result is None:
        return None
    value, point = result
    return value, _unreduce(ne, point[:ne - 1])


def min_displacement_on_simplex(simplex: SimplexRef, phi: AutoPair,
                                tol=Fraction(1, 10**9)) -> MinimizationResult:
    """Bracket the minimum of the displacement over the closed simplex.

    Bisection over t: each step decides feasibility of
    {L in the closed simplex : c_a.L <= t d_a.L for all candidates a}
    exactly.  The bracket is multiplicative (upper <= lower * (1 + tol));
    when the minimum is exactly 1 the bracket collapses to a point.
    """
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    system = build_ratio_system(simplex, phi)
    ne = simplex.graph.ne

    def finish(lower: Fraction, upper: Fraction,
               lengths: tuple[Fraction, ...]) -> MinimizationResult:
        value, _ = system.value_at(lengths)
        if value is not None and value < upper:
            upper = max(value, lower)
        interior_point = _max_min_length(system, upper)
        interior = interior_point is not None and interior_point[0] > 0
        if interior:
            lengths = interior_point[1]
            value, _ = system.value_at(lengths)
        active = tuple(
            a for a, c, d in zip(system.candidates, system.numerators,
                                 system.denominators)
            if sum(q * l for q, l in zip(d, lengths)) > 0
            and Fraction(sum(q * l for q, l in zip(c, lengths)),
                         1) == value * sum(q * l for q, l in zip(d, lengths)))
        return MinimizationResult(lower, upper, lengths, active, interior)

    at_one = _feasible_lengths(system, Fraction(1))
    if at_one is not None:
        return finish(Fraction(1), Fraction(1), at_one)

    hi = displacement_at(simplex.centre(), phi)
    hi_point = _feasible_lengths(system, hi)
    if hi_point is None:
        raise AssertionError("centre must be feasible at its own displacement")
    lo = Fraction(1)
    while hi > lo * (1 + tol):
        mid = simplest_between(lo, hi)
        point = _feasible_lengths(system, mid)
        if point is None:
            lo = mid
        else:
            hi, hi_point = mid, point
    return finish(lo, hi, hi_point)


@dataclass(frozen=True)
class FixedPolytope:
    """The displacement <= 1 locus of a simplex, with interior data."""
    simplex: SimplexRef
    phi: AutoPair
    feasible: Optional[tuple[Fraction, ...]]
    interior_nonempty: bool
    max_min_length: Optional[Fraction]
    interior_point: Optional[tuple[Fraction, ...]]


def fixed_point_polytope(simplex: SimplexRef, phi: AutoPair) -> FixedPolytope:
    """Points of the closed simplex fixed by phi (displacement exactly 1).

    Interior nonemptiness is decided by maximising the minimum edge
    length over the locus.
    """
    system = build_ratio_system(simplex, phi)
    point = _feasible_lengths(system, Fraction(1))
    if point is None:
        return FixedPolytope(simplex, phi, None, False, None, None)
    opt = _max_min_length(system, Fraction(1))
    value, argmax = opt
    return FixedPolytope(simplex, phi, point, value > 0, value,
                         argmax if value > 0 else None)


def max_edge_length_at_one(simplex: SimplexRef, phi: AutoPair, edge: int
                           ) -> Optional[Fraction]:
    """Exact maximum of one edge length over the fixed locus, or None if
    the locus is empty.  Used to certify uniqueness of fixed points."""
    system = build_ratio_system(simplex, phi)
    ne = simplex.graph.ne
    rows = _simplex_rows(ne) + _ratio_rows(system, Fraction(1))
    if edge < ne - 1:
        objective = tuple(1 if i == edge else 0 for i in range(ne - 1))
        result = maximize(ne - 1, rows, objective)
        if result is None:
            return None
        return result[0]
    # last edge has length 1 - sum: maximise the negated sum
    objective = tuple(-1 for _ in range(ne - 1))
    result = maximize(ne - 1, rows, objective)
    if result is None:
        return None
    return 1 + result[0]


def segment_profile(x: CVPoint, y: CVPoint, phi: AutoPair,
                    samples: int) -> list[Optional[Fraction]]:
    """Displacement along the Euclidean segment from x to y.

    Both points must carry the same marked graph (one closed simplex).
    Entries are None where a candidate collapses while its image does not
    (the displacement is not defined by the ratio system there).
    """
    if x.marked is not y.marked and not x.marked.same_data(y.marked):
        raise ValueError("segment endpoints must share a simplex")
    if samples < 1:
        raise ValueError("need at least one sample step")
    system = build_ratio_system(x.simplex(), phi)
    out = []
    for i in range(samples + 1):
        t = Fraction(i, samples)
        lengths = tuple((1 - t) * a + t * b for a, b in zip(x.lengths, y.lengths))
        value, _ = system.value_at(lengths)
        out.append(value)
    return out
