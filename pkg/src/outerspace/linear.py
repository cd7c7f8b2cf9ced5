"""Exact linear feasibility and projection by Fourier-Motzkin elimination.

All rows are integer vectors (a_1, ..., a_n, b) encoding a.x <= b.  The
systems that arise here have at most a handful of variables, so repeated
elimination with duplicate pruning is entirely adequate and keeps every
answer certified: a feasible call returns an exact rational point, an
optimisation returns the exact optimum.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

Row = tuple  # (a_1, ..., a_n, b) with integer entries, meaning a.x <= b


def _normalize(row: Row) -> Row:
    g = 0
    for x in row:
        g = gcd(g, abs(x))
    if g > 1:
        row = tuple(x // g for x in row)
    return row


def _prune(rows: list[Row]) -> Optional[list[Row]]:
    """Drop duplicates and dominated rows; None when plainly infeasible."""
    best: dict[tuple, int] = {}
    for row in rows:
        coeffs, rhs = row[:-1], row[-1]
        if all(c == 0 for c in coeffs):
            if rhs < 0:
                return None
            continue
        if coeffs not in best or rhs < best[coeffs]:
            best[coeffs] = rhs
    return [c + (b,) for c, b in best.items()]


def _eliminate(rows: list[Row], k: int) -> Optional[list[Row]]:
    """Project out variable k (0-indexed among remaining coordinates)."""
    pos, neg, zero = [], [], []
    for row in rows:
        c = row[k]
        if c > 0:
            pos.append(row)
        elif c < 0:
            neg.append(row)
        else:
            zero.append(row[:k] + row[k + 1:])
    out = zero
    for rp in pos:
        for rn in neg:
            a, b = rp[k], -rn[k]
            combined = tuple(b * x + a * y for x, y in
                             zip(rp[:k] + rp[k + 1:], rn[:k] + rn[k + 1:]))
            out.append(_normalize(combined))
    return _prune(out)


def _stages(n: int, rows: Sequence[Row]) -> Optional[list[list[Row]]]:
    """Eliminate variables n-1, ..., 0; stage i holds the rows over x_0..x_i."""
    cur = _prune([_normalize(tuple(r)) for r in rows])
    if cur is None:
        return None
    stages = [cur]
    for k in range(n - 1, 0, -1):
        cur = _eliminate(cur, k)
        if cur is None:
            return None
        stages.append(cur)
    # eliminate x_0 as a pure feasibility check
    if n >= 1:
        final = _eliminate(cur, 0)
        if final is None:
            return None
    return stages


def feasible_point(n: int, rows: Sequence[Row]) -> Optional[list[Fraction]]:
    """An exact rational solution of a.x <= b for all rows, or None."""
    if n == 0:
        return [] if _prune([_normalize(tuple(r)) for r in rows]) is not None else None
    stages = _stages(n, rows)
    if stages is None:
        return None
    x: list[Fraction] = [Fraction(0)] * n
    for k in range(n):
        stage = stages[n - 1 - k]  # rows over x_0 .. x_k
        lo, hi = None, None
        for row in stage:
            c = row[k]
            if c == 0:
                continue
            rest = row[-1] - sum(row[i] * x[i] for i in range(k))
            bound = Fraction(rest, c)
            if c > 0:
                hi = bound if hi is None else min(hi, bound)
            else:
                lo = bound if lo is None else max(lo, bound)
        if lo is None and hi is None:
            x[k] = Fraction(0)
        elif lo is None:
            x[k] = hi
        elif hi is None:
            x[k] = lo
        else:
            if lo > hi:
                raise AssertionError("back substitution left an empty interval")
            x[k] = (lo + hi) / 2
    return x


def is_feasible(n: int, rows: Sequence[Row]) -> bool:
    return _stages(n, rows) is not None if n else _prune(
        [_normalize(tuple(r)) for r in rows]) is not None


def maximize(n: int, rows: Sequence[Row], objective: Sequence[int]
             ) -> Optional[tuple[Fraction, list[Fraction]]]:
    """Exact maximum of objective . x over the rows, with an attaining point.

    Returns None when infeasible; raises when the objective is unbounded
    (the polytopes here are all bounded).
    """
    objective = tuple(objective)
    # introduce t = objective . x as variable n and project everything else
    lifted: list[Row] = []
    for row in rows:
        lifted.append(tuple(row[:-1]) + (0, row[-1]))
    lifted.append(objective + (-1, 0))          # c.x - t <= 0
    lifted.append(tuple(-c for c in objective) + (1, 0))  # t - c.x <= 0
    cur = _prune([_normalize(tuple(r)) for r in lifted])
    if cur is None:
        return None
    for k in range(n):
        cur = _eliminate(cur, 0)
        if cur is None:
            return None
    hi = None
    for row in cur:  # rows over t alone
        c, b = row[0], row[-1]
        if c > 0:
            bound = Fraction(b, c)
            hi = bound if hi is None else min(hi, bound)
    if hi is None:
        raise ValueError("objective is unbounded above")
    # attaining point: add c.x >= hi and extract
    tight: list[Row] = [tuple(r) for r in rows]
    tight.append(tuple(-c * hi.denominator for c in objective) + (-hi.numerator,))
    point = feasible_point(n, tight)
    if point is None:
        raise AssertionError("optimum not attained; polytope should be closed")
    return hi, point


def simplest_between(a: Fraction, b: Fraction) -> Fraction:
    """The rational with smallest denominator strictly inside (a, b).

    Classic continued-fraction walk; used to keep bisection midpoints small.
    """
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError("need a < b")
    ia = a.numerator // a.denominator  # floor(a), so ia <= a < ia + 1
    if ia + 1 < b:                     # the integer ia + 1 lies strictly inside
        return Fraction(ia + 1)
    frac_a = a - ia                    # in [0, 1)
    frac_b = b - ia                    # in (frac_a, 1]
    if frac_a == 0:
        # interval (0, frac_b): the best is 1/k with the least workable k
        inv = Fraction(1) / frac_b
        k = inv.numerator // inv.denominator + 1
        return ia + Fraction(1, k)
    inner = simplest_between(Fraction(1) / frac_b, Fraction(1) / frac_a)
    return ia + Fraction(1) / inner
